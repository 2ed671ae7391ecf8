#pragma once

#include <stdexcept>
#include <string>

namespace csg {

// Error with a short machine-parsable code; the CLI prints "error[<code>] <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* io = "io";
inline constexpr const char* parse = "parse";
inline constexpr const char* invariant = "invariant";
inline constexpr const char* dimension = "dimension";
inline constexpr const char* alpha_bound = "alpha-bound";
inline constexpr const char* config = "config";
inline constexpr const char* numeric = "numeric";
} // namespace errc

} // namespace csg
