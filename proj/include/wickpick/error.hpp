#ifndef WICKPICK_ERROR_HPP
#define WICKPICK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wickpick
{

enum class ErrorCode
{
    context_mismatch,
    shape_mismatch,
    invalid_argument,
    not_invertible,
    nonzero_constant_term,
    not_hermitian,
    not_positive_definite,
    divergent,
    domain_violation,
    invalid_problem,
    parse_error,
};

inline const char* to_string(ErrorCode code) noexcept
{
    switch (code)
    {
        case ErrorCode::context_mismatch:
            return "context mismatch";
        case ErrorCode::shape_mismatch:
            return "shape mismatch";
        case ErrorCode::invalid_argument:
            return "invalid argument";
        case ErrorCode::not_invertible:
            return "not invertible";
        case ErrorCode::nonzero_constant_term:
            return "nonzero constant term";
        case ErrorCode::not_hermitian:
            return "not hermitian";
        case ErrorCode::not_positive_definite:
            return "not positive definite";
        case ErrorCode::divergent:
            return "divergent";
        case ErrorCode::domain_violation:
            return "domain violation";
        case ErrorCode::invalid_problem:
            return "invalid problem";
        case ErrorCode::parse_error:
            return "parse error";
    }
    return "unknown";
}

///
/// Exception type thrown by every operation in the library. The code lets
/// callers (the CLI in particular) map failures onto exit statuses without
/// parsing messages.
///
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code)
    {
    }

    ErrorCode code() const noexcept
    {
        return code_;
    }

private:
    ErrorCode code_;
};

} // namespace wickpick

#endif /* WICKPICK_ERROR_HPP */
