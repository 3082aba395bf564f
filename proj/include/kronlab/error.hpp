#ifndef KRONLAB_ERROR_HPP
#define KRONLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kron {

// Error categories; kept in sync with the kron_status codes of the C API.
enum class ErrorCode {
    InvalidArgument = 1,
    Unsupported     = 2,
    PrefixTooShort  = 3,
    CapExceeded     = 4,
    Divergent       = 5,
    NoBracket       = 6,
    Io              = 7,
    Internal        = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace kron

#endif
