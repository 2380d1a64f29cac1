#ifndef POLARDQC_ERROR_HPP
#define POLARDQC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polardqc {

enum class ErrorCode {
    Parse,         // malformed config text
    Validate,      // parameter violates a model invariant
    Domain,        // formula undefined for these inputs (e.g. evanescent angle)
    WeakCoupling,  // effective-coupling radicand negative, no real splitting
    NotFound,      // unknown preset / missing peak selector
    Io,            // file system failure
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace polardqc

#endif
