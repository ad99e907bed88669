#ifndef PBPROOF_CHECK_HPP
#define PBPROOF_CHECK_HPP

#include <cstddef>
#include <string>

namespace pbproof {

/// Outcome of running a proof checker. On rejection, `step` is the 1-based
/// index of the first offending step (0 when the failure is not tied to a
/// particular step) and `reason` names the violated condition.
struct CheckResult {
    bool ok = true;
    size_t step = 0;
    std::string reason;

    static CheckResult accept() { return CheckResult{}; }
    static CheckResult reject(size_t step, std::string reason)
    {
        return CheckResult{false, step, std::move(reason)};
    }

    explicit operator bool() const { return ok; }
};

} // namespace pbproof

#endif
