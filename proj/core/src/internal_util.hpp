#ifndef TODA_INTERNAL_UTIL_HPP
#define TODA_INTERNAL_UTIL_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "toda/errors.hpp"
#include "toda/tolerances.hpp"

namespace toda::detail {

inline double guarded_exp(double x, const ToleranceConfig& tol) {
    if (x > tol.exp_guard) throw Overflow("exponent " + std::to_string(x) + " exceeds guard");
    return std::exp(x);
}

inline std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// Streaming log-sum-exp with optional signs; summation order is the
// caller's visit order, so results are deterministic.
class LogSumAccumulator {
public:
    void add(double log_magnitude, double sign = 1.0) {
        if (log_magnitude > max_log_) {
            sum_ = sum_ * std::exp(max_log_ - log_magnitude) + sign;
            max_log_ = log_magnitude;
        } else {
            sum_ += sign * std::exp(log_magnitude - max_log_);
        }
    }

    bool empty() const { return max_log_ == -std::numeric_limits<double>::infinity(); }

    // Value as a plain double; throws FeatureOverflow past the exponent guard.
    double value(const ToleranceConfig& tol) const {
        if (empty()) return 0.0;
        if (sum_ == 0.0) return 0.0;
        const double log_abs = max_log_ + std::log(std::abs(sum_));
        if (log_abs > tol.exp_guard)
            throw FeatureOverflow("log-space result exponent " + std::to_string(log_abs) +
                                  " exceeds guard");
        return (sum_ < 0.0 ? -1.0 : 1.0) * std::exp(log_abs);
    }

private:
    double max_log_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

} // namespace toda::detail

#endif
