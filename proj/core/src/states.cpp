#include "toda/states.hpp"

#include <cmath>
#include <string>

#include "internal_util.hpp"
#include "toda/errors.hpp"

namespace toda {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw InvalidState(std::string(what) + ": empty vector");
    for (double x : v)
        if (!std::isfinite(x)) throw InvalidState(std::string(what) + ": non-finite entry");
}

void require_decreasing(const std::vector<double>& phat, double gap_tol) {
    for (std::size_t i = 0; i + 1 < phat.size(); ++i) {
        const double gap = phat[i] - phat[i + 1];
        if (gap <= 0.0) throw InvalidState("phat is not strictly decreasing");
        if (gap < gap_tol)
            throw DegenerateSpectrum("phat gap " + detail::fmt_sci(gap) + " below tolerance");
    }
}

} // namespace

void validate(const TodaState& s) {
    require_finite(s.q, "q");
    require_finite(s.p, "p");
    if (s.q.size() != s.p.size()) throw InvalidState("q and p differ in length");
}

void validate(const ActionAngleState& s, const ToleranceConfig& tol) {
    require_finite(s.phat, "phat");
    require_finite(s.qhat, "qhat");
    if (s.phat.size() != s.qhat.size()) throw InvalidState("phat and qhat differ in length");
    require_decreasing(s.phat, tol.degeneracy_gap);
}

void validate(const MoserState& s, const ToleranceConfig& tol) {
    require_finite(s.phat, "phat");
    require_finite(s.w, "w");
    if (s.phat.size() != s.w.size()) throw InvalidState("phat and w differ in length");
    require_decreasing(s.phat, tol.degeneracy_gap);
    for (double wi : s.w)
        if (!(wi > 0.0)) throw InvalidState("w has a non-positive component");
}

} // namespace toda
