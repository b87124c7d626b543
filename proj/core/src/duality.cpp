#include "toda/duality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "internal_util.hpp"
#include "toda/errors.hpp"
#include "toda/gauge.hpp"
#include "toda/lattice.hpp"

namespace toda {

using detail::guarded_exp;

namespace {

// All sigma_k and the ratios sigma_dot_k / sigma_k from one subset
// enumeration, accumulated under a per-k max-log shift so the values
// stay representable whenever their logarithms are. Mask order fixes
// the summation order.
struct SigmaTable {
    std::vector<double> log_sigma; // index k, log_sigma[0] = 0
    std::vector<double> dot_ratio; // sigma_dot_k / sigma_k, dot_ratio[0] = 0
};

SigmaTable sigma_table(const ActionAngleState& a, const ToleranceConfig& tol) {
    validate(a, tol);
    const std::size_t n = a.size();
    if (n > 20) throw DimensionTooLarge("subset enumeration capped at n = 20");

    // log of each subset term splits into per-member contributions:
    //   qhat_l minus log-distances to the complement.
    std::vector<double> log_dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) log_dist[i * n + j] = std::log(std::abs(a.phat[i] - a.phat[j]));

    std::vector<double> max_log(n + 1, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> members;
    members.reserve(n);

    auto term_log = [&](std::uint32_t mask) {
        members.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(i);
        double lt = 0.0;
        for (std::size_t i : members) {
            lt += a.qhat[i];
            for (std::size_t j = 0; j < n; ++j)
                if (!(mask & (1u << j))) lt -= log_dist[i * n + j];
        }
        return lt;
    };

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const double lt = term_log(mask);
        std::size_t k = members.size();
        max_log[k] = std::max(max_log[k], lt);
    }

    std::vector<double> den(n + 1, 0.0), num(n + 1, 0.0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const double lt = term_log(mask);
        const std::size_t k = members.size();
        double psum = 0.0;
        for (std::size_t i : members) psum += a.phat[i];
        const double scaled = std::exp(lt - max_log[k]);
        den[k] += scaled;
        num[k] -= psum * scaled;
    }

    SigmaTable table;
    table.log_sigma.assign(n + 1, 0.0);
    table.dot_ratio.assign(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        table.log_sigma[k] = max_log[k] + std::log(den[k]);
        table.dot_ratio[k] = num[k] / den[k];
    }
    return table;
}

double exp_checked(double log_value, const ToleranceConfig& tol) {
    if (std::abs(log_value) > tol.exp_guard)
        throw FeatureOverflow("subset-sum exponent " + std::to_string(log_value) +
                              " exceeds guard");
    return std::exp(log_value);
}

} // namespace

MoserState w_from_angles(const ActionAngleState& a, const ToleranceConfig& tol) {
    validate(a, tol);
    const std::size_t n = a.size();
    MoserState m;
    m.phat = a.phat;
    m.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lw = 0.5 * a.qhat[i];
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) lw -= 0.5 * std::log(std::abs(a.phat[i] - a.phat[j]));
        m.w[i] = exp_checked(lw, tol);
    }
    return m;
}

ActionAngleState angles_from_w(const MoserState& m, const ToleranceConfig& tol) {
    validate(m, tol);
    const std::size_t n = m.size();
    ActionAngleState a;
    a.phat = m.phat;
    a.qhat.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double qh = 2.0 * std::log(m.w[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) qh += std::log(std::abs(m.phat[i] - m.phat[j]));
        a.qhat[i] = qh;
    }
    return a;
}

double sigma(const ActionAngleState& a, int k, const ToleranceConfig& tol) {
    validate(a, tol);
    if (k < 0 || static_cast<std::size_t>(k) > a.size())
        throw InvalidState("sigma index out of range");
    if (k == 0) return 1.0;
    const SigmaTable table = sigma_table(a, tol);
    return exp_checked(table.log_sigma[k], tol);
}

double sigma_dot(const ActionAngleState& a, int k, const ToleranceConfig& tol) {
    validate(a, tol);
    if (k < 0 || static_cast<std::size_t>(k) > a.size())
        throw InvalidState("sigma index out of range");
    if (k == 0) return 0.0;
    const SigmaTable table = sigma_table(a, tol);
    if (table.dot_ratio[k] == 0.0) return 0.0;
    const double log_abs = table.log_sigma[k] + std::log(std::abs(table.dot_ratio[k]));
    if (log_abs > tol.exp_guard)
        throw FeatureOverflow("sigma_dot exponent exceeds guard");
    return table.dot_ratio[k] * std::exp(table.log_sigma[k]);
}

TodaState aa_to_toda_direct(const ActionAngleState& a, const ToleranceConfig& tol) {
    const SigmaTable table = sigma_table(a, tol);
    const std::size_t n = a.size();
    TodaState s;
    s.q.resize(n);
    s.p.resize(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        s.q[jj] = table.log_sigma[n - jj] - table.log_sigma[n - 1 - jj];
        s.p[jj] = table.dot_ratio[n - jj] - table.dot_ratio[n - 1 - jj];
    }
    return s;
}

TodaState aa_to_toda_gauge(const ActionAngleState& a, const ToleranceConfig& tol) {
    return moser_to_toda(w_from_angles(a, tol), tol);
}

TodaState aa_to_toda(const ActionAngleState& a, const ToleranceConfig& tol) {
    TodaState direct = aa_to_toda_direct(a, tol);
    if (tol.check_dual_route) {
        const TodaState gauged = aa_to_toda_gauge(a, tol);
        for (std::size_t i = 0; i < direct.size(); ++i) {
            const double dq = std::abs(direct.q[i] - gauged.q[i]);
            const double dp = std::abs(direct.p[i] - gauged.p[i]);
            if (dq > tol.route_match_tol || dp > tol.route_match_tol)
                throw RouteMismatch("direct and factorization routes disagree by " +
                                    detail::fmt_sci(std::max(dq, dp)));
        }
    }
    return direct;
}

ActionAngleState toda_to_aa(const TodaState& s, const ToleranceConfig& tol) {
    return angles_from_w(toda_to_moser(s, tol), tol);
}

double dual_hamiltonian(const ActionAngleState& a, const ToleranceConfig& tol) {
    return sigma(a, 1, tol);
}

DualVelocity dual_vector_field(const ActionAngleState& a, const ToleranceConfig& tol) {
    validate(a, tol);
    const std::size_t n = a.size();

    // T_k = e^{qhat_k} prod_{j != k} |phat_k - phat_j|^{-1}
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lt = a.qhat[k];
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) lt -= std::log(std::abs(a.phat[k] - a.phat[j]));
        t[k] = exp_checked(lt, tol);
    }

    DualVelocity v;
    v.dphat = t;
    v.dqhat.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum += 1.0 / (a.phat[i] - a.phat[j]);
        double dq = t[i] * sum;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) dq -= t[k] / (a.phat[k] - a.phat[i]);
        v.dqhat[i] = dq;
    }
    return v;
}

TodaState toda_flow_exact(const TodaState& s, double t, const ToleranceConfig& tol) {
    ActionAngleState a = toda_to_aa(s, tol);
    for (std::size_t i = 0; i < a.size(); ++i) a.qhat[i] -= a.phat[i] * t;
    return aa_to_toda(a, tol);
}

ActionAngleState dual_flow_exact(const ActionAngleState& a, double t, const ToleranceConfig& tol) {
    TodaState s = aa_to_toda(a, tol);
    const std::size_t n = s.size();
    s.p[n - 1] -= t * guarded_exp(s.q[n - 1], tol);
    return toda_to_aa(s, tol);
}

Trajectory dual_flow_numeric(const ActionAngleState& a, double t, double dt,
                             const ToleranceConfig& tol) {
    validate(a, tol);
    if (!(dt > 0.0)) throw InvalidState("dt must be positive");
    if (!(t >= 0.0)) throw InvalidState("t must be nonnegative");

    const std::size_t n = a.size();
    Trajectory traj;
    traj.states = std::vector<ActionAngleState>{};
    auto& states = std::get<std::vector<ActionAngleState>>(traj.states);

    ActionAngleState cur = a;
    double now = 0.0;
    traj.times.push_back(now);
    states.push_back(cur);

    ActionAngleState mid = cur, next = cur;
    while (now < t && t - now > 1e-9 * dt) {
        const double h = std::min(dt, t - now);

        next = cur;
        bool converged = false;
        for (int it = 0; it < tol.midpoint_max_iter; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                mid.phat[i] = 0.5 * (cur.phat[i] + next.phat[i]);
                mid.qhat[i] = 0.5 * (cur.qhat[i] + next.qhat[i]);
            }
            const DualVelocity v = dual_vector_field(mid, tol);
            double delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double np = cur.phat[i] + h * v.dphat[i];
                const double nq = cur.qhat[i] + h * v.dqhat[i];
                delta = std::max({delta, std::abs(np - next.phat[i]),
                                  std::abs(nq - next.qhat[i])});
                next.phat[i] = np;
                next.qhat[i] = nq;
            }
            if (delta <= tol.midpoint_fp_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NoConvergence("implicit midpoint fixed point stalled at dt = " +
                                std::to_string(h));

        validate(next, tol); // surfaces DegenerateSpectrum on gap collapse
        cur = next;
        now += h;
        traj.times.push_back(now);
        states.push_back(cur);
    }
    return traj;
}

} // namespace toda
