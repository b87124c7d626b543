#include "toda/lattice.hpp"

#include <cmath>
#include <string>

#include "toda/errors.hpp"

namespace toda {

namespace {

double guarded_exp(double x, const ToleranceConfig& tol) {
    if (x > tol.exp_guard) throw Overflow("exponent " + std::to_string(x) + " exceeds guard");
    return std::exp(x);
}

std::vector<double> coupling_forces(const std::vector<double>& q, const ToleranceConfig& tol) {
    const std::size_t n = q.size();
    std::vector<double> dp(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double c = guarded_exp(q[i] - q[i + 1], tol);
        dp[i] -= c;
        dp[i + 1] += c;
    }
    return dp;
}

} // namespace

double hamiltonian(const TodaState& s, const ToleranceConfig& tol) {
    validate(s);
    double h = 0.0;
    for (double pi : s.p) h += 0.5 * pi * pi;
    for (std::size_t i = 0; i + 1 < s.q.size(); ++i) h += guarded_exp(s.q[i] - s.q[i + 1], tol);
    return h;
}

SquareMatrix lax_matrix(const TodaState& s, const ToleranceConfig& tol) {
    validate(s);
    const std::size_t n = s.size();
    SquareMatrix l(n);
    // Slot i holds particle n+1-i: diagonal -p_{n+1-i}, off-diagonal
    // e^{(q_{n-i} - q_{n+1-i})/2} at (i+1, i).
    for (std::size_t i = 0; i < n; ++i) l(i, i) = -s.p[n - 1 - i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double b = guarded_exp(0.5 * (s.q[n - 2 - i] - s.q[n - 1 - i]), tol);
        l(i + 1, i) = b;
        l(i, i + 1) = b;
    }
    return l;
}

std::vector<double> commuting_hamiltonians(const TodaState& s, const ToleranceConfig& tol) {
    const SquareMatrix l = lax_matrix(s, tol);
    const std::size_t n = l.size();
    std::vector<double> h(n);
    SquareMatrix power = l;
    for (std::size_t k = 1; k <= n; ++k) {
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += power(i, i);
        h[k - 1] = tr / static_cast<double>(k);
        if (k < n) power = power * l;
    }
    return h;
}

PhaseVelocity toda_vector_field(const TodaState& s, const ToleranceConfig& tol) {
    validate(s);
    return {s.p, coupling_forces(s.q, tol)};
}

Trajectory verlet_flow(const TodaState& s, double t, double dt, const ToleranceConfig& tol) {
    validate(s);
    if (!(dt > 0.0)) throw InvalidState("dt must be positive");
    if (!(t >= 0.0)) throw InvalidState("t must be nonnegative");
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::abs(s.q[i]) > tol.magnitude_guard || std::abs(s.p[i]) > tol.magnitude_guard)
            throw Overflow("flow input exceeds magnitude guard");

    const std::size_t n = s.size();
    Trajectory traj;
    traj.states = std::vector<TodaState>{};
    auto& states = std::get<std::vector<TodaState>>(traj.states);

    TodaState cur = s;
    double now = 0.0;
    traj.times.push_back(now);
    states.push_back(cur);

    std::vector<double> force = coupling_forces(cur.q, tol);
    // Kick-drift-kick; the last step is shortened to land on t.
    while (now < t && t - now > 1e-9 * dt) {
        const double h = std::min(dt, t - now);
        for (std::size_t i = 0; i < n; ++i) cur.p[i] += 0.5 * h * force[i];
        for (std::size_t i = 0; i < n; ++i) cur.q[i] += h * cur.p[i];
        force = coupling_forces(cur.q, tol);
        for (std::size_t i = 0; i < n; ++i) cur.p[i] += 0.5 * h * force[i];

        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(cur.q[i]) || !std::isfinite(cur.p[i]))
                throw NonFiniteState("flow produced a non-finite component");

        now += h;
        traj.times.push_back(now);
        states.push_back(cur);
    }
    return traj;
}

} // namespace toda
