#include "toda/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

std::uint64_t Rng::split(std::uint64_t seed, const char* label) {
    // FNV-1a over the label, folded into the seed.
    std::uint64_t h = 14695981039346656037ull;
    for (const char* c = label; *c; ++c) {
        h ^= static_cast<std::uint64_t>(*c);
        h *= 1099511628211ull;
    }
    return seed ^ h;
}

std::vector<double> sample_phat(Rng& rng, int n, double min_gap) {
    if (n == 1) return {rng.uniform(-2.0, 2.0)};

    // Gaps at least min_gap with the total span held near the base range,
    // then centered with a small jitter; keeps magnitudes (and thereby the
    // Krylov conditioning) tame for n <= 8.
    const double extra = std::max(0.0, (4.0 - (n - 1) * min_gap) / n);
    std::vector<double> gaps(n - 1);
    double span = 0.0;
    for (double& g : gaps) {
        g = min_gap + rng.uniform(0.0, extra);
        span += g;
    }
    const double top = 0.5 * span + rng.uniform(-0.25, 0.25);

    std::vector<double> phat(n);
    phat[0] = top;
    for (int i = 1; i < n; ++i) phat[i] = phat[i - 1] - gaps[i - 1];
    return phat;
}

ActionAngleState sample_action_angle(Rng& rng, int n, double min_gap, double qhat_range) {
    ActionAngleState a;
    a.phat = sample_phat(rng, n, min_gap);
    a.qhat.resize(n);
    for (double& q : a.qhat) q = rng.uniform(-qhat_range, qhat_range);
    return a;
}

MoserState sample_moser(Rng& rng, int n, double min_gap, double lnw_range) {
    MoserState m;
    m.phat = sample_phat(rng, n, min_gap);
    m.w.resize(n);
    for (double& w : m.w) w = std::exp(rng.uniform(-lnw_range, lnw_range));
    return m;
}

TodaState sample_toda(Rng& rng, int n, double range) {
    TodaState s;
    s.q.resize(n);
    s.p.resize(n);
    for (double& q : s.q) q = rng.uniform(-range, range);
    for (double& p : s.p) p = rng.uniform(-range, range);
    return s;
}

} // namespace toda
