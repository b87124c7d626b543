#ifndef TODA_SAMPLING_HPP
#define TODA_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "toda/states.hpp"

namespace toda {

// Deterministic uniform generator. The double mapping is fixed here
// (not delegated to std::uniform_real_distribution, whose output is
// implementation-defined) so that seeded runs are bitwise reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    // Derive an independent stream for a named sub-task.
    static std::uint64_t split(std::uint64_t seed, const char* label);

private:
    std::mt19937_64 gen_;
};

// Strictly decreasing vector with every gap >= min_gap, kept centered so
// magnitudes stay small and the Krylov matrices stay well conditioned.
std::vector<double> sample_phat(Rng& rng, int n, double min_gap = 0.3);

// qhat uniform in [-qhat_range, qhat_range].
ActionAngleState sample_action_angle(Rng& rng, int n, double min_gap = 0.3,
                                     double qhat_range = 2.0);

// w = exp(uniform[-lnw_range, lnw_range]).
MoserState sample_moser(Rng& rng, int n, double min_gap = 0.3, double lnw_range = 1.0);

// q, p uniform in [-range, range].
TodaState sample_toda(Rng& rng, int n, double range = 2.0);

} // namespace toda

#endif
