#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "toda/duality.hpp"
#include "toda/errors.hpp"
#include "toda/gauge.hpp"
#include "toda/lattice.hpp"
#include "toda/sampling.hpp"

using namespace toda;

namespace {

const double ln2 = std::log(2.0);
const ActionAngleState worked_aa{{1.0, 0.0}, {0.0, 0.0}};
const TodaState worked_toda{{-ln2, ln2}, {-0.5, -0.5}};

double max_dev(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

TEST_CASE("w_from_angles: empty product, unit gaps, direct substitution") {
    CHECK(w_from_angles({{0.4}, {1.2}}).w[0] == doctest::Approx(std::exp(0.6)).epsilon(1e-14));

    const MoserState wk = w_from_angles(worked_aa);
    CHECK(wk.w[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(wk.w[1] == doctest::Approx(1.0).epsilon(1e-14));

    const MoserState sub = w_from_angles({{3.0, 1.0}, {2.0 * ln2, 0.0}});
    CHECK(sub.w[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sub.w[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("angles_from_w inverts w_from_angles to machine accuracy") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 1 + trial % 8);
        const ActionAngleState back = angles_from_w(w_from_angles(a));
        CHECK(max_dev(back.phat, a.phat) == 0.0);
        CHECK(max_dev(back.qhat, a.qhat) <= 1e-12);
    }
}

TEST_CASE("sigma: conventions and worked values") {
    Rng rng(52);
    const ActionAngleState a = sample_action_angle(rng, 5);
    CHECK(sigma(a, 0) == 1.0);

    CHECK(sigma(worked_aa, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sigma(worked_aa, 2) == doctest::Approx(1.0).epsilon(1e-14));

    // k = n: the single full subset leaves no boundary pairs.
    double qsum = 0.0;
    for (double q : a.qhat) qsum += q;
    CHECK(sigma(a, 5) == doctest::Approx(std::exp(qsum)).epsilon(1e-12));

    CHECK_THROWS_AS(sigma(a, 6), InvalidState);
    CHECK_THROWS_AS(sigma(a, -1), InvalidState);
    CHECK_THROWS_AS(sigma({{0.0}, {1500.0}}, 1), FeatureOverflow);

    std::vector<double> wide(21), angles(21, 0.0);
    for (int i = 0; i < 21; ++i) wide[i] = 10.0 - i;
    CHECK_THROWS_AS(sigma({wide, angles}, 1), DimensionTooLarge);
}

TEST_CASE("sigma matches the Cauchy-Binet minors through the w parametrization") {
    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 1 + trial % 8);
        const auto minors = minors_cauchy_binet(w_from_angles(a));
        for (std::size_t k = 1; k <= a.size(); ++k)
            CHECK(std::abs(sigma(a, int(k)) - minors[k - 1]) <= 1e-10 * minors[k - 1]);
    }
}

TEST_CASE("sigma_dot: momentum-weighted subset sums") {
    CHECK(sigma_dot(worked_aa, 0) == 0.0);
    CHECK(sigma_dot(worked_aa, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sigma_dot(worked_aa, 2) == doctest::Approx(-1.0).epsilon(1e-14));

    const ActionAngleState single{{0.8}, {-0.3}};
    CHECK(sigma_dot(single, 1) ==
          doctest::Approx(-0.8 * std::exp(-0.3)).epsilon(1e-14));
}

TEST_CASE("aa_to_toda: scalar case and the worked example") {
    const TodaState scalar = aa_to_toda({{0.8}, {-0.3}});
    CHECK(scalar.q[0] == doctest::Approx(-0.3));
    CHECK(scalar.p[0] == doctest::Approx(-0.8));

    const TodaState s = aa_to_toda(worked_aa);
    CHECK(s.q[0] == doctest::Approx(-ln2).epsilon(1e-14));
    CHECK(s.q[1] == doctest::Approx(ln2).epsilon(1e-14));
    CHECK(s.p[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(s.p[1] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("aa_to_toda: turns the Hamiltonian into the free form") {
    Rng rng(54);
    for (int trial = 0; trial < 40; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 1 + trial % 6);
        double free = 0.0;
        for (double p : a.phat) free += 0.5 * p * p;
        const double h = hamiltonian(aa_to_toda(a));
        CHECK(std::abs(h - free) <= 1e-10 * std::max(1.0, free));
    }
}

TEST_CASE("aa_to_toda: direct and factorization routes agree componentwise") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 1 + trial % 8);
        const TodaState direct = aa_to_toda_direct(a);
        const TodaState gauged = aa_to_toda_gauge(a);
        CHECK(max_dev(direct.q, gauged.q) <= 1e-8);
        CHECK(max_dev(direct.p, gauged.p) <= 1e-8);
    }
}

TEST_CASE("toda_to_aa: scalar, worked inverse, round trips") {
    const ActionAngleState zero = toda_to_aa({{0.0}, {0.0}});
    CHECK(zero.phat[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(zero.qhat[0] == doctest::Approx(0.0).scale(1.0));

    const ActionAngleState a = toda_to_aa(worked_toda);
    CHECK(a.phat[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.phat[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(a.qhat[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(a.qhat[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    Rng rng(56);
    for (int trial = 0; trial < 40; ++trial) {
        const ActionAngleState start = sample_action_angle(rng, 1 + trial % 8);
        const ActionAngleState rt = toda_to_aa(aa_to_toda(start));
        CHECK(max_dev(rt.phat, start.phat) <= 1e-8);
        CHECK(max_dev(rt.qhat, start.qhat) <= 1e-8);

        const TodaState s = sample_toda(rng, 1 + trial % 8);
        const TodaState rt2 = aa_to_toda(toda_to_aa(s));
        CHECK(max_dev(rt2.q, s.q) <= 1e-8);
        CHECK(max_dev(rt2.p, s.p) <= 1e-8);
    }
}

TEST_CASE("dual_hamiltonian: sigma_1 and the e^{q_n} identity") {
    CHECK(dual_hamiltonian({{0.8}, {-0.3}}) == doctest::Approx(std::exp(-0.3)).epsilon(1e-14));
    CHECK(dual_hamiltonian(worked_aa) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dual_hamiltonian(worked_aa) == sigma(worked_aa, 1));

    Rng rng(57);
    for (int trial = 0; trial < 20; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 1 + trial % 6);
        const TodaState s = aa_to_toda(a);
        CHECK(dual_hamiltonian(a) ==
              doctest::Approx(std::exp(s.q.back())).epsilon(1e-10));
    }
}

TEST_CASE("dual_vector_field: scalar case and finite-difference oracle") {
    const DualVelocity scalar = dual_vector_field({{0.8}, {-0.3}});
    CHECK(scalar.dphat[0] == doctest::Approx(std::exp(-0.3)).epsilon(1e-14));
    CHECK(scalar.dqhat[0] == 0.0);

    Rng rng(58);
    const double h = 1e-6;
    for (int trial = 0; trial < 15; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 2 + trial % 4);
        const std::size_t n = a.size();
        const DualVelocity v = dual_vector_field(a);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(v.dphat[i] > 0.0);

            ActionAngleState up = a, dn = a;
            up.qhat[i] += h;
            dn.qhat[i] -= h;
            const double dH_dqhat =
                (dual_hamiltonian(up) - dual_hamiltonian(dn)) / (2.0 * h);
            CHECK(std::abs(v.dphat[i] - dH_dqhat) <= 1e-6 * std::max(1.0, std::abs(dH_dqhat)));

            up = a;
            dn = a;
            up.phat[i] += h;
            dn.phat[i] -= h;
            const double dH_dphat =
                (dual_hamiltonian(up) - dual_hamiltonian(dn)) / (2.0 * h);
            CHECK(std::abs(v.dqhat[i] + dH_dphat) <= 1e-6 * std::max(1.0, std::abs(dH_dphat)));
        }
    }
}

TEST_CASE("toda_flow_exact: identity at t=0, free scalar, group property") {
    Rng rng(59);
    const TodaState s = sample_toda(rng, 4, 1.5);
    const TodaState still = toda_flow_exact(s, 0.0);
    CHECK(max_dev(still.q, s.q) <= 1e-8);
    CHECK(max_dev(still.p, s.p) <= 1e-8);

    const TodaState scalar = toda_flow_exact({{0.4}, {-1.3}}, 2.5);
    CHECK(scalar.q[0] == doctest::Approx(0.4 - 1.3 * 2.5).epsilon(1e-12));
    CHECK(scalar.p[0] == doctest::Approx(-1.3).epsilon(1e-12));

    const TodaState two_hops = toda_flow_exact(toda_flow_exact(s, 1.2), 0.8);
    const TodaState one_hop = toda_flow_exact(s, 2.0);
    CHECK(max_dev(two_hops.q, one_hop.q) <= 1e-8);
    CHECK(max_dev(two_hops.p, one_hop.p) <= 1e-8);
}

TEST_CASE("toda_flow_exact: agrees with Verlet") {
    Rng rng(60);
    const TodaState s0 = aa_to_toda(sample_action_angle(rng, 4));
    const TodaState exact = toda_flow_exact(s0, 5.0);
    const Trajectory run = verlet_flow(s0, 5.0, 1e-4);
    const TodaState& numeric = run.toda_states().back();
    CHECK(max_dev(exact.q, numeric.q) <= 1e-6);
    CHECK(max_dev(exact.p, numeric.p) <= 1e-6);
}

TEST_CASE("dual_flow_exact: identity at t=0 and conserved dual actions") {
    Rng rng(61);
    const ActionAngleState a = sample_action_angle(rng, 3, 0.5, 1.0);
    const ActionAngleState still = dual_flow_exact(a, 0.0);
    CHECK(max_dev(still.phat, a.phat) <= 1e-8);
    CHECK(max_dev(still.qhat, a.qhat) <= 1e-8);

    const TodaState base = aa_to_toda(a);
    for (double t : {0.3, 0.7, 1.0}) {
        const TodaState image = aa_to_toda(dual_flow_exact(a, t));
        CHECK(max_dev(image.q, base.q) <= 1e-8);
    }
}

TEST_CASE("dual_flow_numeric: closed-form scalar law and conservation") {
    const ActionAngleState a{{0.4}, {0.9}};
    const Trajectory traj = dual_flow_numeric(a, 2.0, 1e-3);
    const ActionAngleState& last = traj.aa_states().back();
    CHECK(last.phat[0] == doctest::Approx(0.4 + std::exp(0.9) * 2.0).epsilon(1e-8));
    CHECK(last.qhat[0] == doctest::Approx(0.9).epsilon(1e-10));

    // The midpoint rule keeps the energy in an O(dt^2) band, so a 1e-8
    // relative conservation check needs the finer step.
    Rng rng(62);
    const ActionAngleState b = sample_action_angle(rng, 3, 0.5, 1.0);
    const double h0 = dual_hamiltonian(b);
    const Trajectory run = dual_flow_numeric(b, 0.5, 1e-5);
    for (const ActionAngleState& state : run.aa_states())
        CHECK(std::abs(dual_hamiltonian(state) - h0) <= 1e-8 * h0);

    CHECK(dual_flow_numeric(b, 0.0, 1e-3).size() == 1);

    ToleranceConfig strangled;
    strangled.midpoint_max_iter = 1;
    CHECK_THROWS_AS(dual_flow_numeric(b, 0.1, 1e-3, strangled), NoConvergence);
}

TEST_CASE("dual_flow_exact: agrees with implicit midpoint") {
    Rng rng(63);
    const ActionAngleState a = sample_action_angle(rng, 3, 0.5, 1.0);
    const ActionAngleState exact = dual_flow_exact(a, 1.0);
    const Trajectory run = dual_flow_numeric(a, 1.0, 1e-4);
    const ActionAngleState& numeric = run.aa_states().back();
    CHECK(max_dev(exact.phat, numeric.phat) <= 1e-5);
    CHECK(max_dev(exact.qhat, numeric.qhat) <= 1e-5);
}

TEST_CASE("bracket relations from the w parametrization") {
    // Worked point: {phat_1, w_1} = w_1/2 = 1/2 and {w_1, w_2} = 1/2.
    const MoserState wk = w_from_angles(worked_aa);
    CHECK(0.5 * wk.w[0] == doctest::Approx(0.5));
    CHECK(0.5 * wk.w[0] * wk.w[1] / (1.0 - 0.0) == doctest::Approx(0.5));

    // Analytic partials of w agree with central differences; this pins the
    // inputs check_brackets contracts with.
    Rng rng(64);
    const double h = 2e-6;
    for (int trial = 0; trial < 10; ++trial) {
        const ActionAngleState a = sample_action_angle(rng, 2 + trial % 4);
        const std::size_t n = a.size();
        const MoserState m = w_from_angles(a);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                ActionAngleState up = a, dn = a;
                up.qhat[i] += h;
                dn.qhat[i] -= h;
                const double fd_q =
                    (w_from_angles(up).w[j] - w_from_angles(dn).w[j]) / (2.0 * h);
                const double an_q = (i == j) ? 0.5 * m.w[j] : 0.0;
                CHECK(std::abs(fd_q - an_q) <= 1e-6 * std::max(1.0, std::abs(an_q)));

                up = a;
                dn = a;
                up.phat[i] += h;
                dn.phat[i] -= h;
                const double fd_p =
                    (w_from_angles(up).w[j] - w_from_angles(dn).w[j]) / (2.0 * h);
                double an_p;
                if (i == j) {
                    double s = 0.0;
                    for (std::size_t l = 0; l < n; ++l)
                        if (l != j) s += 1.0 / (a.phat[j] - a.phat[l]);
                    an_p = -0.5 * m.w[j] * s;
                } else {
                    an_p = 0.5 * m.w[j] / (a.phat[j] - a.phat[i]);
                }
                CHECK(std::abs(fd_p - an_p) <= 1e-6 * std::max(1.0, std::abs(an_p)));
            }
    }
}

TEST_CASE("scattering: the symmetric worked collision separates to (-1, 0)") {
    const Trajectory run = verlet_flow(worked_toda, 40.0, 1e-3);
    const TodaState& final_state = run.toda_states().back();
    CHECK(std::abs(final_state.p[0] - (-1.0)) <= 1e-3);
    CHECK(std::abs(final_state.p[1] - 0.0) <= 1e-3);
}
