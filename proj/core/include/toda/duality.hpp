#ifndef TODA_DUALITY_HPP
#define TODA_DUALITY_HPP

#include <vector>

#include "toda/states.hpp"
#include "toda/tolerances.hpp"

namespace toda {

// Sign ledger, fixed once and pinned by tests; nothing below re-derives it.
//   bracket on the dual space:   {phat_i, qhat_j} = delta_ij
//   subset-sum time derivative:  sigma_dot_k carries weight -sum_{l in I} phat_l
//   exact lattice flow:          qhat -> qhat - phat * t
//   exact dual flow:             q fixed, p_n -> p_n - t e^{q_n}
//   asymptotic momenta:          p_j(+inf) = -phat_j
//   symplectic form matrices:    [[0,-I],[I,0]] in (q,p) and in (phat,qhat) ordering

// Norming constants from angles: w_i = e^{qhat_i/2} prod_{j!=i} |phat_i - phat_j|^{-1/2}.
MoserState w_from_angles(const ActionAngleState& a, const ToleranceConfig& tol = {});

// Exact logarithmic inverse: qhat_i = 2 ln w_i + sum_{j!=i} ln |phat_i - phat_j|.
ActionAngleState angles_from_w(const MoserState& m, const ToleranceConfig& tol = {});

// sigma_0 = 1; sigma_k = sum over k-subsets I of
//   e^{sum_{l in I} qhat_l} prod_{i in I, j notin I} |phat_i - phat_j|^{-1}.
double sigma(const ActionAngleState& a, int k, const ToleranceConfig& tol = {});

// Each subset term of sigma_k weighted by -sum_{l in I} phat_l.
double sigma_dot(const ActionAngleState& a, int k, const ToleranceConfig& tol = {});

// The explicit action-angle map: q_j = ln(sigma_{n+1-j}/sigma_{n-j}),
// p_j = sigma_dot_{n+1-j}/sigma_{n+1-j} - sigma_dot_{n-j}/sigma_{n-j}.
// With tol.check_dual_route the factorization route
// moser_to_toda(w_from_angles(a)) is evaluated too and must agree within
// tol.route_match_tol; the direct value is returned either way.
TodaState aa_to_toda(const ActionAngleState& a, const ToleranceConfig& tol = {});

// Inverse map: angles_from_w(toda_to_moser(s)).
ActionAngleState toda_to_aa(const TodaState& s, const ToleranceConfig& tol = {});

// The two routes of aa_to_toda, individually.
TodaState aa_to_toda_direct(const ActionAngleState& a, const ToleranceConfig& tol = {});
TodaState aa_to_toda_gauge(const ActionAngleState& a, const ToleranceConfig& tol = {});

// Dual many-body Hamiltonian sigma_1; equals e^{q_n} of the image state.
double dual_hamiltonian(const ActionAngleState& a, const ToleranceConfig& tol = {});

struct DualVelocity {
    std::vector<double> dphat;
    std::vector<double> dqhat;
};

// dphat_i = dH/dqhat_i > 0 and dqhat_i = -dH/dphat_i, from analytic partials.
DualVelocity dual_vector_field(const ActionAngleState& a, const ToleranceConfig& tol = {});

// Exact lattice flow by conjugation: straight-line drift qhat - phat t in
// the dual coordinates.
TodaState toda_flow_exact(const TodaState& s, double t, const ToleranceConfig& tol = {});

// Exact dual flow by conjugation: in image coordinates q is fixed and p_n
// drifts linearly with rate -e^{q_n}.
ActionAngleState dual_flow_exact(const ActionAngleState& a, double t, const ToleranceConfig& tol = {});

// Implicit-midpoint integration of dual_vector_field, fixed-point
// iteration per step; cross-check for dual_flow_exact.
Trajectory dual_flow_numeric(const ActionAngleState& a, double t, double dt,
                             const ToleranceConfig& tol = {});

} // namespace toda

#endif
