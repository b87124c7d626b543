#ifndef TODA_GAUGE_HPP
#define TODA_GAUGE_HPP

#include <vector>

#include "toda/matrix.hpp"
#include "toda/states.hpp"
#include "toda/tolerances.hpp"

namespace toda {

// Unique factorization g = eta_plus * diag(rho) * eta_K with eta_plus
// unit upper triangular, rho positive, eta_K orthogonal.
struct IwasawaFactors {
    SquareMatrix eta_plus;
    std::vector<double> rho;
    SquareMatrix eta_k;
};

// Point (g, J) of the big phase space, g invertible.
struct BigPhasePoint {
    SquareMatrix g;
    SquareMatrix j;
};

struct MomentImage {
    SquareMatrix lower;   // strictly lower part of g J g^{-1}
    SquareMatrix antisym; // minus the antisymmetric part of J
};

// Krylov matrix Gamma_{ij} = w_i phat_i^{j-1}; columns w, Lam w, ...,
// Lam^{n-1} w for Lam = diag(phat).
SquareMatrix gamma_matrix(const MoserState& m, const ToleranceConfig& tol = {});

// Factors of Gamma^{-1}, computed from a single QR of Gamma itself:
// Gamma = Q R gives eta_K = Q^T, rho_i = 1/R_ii, eta_plus = R^{-1} diag(R_ii).
// The residual ||eta_plus diag(rho) eta_K Gamma - 1||_max is verified.
IwasawaFactors iwasawa_of_gamma_inverse(const MoserState& m, const ToleranceConfig& tol = {});

// Gauge transform onto the lattice slice: conjugate diag(phat) by eta_K,
// read q from rho_i = e^{-q_{n+1-i}/2} and p from the diagonal. Verifies
// tridiagonality, positive off-band, and agreement with lax_matrix.
TodaState moser_to_toda(const MoserState& m, const ToleranceConfig& tol = {});

// Inverse spectral readout: eigenvalues of the Lax matrix descending,
// w_i = e^{q_n/2} u_{1i} with u_{1i} the (nonnegative) first component of
// eigenvector i. Checks sum w_i^2 = e^{q_n}.
MoserState toda_to_moser(const TodaState& s, const ToleranceConfig& tol = {});

// e^{q_n} ((z - L)^{-1})_{11}; equals sum w_i^2 / (z - phat_i).
double resolvent(const TodaState& s, double z, const ToleranceConfig& tol = {});

// Y = Gamma^T Gamma with entries Y_{ij} = sum_k phat_k^{i+j-2} w_k^2.
SquareMatrix hankel(const MoserState& m, const ToleranceConfig& tol = {});

// Leading minors of Y in closed form: for each k-subset I the term
// prod_{l in I} w_l^2 * prod_{i != j in I} |phat_i - phat_j|, summed over
// subsets by bitmask. All terms positive, no cancellation; switches to
// log-sum-exp past tol.log_space_threshold.
std::vector<double> minors_cauchy_binet(const MoserState& m, const ToleranceConfig& tol = {});

// ((g J g^{-1})_-, -J_antisym); on either slice this equals (I_-, 0).
MomentImage moment_map(const BigPhasePoint& pt, const ToleranceConfig& tol = {});

// Leading minors of (g g^T)^{-1}; invariant under the gauge action.
std::vector<double> invariant_hamiltonians(const BigPhasePoint& pt, const ToleranceConfig& tol = {});

// Slice embeddings into the big phase space.
BigPhasePoint toda_slice_point(const TodaState& s, const ToleranceConfig& tol = {});
BigPhasePoint moser_slice_point(const MoserState& m, const ToleranceConfig& tol = {});

// Subdiagonal shift matrix I_-.
SquareMatrix lower_shift(std::size_t n);

} // namespace toda

#endif
