#ifndef TODA_TOLERANCES_HPP
#define TODA_TOLERANCES_HPP

namespace toda {

// Every tolerance and numeric guard used by the library, threaded by the
// caller. All defaults are the documented contract; tests pin them.
struct ToleranceConfig {
    // Matrix kernel.
    double singular_threshold = 1e-12; // QR diag(R) floor, relative to largest column norm
    double symmetry_tol       = 1e-12; // ||A - A^T||_max <= tol * ||A||_max
    double eigen_residual     = 1e-10; // ||A V - V D||_max <= tol * ||A||_max
    double degeneracy_gap     = 1e-9;  // absolute minimal eigenvalue / phat gap

    // Gauge machinery.
    double iwasawa_residual   = 1e-10; // ||eta_plus rho eta_K Gamma - 1||_max
    double tridiagonal_tol    = 1e-9;  // absolute off-band bound on the conjugated matrix
    double gauge_match_tol    = 1e-9;  // conjugated matrix vs lax_matrix of the read-out state
    double norming_tol        = 1e-10; // sum w_i^2 = e^{q_n}, relative
    double hankel_structure_tol = 1e-12; // Hankel constancy along antidiagonals, relative

    // Duality maps.
    double route_match_tol    = 1e-8;  // direct sigma route vs gauge route, componentwise
    double sigma_minor_tol    = 1e-10; // sigma_k vs Cauchy-Binet minor, relative
    double near_pole_tol      = 1e-9;  // resolvent argument distance to spectrum

    // Flows.
    double exp_guard           = 700.0; // largest exponent fed to std::exp
    double magnitude_guard     = 50.0;  // flow entry bound on |q_i|, |p_i|
    double log_space_threshold = 20.0;  // switch subset sums to log-sum-exp
    double midpoint_fp_tol     = 1e-13; // implicit midpoint fixed-point tolerance
    int    midpoint_max_iter   = 50;

    // When true the action-angle -> lattice map evaluates both the direct
    // subset-sum route and the factorization route and cross-checks them.
    bool check_dual_route = true;
};

} // namespace toda

#endif
