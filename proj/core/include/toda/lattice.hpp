#ifndef TODA_LATTICE_HPP
#define TODA_LATTICE_HPP

#include <vector>

#include "toda/matrix.hpp"
#include "toda/states.hpp"
#include "toda/tolerances.hpp"

namespace toda {

// H(q,p) = 1/2 sum p_i^2 + sum_{i<n} e^{q_i - q_{i+1}}.
double hamiltonian(const TodaState& s, const ToleranceConfig& tol = {});

// Symmetric tridiagonal matrix with reversed index order: diagonal
// (-p_n, ..., -p_1) and positive off-diagonal e^{(q_{n-i} - q_{n+1-i})/2}
// at (i+1, i). This is the one place that converts between matrix slots
// and particle indices; moser_to_toda holds the inverse readout.
SquareMatrix lax_matrix(const TodaState& s, const ToleranceConfig& tol = {});

// tr(L^k)/k for k = 1..n; entry 2 reproduces hamiltonian().
std::vector<double> commuting_hamiltonians(const TodaState& s, const ToleranceConfig& tol = {});

struct PhaseVelocity {
    std::vector<double> dq;
    std::vector<double> dp;
};

// dq_i = p_i, dp_i = e^{q_{i-1}-q_i} - e^{q_i-q_{i+1}} (boundary terms zero).
PhaseVelocity toda_vector_field(const TodaState& s, const ToleranceConfig& tol = {});

// Stoermer-Verlet (kick-drift-kick), fixed step with the final partial
// step shortened to land exactly on t. Records every step. Rejects
// inputs with |q_i| or |p_i| above tol.magnitude_guard.
Trajectory verlet_flow(const TodaState& s, double t, double dt, const ToleranceConfig& tol = {});

} // namespace toda

#endif
