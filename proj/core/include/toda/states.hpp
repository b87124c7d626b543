#ifndef TODA_STATES_HPP
#define TODA_STATES_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "toda/tolerances.hpp"

namespace toda {

// Point (q, p) of the lattice phase space R^n x R^n. No ordering
// constraint on either vector.
struct TodaState {
    std::vector<double> q;
    std::vector<double> p;

    std::size_t size() const { return q.size(); }
};

// Point (phat, qhat) of the dual phase space: phat strictly decreasing,
// qhat unconstrained.
struct ActionAngleState {
    std::vector<double> phat;
    std::vector<double> qhat;

    std::size_t size() const { return phat.size(); }
};

// Spectral data (phat, w): eigenvalues strictly decreasing, norming
// constants componentwise positive.
struct MoserState {
    std::vector<double> phat;
    std::vector<double> w;

    std::size_t size() const { return phat.size(); }
};

enum class StateKind { toda, action_angle, moser };

// Time-ordered flow samples of a single kind.
struct Trajectory {
    std::vector<double> times;
    std::variant<std::vector<TodaState>, std::vector<ActionAngleState>> states;

    StateKind kind() const {
        return states.index() == 0 ? StateKind::toda : StateKind::action_angle;
    }
    const std::vector<TodaState>& toda_states() const {
        return std::get<std::vector<TodaState>>(states);
    }
    const std::vector<ActionAngleState>& aa_states() const {
        return std::get<std::vector<ActionAngleState>>(states);
    }
    std::size_t size() const { return times.size(); }
};

// Throw InvalidState on structural violations (non-finite entries, size
// mismatch, broken ordering, w <= 0) and DegenerateSpectrum when a phat
// gap is positive but below tol.degeneracy_gap.
void validate(const TodaState& s);
void validate(const ActionAngleState& s, const ToleranceConfig& tol = {});
void validate(const MoserState& s, const ToleranceConfig& tol = {});

} // namespace toda

#endif
