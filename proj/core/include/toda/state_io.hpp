#ifndef TODA_STATE_IO_HPP
#define TODA_STATE_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "toda/states.hpp"
#include "toda/tolerances.hpp"

namespace toda {

// On-disk state document. JSON field names are part of the interface:
// n, kind ("toda" | "action_angle" | "moser"), and per kind the arrays
// q,p | phat,qhat | phat,w.
struct StateDocument {
    std::variant<TodaState, ActionAngleState, MoserState> state;

    StateKind kind() const { return static_cast<StateKind>(state.index()); }
    std::size_t size() const;

    const TodaState& toda() const { return std::get<TodaState>(state); }
    const ActionAngleState& action_angle() const { return std::get<ActionAngleState>(state); }
    const MoserState& moser() const { return std::get<MoserState>(state); }
};

std::string kind_name(StateKind kind);

// Parse and validate; throws InvalidState on malformed documents and
// DegenerateSpectrum on sub-tolerance phat gaps.
StateDocument parse_state(const std::string& json_text, const ToleranceConfig& tol = {});
StateDocument load_state(const std::string& path, const ToleranceConfig& tol = {});

// Serialized with round-trip-exact number formatting; load(store(x)) == x bitwise.
std::string store_state(const StateDocument& doc);
void write_state(const std::string& path, const StateDocument& doc);

// CSV rows t,<coords...>,H every `stride` samples (final sample always
// written); 12 significant digits, '\n' endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, int stride,
                          const ToleranceConfig& tol = {});

// Partial override of ToleranceConfig from a JSON object; unknown keys
// are rejected.
ToleranceConfig tolerance_config_from_json(const std::string& json_text);
ToleranceConfig load_tolerance_config(const std::string& path);

} // namespace toda

#endif
