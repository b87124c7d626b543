#ifndef TODA_VERIFY_HPP
#define TODA_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toda/sampling.hpp"
#include "toda/tolerances.hpp"

namespace toda {

// Outcome of one randomized identity check. passed <=> max_deviation <= tolerance.
struct CheckReport {
    std::string name;
    int trials = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::uint64_t seed = 0;
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    int trials = 50;
    int n = 4;

    double t_toda = 5.0;   // lattice flow-conjugacy horizon
    double dt_toda = 1e-4;
    double t_dual = 1.0;   // dual flow-conjugacy horizon
    double dt_dual = 1e-4;
    double t_scatter = 40.0;
    double dt_scatter = 1e-3;
    double h_symplectic = 1e-5; // finite-difference steps
    double h_pullback = 1e-4;

    // When set, replaces every check's stated tolerance (negative-control knob).
    std::optional<double> tolerance_override;

    ToleranceConfig tol;
};

// Each check samples `trials` random states at dimension <= options.n,
// evaluates both sides of one identity, and reports the worst deviation.
// With corrupt = true a deliberate defect is injected and the report must
// come back failed; this guards the suite against vacuous passes.
CheckReport check_moment_constraint(const VerifyOptions& options, bool corrupt = false);
CheckReport check_minor_identity(const VerifyOptions& options, bool corrupt = false);
CheckReport check_pullback_form(const VerifyOptions& options, bool corrupt = false);
CheckReport check_brackets(const VerifyOptions& options, bool corrupt = false);
CheckReport check_symplectomorphism(const VerifyOptions& options, bool corrupt = false);
CheckReport check_flow_conjugacy(const VerifyOptions& options, bool corrupt = false);
CheckReport check_scattering(const VerifyOptions& options, bool corrupt = false);

// Canonical suite names accepted by run_suites (and the CLI --suite flag).
const std::vector<std::string>& suite_names();

// Run one named suite ("all" expands to every check, in the order above).
std::vector<CheckReport> run_suites(const VerifyOptions& options,
                                    const std::vector<std::string>& suites);
std::vector<CheckReport> run_all(const VerifyOptions& options);

// Every check once, corrupted; all reports must have passed == false.
std::vector<CheckReport> run_negative_controls(const VerifyOptions& options);

// One-line JSON serialization of a report.
std::string to_json_line(const CheckReport& report);

} // namespace toda

#endif
