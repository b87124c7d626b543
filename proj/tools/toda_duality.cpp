// Command-line front end: state conversion, flow simulation, spectrum
// extraction, and the randomized verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 numeric
// failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"

#include "toda/duality.hpp"
#include "toda/errors.hpp"
#include "toda/gauge.hpp"
#include "toda/lattice.hpp"
#include "toda/state_io.hpp"
#include "toda/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_input_error = 2;
constexpr int exit_numeric_error = 3;

struct MapArgs {
    std::string direction;
    std::string input;
    std::string output;
};

struct FlowArgs {
    std::string system;
    std::string method;
    double t = 0.0;
    double dt = 1e-3;
    int stride = 10;
    std::string input;
    std::string output;
};

struct SpectrumArgs {
    std::string input;
    std::string output; // empty: stdout
};

struct VerifyArgs {
    std::vector<std::string> suites{"all"};
    toda::VerifyOptions options;
    double tolerance = 0.0; // 0: use each check's stated tolerance
};

double max_component_dev(const std::vector<double>& a, const std::vector<double>& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

int run_map(const MapArgs& args, const toda::ToleranceConfig& tol) {
    const toda::StateDocument in = toda::load_state(args.input, tol);
    toda::StateDocument out;
    double residual = 0.0;

    if (args.direction == "forward") {
        if (in.kind() != toda::StateKind::action_angle)
            throw toda::InvalidState("forward expects kind action_angle");
        const toda::TodaState s = toda::aa_to_toda(in.action_angle(), tol);
        const toda::ActionAngleState back = toda::toda_to_aa(s, tol);
        residual = std::max(max_component_dev(back.phat, in.action_angle().phat),
                            max_component_dev(back.qhat, in.action_angle().qhat));
        out.state = s;
    } else if (args.direction == "inverse") {
        if (in.kind() != toda::StateKind::toda)
            throw toda::InvalidState("inverse expects kind toda");
        const toda::ActionAngleState a = toda::toda_to_aa(in.toda(), tol);
        const toda::TodaState back = toda::aa_to_toda(a, tol);
        residual = std::max(max_component_dev(back.q, in.toda().q),
                            max_component_dev(back.p, in.toda().p));
        out.state = a;
    } else if (args.direction == "to-moser") {
        if (in.kind() != toda::StateKind::toda)
            throw toda::InvalidState("to-moser expects kind toda");
        const toda::MoserState m = toda::toda_to_moser(in.toda(), tol);
        const toda::TodaState back = toda::moser_to_toda(m, tol);
        residual = std::max(max_component_dev(back.q, in.toda().q),
                            max_component_dev(back.p, in.toda().p));
        out.state = m;
    } else if (args.direction == "from-moser") {
        if (in.kind() != toda::StateKind::moser)
            throw toda::InvalidState("from-moser expects kind moser");
        const toda::TodaState s = toda::moser_to_toda(in.moser(), tol);
        const toda::MoserState back = toda::toda_to_moser(s, tol);
        residual = std::max(max_component_dev(back.phat, in.moser().phat),
                            max_component_dev(back.w, in.moser().w));
        out.state = s;
    } else {
        throw toda::InvalidState("unknown direction: " + args.direction);
    }

    toda::write_state(args.output, out);
    std::fprintf(stderr, "round-trip residual: %.3e\n", residual);
    return exit_ok;
}

int run_flow(const FlowArgs& args, const toda::ToleranceConfig& tol) {
    if (!(args.t >= 0.0)) throw toda::InvalidState("--t must be nonnegative");
    if (!(args.dt > 0.0)) throw toda::InvalidState("--dt must be positive");
    if (args.stride < 1) throw toda::InvalidState("--stride must be >= 1");
    const toda::StateDocument in = toda::load_state(args.input, tol);

    toda::Trajectory traj;
    int csv_stride = 1;

    auto sample_times = [&]() {
        // Exact flows are evaluated directly at the strided times.
        std::vector<double> times{0.0};
        const double step = args.stride * args.dt;
        for (double next = step; next < args.t - 1e-9 * args.dt; next += step)
            times.push_back(next);
        if (args.t > 0.0) times.push_back(args.t);
        return times;
    };

    if (args.system == "toda") {
        if (in.kind() != toda::StateKind::toda)
            throw toda::InvalidState("flow --system toda expects kind toda");
        if (args.method == "exact") {
            traj.states = std::vector<toda::TodaState>{};
            auto& states = std::get<std::vector<toda::TodaState>>(traj.states);
            for (double time : sample_times()) {
                traj.times.push_back(time);
                states.push_back(toda::toda_flow_exact(in.toda(), time, tol));
            }
        } else if (args.method == "numeric") {
            traj = toda::verlet_flow(in.toda(), args.t, args.dt, tol);
            csv_stride = args.stride;
        } else {
            throw toda::InvalidState("unknown method: " + args.method);
        }
    } else if (args.system == "dual") {
        if (in.kind() != toda::StateKind::action_angle)
            throw toda::InvalidState("flow --system dual expects kind action_angle");
        if (args.method == "exact") {
            traj.states = std::vector<toda::ActionAngleState>{};
            auto& states = std::get<std::vector<toda::ActionAngleState>>(traj.states);
            for (double time : sample_times()) {
                traj.times.push_back(time);
                states.push_back(toda::dual_flow_exact(in.action_angle(), time, tol));
            }
        } else if (args.method == "numeric") {
            traj = toda::dual_flow_numeric(in.action_angle(), args.t, args.dt, tol);
            csv_stride = args.stride;
        } else {
            throw toda::InvalidState("unknown method: " + args.method);
        }
    } else {
        throw toda::InvalidState("unknown system: " + args.system);
    }

    std::ofstream out(args.output);
    if (!out) throw toda::InvalidState("cannot open " + args.output + " for writing");
    toda::write_trajectory_csv(out, traj, csv_stride, tol);
    return exit_ok;
}

int run_spectrum(const SpectrumArgs& args, const toda::ToleranceConfig& tol) {
    const toda::StateDocument in = toda::load_state(args.input, tol);
    if (in.kind() != toda::StateKind::toda)
        throw toda::InvalidState("spectrum expects kind toda");

    const toda::MoserState m = toda::toda_to_moser(in.toda(), tol);
    const toda::ActionAngleState a = toda::angles_from_w(m, tol);

    nlohmann::ordered_json j;
    j["n"] = m.size();
    j["kind"] = "moser";
    j["phat"] = m.phat;
    j["w"] = m.w;
    j["qhat"] = a.qhat;

    if (args.output.empty()) {
        std::cout << j.dump() << '\n';
    } else {
        std::ofstream out(args.output);
        if (!out) throw toda::InvalidState("cannot open " + args.output + " for writing");
        out << j.dump() << '\n';
    }
    return exit_ok;
}

int run_verify(const VerifyArgs& args) {
    toda::VerifyOptions options = args.options;
    if (args.tolerance > 0.0) options.tolerance_override = args.tolerance;

    const std::vector<toda::CheckReport> reports = toda::run_suites(options, args.suites);
    bool all_passed = true;
    for (const toda::CheckReport& report : reports) {
        std::cout << toda::to_json_line(report) << '\n';
        all_passed = all_passed && report.passed;
    }
    return all_passed ? exit_ok : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open Toda lattice, its action-angle map, and the dual system"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON file overriding tolerance defaults");

    MapArgs map_args;
    CLI::App* map_cmd = app.add_subcommand("map", "Convert between state kinds");
    map_cmd->fallthrough(); // lets --config appear after the subcommand
    map_cmd->add_option("--direction", map_args.direction,
                        "forward | inverse | to-moser | from-moser")
        ->required();
    map_cmd->add_option("--input", map_args.input, "input state JSON")->required();
    map_cmd->add_option("--output", map_args.output, "output state JSON")->required();

    FlowArgs flow_args;
    CLI::App* flow_cmd = app.add_subcommand("flow", "Integrate a flow and write a CSV trajectory");
    flow_cmd->fallthrough();
    flow_cmd->add_option("--system", flow_args.system, "toda | dual")->required();
    flow_cmd->add_option("--method", flow_args.method, "exact | numeric")->required();
    flow_cmd->add_option("--t", flow_args.t, "flow time")->required();
    flow_cmd->add_option("--dt", flow_args.dt, "step size")->required();
    flow_cmd->add_option("--stride", flow_args.stride, "sampling stride in steps (default 10)");
    flow_cmd->add_option("--input", flow_args.input, "input state JSON")->required();
    flow_cmd->add_option("--output", flow_args.output, "output CSV path")->required();

    SpectrumArgs spectrum_args;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "Print spectral data (phat, w, qhat) of a lattice state");
    spectrum_cmd->fallthrough();
    spectrum_cmd->add_option("--input", spectrum_args.input, "input state JSON")->required();
    spectrum_cmd->add_option("--output", spectrum_args.output, "output path (default stdout)");

    VerifyArgs verify_args;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run randomized identity checks, one JSON report per line");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--suite", verify_args.suites,
                           "moment | minors | pullback | brackets | symplectomorphism | "
                           "flow-conjugacy | scattering | all");
    verify_cmd->add_option("--n", verify_args.options.n, "largest state dimension");
    verify_cmd->add_option("--seed", verify_args.options.seed, "RNG seed");
    verify_cmd->add_option("--trials", verify_args.options.trials, "trials per check");
    verify_cmd->add_option("--t-toda", verify_args.options.t_toda, "lattice flow horizon");
    verify_cmd->add_option("--dt-toda", verify_args.options.dt_toda, "lattice flow step");
    verify_cmd->add_option("--t-dual", verify_args.options.t_dual, "dual flow horizon");
    verify_cmd->add_option("--dt-dual", verify_args.options.dt_dual, "dual flow step");
    verify_cmd->add_option("--t-scatter", verify_args.options.t_scatter, "scattering horizon");
    verify_cmd->add_option("--dt-scatter", verify_args.options.dt_scatter, "scattering step");
    verify_cmd->add_option("--h-symplectic", verify_args.options.h_symplectic,
                           "finite-difference step for the symplectomorphism check");
    verify_cmd->add_option("--h-pullback", verify_args.options.h_pullback,
                           "finite-difference step for the pullback check");
    verify_cmd->add_option("--tolerance", verify_args.tolerance,
                           "override every check's tolerance (0 keeps the defaults)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return exit_input_error;
    }

    try {
        toda::ToleranceConfig tol;
        if (!config_path.empty()) tol = toda::load_tolerance_config(config_path);
        verify_args.options.tol = tol;

        if (map_cmd->parsed()) return run_map(map_args, tol);
        if (flow_cmd->parsed()) return run_flow(flow_args, tol);
        if (spectrum_cmd->parsed()) return run_spectrum(spectrum_args, tol);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        std::cerr << "no subcommand\n";
        return exit_input_error;
    } catch (const toda::InvalidState& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const toda::Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return exit_numeric_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric_error;
    }
}
