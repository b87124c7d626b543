#include "toda/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "toda/duality.hpp"
#include "toda/errors.hpp"
#include "toda/lattice.hpp"

namespace toda {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> number_array(const json& j, const std::string& key, std::size_t n) {
    if (!j.contains(key)) throw InvalidState("missing field: " + key);
    const json& arr = j.at(key);
    if (!arr.is_array()) throw InvalidState("field " + key + " is not an array");
    if (arr.size() != n)
        throw InvalidState("field " + key + " has length " + std::to_string(arr.size()) +
                           ", expected " + std::to_string(n));
    std::vector<double> out;
    out.reserve(n);
    for (const json& v : arr) {
        if (!v.is_number()) throw InvalidState("field " + key + " has a non-numeric entry");
        out.push_back(v.get<double>());
    }
    return out;
}

json state_to_json(const StateDocument& doc) {
    json j;
    j["n"] = doc.size();
    j["kind"] = kind_name(doc.kind());
    switch (doc.kind()) {
    case StateKind::toda:
        j["q"] = doc.toda().q;
        j["p"] = doc.toda().p;
        break;
    case StateKind::action_angle:
        j["phat"] = doc.action_angle().phat;
        j["qhat"] = doc.action_angle().qhat;
        break;
    case StateKind::moser:
        j["phat"] = doc.moser().phat;
        j["w"] = doc.moser().w;
        break;
    }
    return j;
}

} // namespace

std::size_t StateDocument::size() const {
    return std::visit([](const auto& s) { return s.size(); }, state);
}

std::string kind_name(StateKind kind) {
    switch (kind) {
    case StateKind::toda: return "toda";
    case StateKind::action_angle: return "action_angle";
    case StateKind::moser: return "moser";
    }
    return "?";
}

StateDocument parse_state(const std::string& json_text, const ToleranceConfig& tol) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidState(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidState("state document is not a JSON object");
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw InvalidState("missing or non-integer field: n");
    const long long n_raw = j.at("n").get<long long>();
    if (n_raw < 1) throw InvalidState("n must be a positive integer");
    const std::size_t n = static_cast<std::size_t>(n_raw);
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw InvalidState("missing or non-string field: kind");
    const std::string kind = j.at("kind").get<std::string>();

    StateDocument doc;
    if (kind == "toda") {
        TodaState s{number_array(j, "q", n), number_array(j, "p", n)};
        validate(s);
        doc.state = std::move(s);
    } else if (kind == "action_angle") {
        ActionAngleState s{number_array(j, "phat", n), number_array(j, "qhat", n)};
        validate(s, tol);
        doc.state = std::move(s);
    } else if (kind == "moser") {
        MoserState s{number_array(j, "phat", n), number_array(j, "w", n)};
        validate(s, tol);
        doc.state = std::move(s);
    } else {
        throw InvalidState("unknown kind: " + kind);
    }
    return doc;
}

StateDocument load_state(const std::string& path, const ToleranceConfig& tol) {
    std::ifstream in(path);
    if (!in) throw InvalidState("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str(), tol);
}

std::string store_state(const StateDocument& doc) {
    return state_to_json(doc).dump();
}

void write_state(const std::string& path, const StateDocument& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidState("cannot open " + path + " for writing");
    out << store_state(doc) << '\n';
}

namespace {

void append_number(std::string& row, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    row += ',';
    row += buf;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, int stride,
                          const ToleranceConfig& tol) {
    if (stride < 1) throw InvalidState("stride must be >= 1");
    if (trajectory.size() == 0) throw InvalidState("empty trajectory");

    const bool lattice = trajectory.kind() == StateKind::toda;
    const std::size_t n =
        lattice ? trajectory.toda_states().front().size() : trajectory.aa_states().front().size();

    std::string header = "t";
    for (std::size_t i = 1; i <= n; ++i)
        header += lattice ? ",q" + std::to_string(i) : ",phat" + std::to_string(i);
    for (std::size_t i = 1; i <= n; ++i)
        header += lattice ? ",p" + std::to_string(i) : ",qhat" + std::to_string(i);
    header += ",H";
    out << header << '\n';

    const std::size_t count = trajectory.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (idx % static_cast<std::size_t>(stride) != 0 && idx != count - 1) continue;
        char tbuf[32];
        std::snprintf(tbuf, sizeof tbuf, "%.12g", trajectory.times[idx]);
        std::string row = tbuf;
        if (lattice) {
            const TodaState& s = trajectory.toda_states()[idx];
            for (double v : s.q) append_number(row, v);
            for (double v : s.p) append_number(row, v);
            append_number(row, hamiltonian(s, tol));
        } else {
            const ActionAngleState& s = trajectory.aa_states()[idx];
            for (double v : s.phat) append_number(row, v);
            for (double v : s.qhat) append_number(row, v);
            append_number(row, dual_hamiltonian(s, tol));
        }
        out << row << '\n';
    }
}

ToleranceConfig tolerance_config_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidState(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidState("tolerance config is not a JSON object");

    ToleranceConfig tol;
    for (const auto& [key, value] : j.items()) {
        if (key == "check_dual_route") {
            if (!value.is_boolean()) throw InvalidState("check_dual_route must be boolean");
            tol.check_dual_route = value.get<bool>();
            continue;
        }
        if (key == "midpoint_max_iter") {
            if (!value.is_number_integer() || value.get<int>() < 1)
                throw InvalidState("midpoint_max_iter must be a positive integer");
            tol.midpoint_max_iter = value.get<int>();
            continue;
        }
        if (!value.is_number() || !(value.get<double>() > 0.0))
            throw InvalidState("tolerance " + key + " must be a positive number");
        const double v = value.get<double>();
        if (key == "singular_threshold") tol.singular_threshold = v;
        else if (key == "symmetry_tol") tol.symmetry_tol = v;
        else if (key == "eigen_residual") tol.eigen_residual = v;
        else if (key == "degeneracy_gap") tol.degeneracy_gap = v;
        else if (key == "iwasawa_residual") tol.iwasawa_residual = v;
        else if (key == "tridiagonal_tol") tol.tridiagonal_tol = v;
        else if (key == "gauge_match_tol") tol.gauge_match_tol = v;
        else if (key == "norming_tol") tol.norming_tol = v;
        else if (key == "hankel_structure_tol") tol.hankel_structure_tol = v;
        else if (key == "route_match_tol") tol.route_match_tol = v;
        else if (key == "sigma_minor_tol") tol.sigma_minor_tol = v;
        else if (key == "near_pole_tol") tol.near_pole_tol = v;
        else if (key == "exp_guard") tol.exp_guard = v;
        else if (key == "magnitude_guard") tol.magnitude_guard = v;
        else if (key == "log_space_threshold") tol.log_space_threshold = v;
        else if (key == "midpoint_fp_tol") tol.midpoint_fp_tol = v;
        else throw InvalidState("unknown tolerance key: " + key);
    }
    return tol;
}

ToleranceConfig load_tolerance_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidState("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return tolerance_config_from_json(buf.str());
}

} // namespace toda
