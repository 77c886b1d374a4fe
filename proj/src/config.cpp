#include "fnls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> problems;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back("line " + std::to_string(lineno) + ": bad section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;

        try {
            if (full == "physics.d") cfg.physics.d = std::stoi(value);
            else if (full == "physics.s") cfg.physics.s = std::stod(value);
            else if (full == "physics.alpha") cfg.physics.alpha = std::stod(value);
            else if (full == "grid.n") cfg.grid.n = std::stoi(value);
            else if (full == "grid.L") cfg.grid.L = std::stod(value);
            else if (full == "time.dt") cfg.time.dt = std::stod(value);
            else if (full == "time.t_end") cfg.time.t_end = std::stod(value);
            else if (full == "time.sample_every") cfg.time.sample_every = std::stoi(value);
            else if (full == "initial.kind") {
                if (value == "gaussian") cfg.initial.kind = RunConfig::InitialKind::Gaussian;
                else if (value == "ground_state_multiple")
                    cfg.initial.kind = RunConfig::InitialKind::GroundStateMultiple;
                else if (value == "snapshot")
                    cfg.initial.kind = RunConfig::InitialKind::Snapshot;
                else problems.push_back("initial.kind: unknown kind '" + value + "'");
            } else if (full == "initial.amplitude") cfg.initial.amplitude = std::stod(value);
            else if (full == "initial.width") cfg.initial.width = std::stod(value);
            else if (full == "initial.center") cfg.initial.center = parse_list(value);
            else if (full == "initial.c") cfg.initial.c = std::stod(value);
            else if (full == "initial.path") cfg.initial.path = value;
            else if (full == "monitors.R") cfg.monitors.R = parse_list(value);
            else if (full == "monitors.q_exponent") cfg.monitors.q_exponent = std::stod(value);
            else if (full == "monitors.virial_every") cfg.monitors.virial_every = std::stoi(value);
            else if (full == "monitors.quad_order") cfg.monitors.quad_order = std::stoi(value);
            else if (full == "output.directory") cfg.output.directory = value;
            else if (full == "run.seed") cfg.run.seed = std::stoull(value);
            else if (full == "run.threads") cfg.run.threads = std::stoi(value);
            else if (full == "run.growth_threshold") cfg.run.growth_threshold = std::stod(value);
            else if (full == "sweep.parameter") cfg.sweep.parameter = value;
            else if (full == "sweep.values") cfg.sweep.values = parse_list(value);
            else if (full == "sweep.command") cfg.sweep.command = value;
            else problems.push_back("unknown key '" + full + "'");
        } catch (const std::exception&) {
            problems.push_back("bad value for '" + full + "': '" + value + "'");
        }
    }

    if (!problems.empty()) {
        std::string msg = "config parse errors:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw DomainError(msg);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw StructuralError("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> bad;
    if (cfg.physics.d < 1 || cfg.physics.d > 3)
        bad.push_back("physics.d must be 1, 2 or 3");
    if (!(cfg.physics.s > 0.5 && cfg.physics.s < 1.0))
        bad.push_back("physics.s must lie in (1/2, 1)");
    if (!(cfg.physics.alpha > 0.0)) bad.push_back("physics.alpha must be positive");
    if (cfg.grid.n < 16 || (cfg.grid.n & (cfg.grid.n - 1)) != 0)
        bad.push_back("grid.n must be a power of two >= 16");
    if (!(cfg.grid.L > 0.0)) bad.push_back("grid.L must be positive");
    if (!(cfg.time.dt > 0.0 && cfg.time.dt <= 1e-2))
        bad.push_back("time.dt must lie in (0, 1e-2]");
    if (!(cfg.time.t_end > 0.0)) bad.push_back("time.t_end must be positive");
    if (cfg.time.sample_every < 1) bad.push_back("time.sample_every must be >= 1");
    if (cfg.initial.kind == RunConfig::InitialKind::Gaussian &&
        !(cfg.initial.width > 0.0))
        bad.push_back("initial.width must be positive");
    if (cfg.initial.kind == RunConfig::InitialKind::Snapshot && cfg.initial.path.empty())
        bad.push_back("initial.path required for snapshot initial data");
    for (double R : cfg.monitors.R) {
        if (!(R > 1.0 && 2.0 * R < cfg.grid.L))
            bad.push_back("monitors.R entries must satisfy 1 < R and 2R < L");
    }
    if (cfg.monitors.virial_every > 0 && cfg.monitors.R.empty())
        bad.push_back("monitors.virial_every needs at least one R");
    if (!(cfg.monitors.q_exponent > cfg.physics.alpha + 2.0))
        bad.push_back("monitors.q_exponent must exceed alpha + 2");
    if (cfg.monitors.quad_order < 32) bad.push_back("monitors.quad_order must be >= 32");
    if (cfg.run.threads < 1) bad.push_back("run.threads must be >= 1");
    if (!(cfg.run.growth_threshold > 1.0))
        bad.push_back("run.growth_threshold must exceed 1");
    if (!cfg.sweep.parameter.empty() && cfg.sweep.parameter != "initial.c" &&
        cfg.sweep.parameter != "initial.amplitude" && cfg.sweep.parameter != "grid.L")
        bad.push_back("sweep.parameter must be initial.c, initial.amplitude or grid.L");
    if (!cfg.sweep.parameter.empty() && cfg.sweep.values.empty())
        bad.push_back("sweep.values must be nonempty when sweep.parameter is set");
    if (!cfg.sweep.command.empty() && cfg.sweep.command != "classify" &&
        cfg.sweep.command != "evolve")
        bad.push_back("sweep.command must be classify or evolve");
    return bad;
}

PhysicsParams config_params(const RunConfig& cfg) {
    return PhysicsParams(cfg.physics.d, cfg.physics.s, cfg.physics.alpha);
}

GridPtr config_grid(const RunConfig& cfg) {
    return make_grid(cfg.physics.d, cfg.grid.n, cfg.grid.L);
}

}  // namespace fnls
