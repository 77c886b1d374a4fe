#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

// Flat INI-style run configuration; see README for the schema.
struct RunConfig {
    struct Physics {
        int d = 1;
        double s = 0.7;
        double alpha = 2.8;
    } physics;

    struct GridSpec {
        int n = 512;
        double L = 20.0;
    } grid;

    struct Time {
        double dt = 1e-3;
        double t_end = 1.0;
        int sample_every = 10;
    } time;

    enum class InitialKind { Gaussian, GroundStateMultiple, Snapshot };
    struct Initial {
        InitialKind kind = InitialKind::Gaussian;
        double amplitude = 1.0;
        double width = 1.0;
        std::vector<double> center;  // defaults to the origin
        double c = 1.0;              // ground-state multiple
        std::string path;            // snapshot path
    } initial;

    struct MonitorSpec {
        std::vector<double> R = {8.0};
        double q_exponent = 10.0;
        int virial_every = 0;
        int quad_order = 256;
    } monitors;

    struct Output {
        std::string directory = "out";
    } output;

    struct Run {
        std::uint64_t seed = 1;
        int threads = 1;
        double growth_threshold = 20.0;
    } run;

    struct Sweep {
        std::string parameter;        // e.g. "initial.c"
        std::vector<double> values;
        std::string command = "classify";
    } sweep;
};

// Parses the INI text; unknown keys and malformed values are collected and
// reported together. validate() re-checks the cross-field preconditions.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Returns every violated precondition (empty means valid).
std::vector<std::string> validate_config(const RunConfig& cfg);

PhysicsParams config_params(const RunConfig& cfg);
GridPtr config_grid(const RunConfig& cfg);

}  // namespace fnls
