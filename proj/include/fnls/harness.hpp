#pragma once

#include <filesystem>
#include <string>

#include "fnls/config.hpp"
#include "fnls/field.hpp"

namespace fnls {

// Build the configured initial state (gaussian / ground-state multiple /
// snapshot) on the configured grid.
Field make_initial(const RunConfig& cfg, GridPtr grid, const PhysicsParams& params);

// Command entry points shared by the CLI and the tests. Each writes its
// artifacts into out_dir and returns the process exit status (0 = success).
// Failures also produce error.json in out_dir when possible.
int run_ground_state(const RunConfig& cfg, const std::filesystem::path& out_dir);
int run_evolve(const RunConfig& cfg, const std::filesystem::path& out_dir);
int run_verify(const RunConfig& cfg, const std::filesystem::path& out_dir);
int run_classify(const RunConfig& cfg, const std::filesystem::path& out_dir);
int run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, int threads);

int run_command(const std::string& command, const RunConfig& cfg,
                const std::filesystem::path& out_dir, int threads);

}  // namespace fnls
