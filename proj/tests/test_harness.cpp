#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/harness.hpp"
#include "fnls/snapshot.hpp"
#include "fnls/spectral.hpp"

using namespace fnls;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("fnls_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const char* kSmallConfig = R"(
[physics]
d = 1
s = 0.7
alpha = 2.8

[grid]
n = 128
L = 12.0

[time]
dt = 1e-3
t_end = 0.05
sample_every = 10

[initial]
kind = gaussian
amplitude = 1.0
width = 1.0

[monitors]
R = 4.0
q_exponent = 10

[run]
seed = 7
)";

}  // namespace

TEST_CASE("config parsing and validation") {
    const RunConfig cfg = parse_config(kSmallConfig);
    CHECK(cfg.physics.d == 1);
    CHECK(cfg.physics.s == doctest::Approx(0.7));
    CHECK(cfg.grid.n == 128);
    CHECK(cfg.monitors.R == std::vector<double>{4.0});
    CHECK(validate_config(cfg).empty());

    CHECK_THROWS_AS(parse_config("[physics]\nbogus = 1\n"), DomainError);
    CHECK_THROWS_AS(parse_config("[physics]\ns = not_a_number\n"), DomainError);

    // every violated precondition is listed
    RunConfig bad = cfg;
    bad.time.dt = 0.0;
    bad.grid.n = 100;
    bad.monitors.R = {0.5};
    const auto problems = validate_config(bad);
    CHECK(problems.size() == 3);
}

TEST_CASE("snapshot round trip") {
    auto grid = make_grid(2, 32, 6.0);
    const PhysicsParams p(2, 0.75, 2.0);
    std::vector<cplx> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = cplx(std::sin(0.1 * i), std::cos(0.2 * i));
    const Field f(grid, v);

    const fs::path dir = temp_dir("snapshot");
    const std::string path = (dir / "f.fnls").string();
    save_snapshot(path, f, p);
    const Snapshot snap = load_snapshot(path);
    CHECK(snap.field.grid() == f.grid());
    CHECK(snap.params.s == doctest::Approx(0.75));
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(snap.field.values()[i] == f.values()[i]);

    // corrupted magic is rejected
    {
        std::ofstream os(dir / "bad.fnls", std::ios::binary);
        os << "NOPE";
    }
    CHECK_THROWS_AS(load_snapshot((dir / "bad.fnls").string()), StructuralError);
}

TEST_CASE("evolve command writes diagnostics and blowup report") {
    const RunConfig cfg = parse_config(kSmallConfig);
    const fs::path dir = temp_dir("evolve");
    CHECK(run_command("evolve", cfg, dir, 1) == 0);
    CHECK(fs::exists(dir / "diagnostics.csv"));
    CHECK(fs::exists(dir / "blowup.json"));

    const std::string csv = slurp(dir / "diagnostics.csv");
    CHECK(csv.find("t,mass,energy,K,hs_norm,l_alpha2_norm,exterior_mass_R,"
                   "V_psi,M_phi,dM_dt_rhs,mass_drift,alias_tail") == 0);

    const json rep = json::parse(slurp(dir / "blowup.json"));
    CHECK(rep["stopping_reason"] == "t_end_reached");
    CHECK(rep["triggered"] == false);
}

TEST_CASE("evolve artifacts are byte-identical across runs") {
    const RunConfig cfg = parse_config(kSmallConfig);
    const fs::path d1 = temp_dir("det1");
    const fs::path d2 = temp_dir("det2");
    REQUIRE(run_command("evolve", cfg, d1, 1) == 0);
    REQUIRE(run_command("evolve", cfg, d2, 1) == 0);
    CHECK(slurp(d1 / "diagnostics.csv") == slurp(d2 / "diagnostics.csv"));
    CHECK(slurp(d1 / "blowup.json") == slurp(d2 / "blowup.json"));
}

TEST_CASE("validation failures exit nonzero with error json") {
    RunConfig cfg = parse_config(kSmallConfig);
    cfg.time.dt = 0.0;
    const fs::path dir = temp_dir("badtime");
    CHECK(run_command("evolve", cfg, dir, 1) == 2);
    const json err = json::parse(slurp(dir / "error.json"));
    CHECK(err.contains("error"));
    CHECK(err["error"].get<std::string>().find("time.dt") != std::string::npos);
}

TEST_CASE("verify command produces a passing residual report") {
    RunConfig cfg = parse_config(kSmallConfig);
    cfg.grid.n = 256;
    cfg.grid.L = 15.0;
    cfg.monitors.R = {4.0, 6.0};
    const fs::path dir = temp_dir("verify");
    CHECK(run_command("verify", cfg, dir, 1) == 0);
    const json rep = json::parse(slurp(dir / "verify.json"));
    CHECK(rep["pass"] == true);
    CHECK(rep["symbol_oracle"]["pass"] == true);
    CHECK(rep["auxiliary_identity"]["pass"] == true);
}

TEST_CASE("classify command on a ground-state multiple") {
    RunConfig cfg = parse_config(kSmallConfig);
    cfg.physics.s = 0.6;
    cfg.physics.alpha = 3.0;
    cfg.grid.n = 512;
    cfg.grid.L = 32.0;
    cfg.initial.kind = RunConfig::InitialKind::GroundStateMultiple;
    cfg.initial.c = 1.2;
    const fs::path dir = temp_dir("classify");
    CHECK(run_command("classify", cfg, dir, 1) == 0);
    const json rep = json::parse(slurp(dir / "verdict.json"));
    CHECK(rep["verdict"] == "criterion_met");
    CHECK(rep["checks"]["intercritical_gradient_product"] == true);
    CHECK(rep["provenance"].contains("gradient_product"));
}

TEST_CASE("ground-state command saves a loadable profile") {
    RunConfig cfg = parse_config(kSmallConfig);
    cfg.physics.s = 0.6;
    cfg.physics.alpha = 3.0;
    cfg.grid.n = 512;
    cfg.grid.L = 32.0;
    const fs::path dir = temp_dir("gs");
    CHECK(run_command("ground-state", cfg, dir, 1) == 0);
    const Snapshot snap = load_snapshot((dir / "profile.fnls").string());
    CHECK(norm_lp(snap.field, 2.0) > 0.0);
    const json rep = json::parse(slurp(dir / "thresholds.json"));
    CHECK(rep["profile"]["converged"] == true);
    CHECK(rep["sigma"] == doctest::Approx(5.0));
}

TEST_CASE("sweep fans out and indexes completed runs") {
    RunConfig cfg = parse_config(kSmallConfig);
    cfg.physics.s = 0.6;
    cfg.physics.alpha = 3.0;
    cfg.grid.n = 256;
    cfg.grid.L = 24.0;
    cfg.initial.kind = RunConfig::InitialKind::GroundStateMultiple;
    cfg.sweep.parameter = "initial.c";
    cfg.sweep.values = {0.8, 1.2};
    cfg.sweep.command = "classify";
    const fs::path dir = temp_dir("sweep");
    CHECK(run_command("sweep", cfg, dir, 2) == 0);
    const json index = json::parse(slurp(dir / "index.json"));
    REQUIRE(index["runs"].size() == 2);
    for (const auto& run : index["runs"]) CHECK(run["completed"] == true);
    const json v0 = json::parse(slurp(dir / "run_000" / "verdict.json"));
    const json v1 = json::parse(slurp(dir / "run_001" / "verdict.json"));
    CHECK(v0["verdict"] == "not_covered");
    CHECK(v1["verdict"] == "criterion_met");
}
