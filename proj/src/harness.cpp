#include "fnls/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <thread>

#include "json.hpp"

#include "fnls/balakrishnan.hpp"
#include "fnls/criteria.hpp"
#include "fnls/cutoffs.hpp"
#include "fnls/dynamics.hpp"
#include "fnls/errors.hpp"
#include "fnls/ground_states.hpp"
#include "fnls/invariants.hpp"
#include "fnls/quadrature.hpp"
#include "fnls/snapshot.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    os << j.dump(2) << "\n";
}

void write_error(const fs::path& out_dir, const std::string& what) {
    json j;
    j["error"] = what;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    write_json(out_dir / "error.json", j);
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

json conserved_json(const ConservedReport& c) {
    return json{{"mass", c.mass},
                {"energy", c.energy},
                {"K", c.K},
                {"hs_norm", c.hs_norm},
                {"l_alpha2_norm", c.l_alpha2_norm}};
}

// Seeded band-limited random field: modes |k| <= n/8 per axis, amplitudes
// damped by 1/(1+|xi|^2).
Field random_band_limited(GridPtr grid, std::mt19937_64& rng) {
    const Grid& g = *grid;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> spec(g.size(), cplx{0.0, 0.0});
    const int n = g.n();
    const int band = n / 8;
    const auto& k2 = g.freq2();
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        std::size_t rem = flat;
        bool keep = true;
        for (int a = 0; a < g.dim(); ++a) {
            const int i = static_cast<int>(rem % n);
            rem /= n;
            const int k = (i < n / 2) ? i : i - n;
            if (std::abs(k) > band) { keep = false; break; }
        }
        if (!keep) continue;
        spec[flat] = cplx(gauss(rng), gauss(rng)) / (1.0 + k2[flat]);
    }
    return Field::from_spectrum(std::move(grid), std::move(spec));
}

GroundStateSolution config_ground_state(GridPtr grid,
                                        const PhysicsParams& params) {
    if (params.criticality() == Criticality::EnergyCritical)
        return make_W(std::move(grid), params);
    return solve_Q(std::move(grid), params);
}

json threshold_json(const ThresholdData& t) {
    json j;
    j["regime"] = to_string(t.regime);
    j["sharp_constant"] = t.sharp_constant;
    j["sharp_constant_alt"] = t.sharp_constant_alt;
    j["x0"] = t.x0;
    j["x0_direct"] = t.x0_direct;
    j["energy_threshold"] = t.energy_threshold;
    if (t.regime == Criticality::Intercritical) j["sigma"] = t.sigma;
    j["gs_hdot2"] = t.gs_hdot2;
    j["gs_mass"] = t.gs_mass;
    return j;
}

ThresholdData config_thresholds(const GroundStateSolution& gs) {
    if (gs.params.criticality() == Criticality::EnergyCritical)
        return energy_critical_thresholds(gs);
    return intercritical_thresholds(gs);
}

}  // namespace

Field make_initial(const RunConfig& cfg, GridPtr grid, const PhysicsParams& params) {
    switch (cfg.initial.kind) {
        case RunConfig::InitialKind::Gaussian: {
            const Grid& g = *grid;
            std::vector<double> center(g.dim(), 0.0);
            for (std::size_t a = 0; a < cfg.initial.center.size() &&
                                    a < center.size(); ++a)
                center[a] = cfg.initial.center[a];
            const double w2 = cfg.initial.width * cfg.initial.width;
            std::vector<cplx> v(g.size());
            const auto& coords = g.axis_coords();
            const int n = g.n();
            for (std::size_t flat = 0; flat < g.size(); ++flat) {
                std::size_t rem = flat;
                double r2 = 0.0;
                for (int a = g.dim() - 1; a >= 0; --a) {
                    const double dx = coords[rem % n] - center[a];
                    rem /= n;
                    r2 += dx * dx;
                }
                v[flat] = cfg.initial.amplitude * std::exp(-r2 / w2);
            }
            return Field(std::move(grid), std::move(v));
        }
        case RunConfig::InitialKind::GroundStateMultiple: {
            GroundStateSolution gs = config_ground_state(grid, params);
            std::vector<cplx> v = gs.profile.values();
            for (auto& c : v) c *= cfg.initial.c;
            return Field(std::move(grid), std::move(v));
        }
        case RunConfig::InitialKind::Snapshot: {
            Snapshot snap = load_snapshot(cfg.initial.path);
            if (!(snap.field.grid() == *grid))
                throw StructuralError("snapshot grid does not match the configured grid");
            if (std::abs(snap.params.s - params.s) > 1e-12 ||
                std::abs(snap.params.alpha - params.alpha) > 1e-12)
                throw StructuralError("snapshot physics parameters do not match config");
            return snap.field;
        }
    }
    throw DomainError("make_initial: unknown initial kind");
}

int run_ground_state(const RunConfig& cfg, const fs::path& out_dir) {
    try {
        fs::create_directories(out_dir);
        const PhysicsParams params = config_params(cfg);
        GridPtr grid = config_grid(cfg);
        GroundStateSolution gs = config_ground_state(grid, params);
        save_snapshot((out_dir / "profile.fnls").string(), gs.profile, params);

        const ThresholdData t = config_thresholds(gs);
        json j = threshold_json(t);
        j["profile"] = {{"l2_norm", gs.l2_norm},
                        {"hdot_s_norm", gs.hdot_s_norm},
                        {"nonlinear_norm", gs.nonlinear_norm},
                        {"pohozaev_residual_1", gs.pohozaev_residual_1},
                        {"pohozaev_residual_2", gs.pohozaev_residual_2},
                        {"iterations", gs.iterations},
                        {"converged", gs.converged}};
        write_json(out_dir / "thresholds.json", j);
        return 0;
    } catch (const std::exception& e) {
        write_error(out_dir, e.what());
        return 1;
    }
}

int run_evolve(const RunConfig& cfg, const fs::path& out_dir) {
    try {
        fs::create_directories(out_dir);
        const PhysicsParams params = config_params(cfg);
        GridPtr grid = config_grid(cfg);
        const Field u0 = make_initial(cfg, grid, params);

        MQuadrature quad = MQuadrature::build(params.s, cfg.monitors.quad_order);
        Monitors mon;
        mon.exterior_radii = cfg.monitors.R;
        mon.virial_every = cfg.monitors.virial_every;
        mon.quad = &quad;

        EvolveResult res = evolve(u0, params, cfg.time.dt, cfg.time.t_end,
                                  cfg.time.sample_every, mon,
                                  cfg.run.growth_threshold);

        std::ofstream csv(out_dir / "diagnostics.csv");
        csv << "t,mass,energy,K,hs_norm,l_alpha2_norm,exterior_mass_R,V_psi,"
               "M_phi,dM_dt_rhs,mass_drift,alias_tail\n";
        for (const auto& r : res.records) {
            const double ext = r.exterior_mass.empty() ? 0.0 : r.exterior_mass[0];
            const double vpsi = r.v_psi.empty() ? 0.0 : r.v_psi[0];
            const double mphi = r.virial ? r.virial->M_value :
                                std::numeric_limits<double>::quiet_NaN();
            const double dm = r.virial ? r.virial->dM_dt_rhs :
                              std::numeric_limits<double>::quiet_NaN();
            csv << fmt17(r.t) << ',' << fmt17(r.conserved.mass) << ','
                << fmt17(r.conserved.energy) << ',' << fmt17(r.conserved.K) << ','
                << fmt17(r.conserved.hs_norm) << ','
                << fmt17(r.conserved.l_alpha2_norm) << ',' << fmt17(ext) << ','
                << fmt17(vpsi) << ',' << fmt17(mphi) << ',' << fmt17(dm) << ','
                << fmt17(r.mass_drift) << ',' << fmt17(r.alias_tail) << "\n";
        }
        csv.close();

        json j;
        j["triggered"] = res.report.triggered;
        j["t_star_estimate"] = res.report.t_star_estimate;
        j["growth_factor"] = res.report.growth_factor;
        j["stopping_reason"] = to_string(res.report.stopping_reason);
        if (res.report.fit_exponent) j["fit_exponent"] = *res.report.fit_exponent;
        j["final"] = conserved_json(res.records.back().conserved);
        write_json(out_dir / "blowup.json", j);
        return 0;
    } catch (const std::exception& e) {
        write_error(out_dir, e.what());
        return 1;
    }
}

int run_verify(const RunConfig& cfg, const fs::path& out_dir) {
    try {
        fs::create_directories(out_dir);
        const PhysicsParams params = config_params(cfg);
        GridPtr grid = config_grid(cfg);
        std::mt19937_64 rng(cfg.run.seed);
        bool all_pass = true;
        json j;

        // quadrature symbol oracle
        MQuadrature quad = MQuadrature::build(params.s, cfg.monitors.quad_order);
        {
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                const double x = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
                worst = std::max(worst, std::abs(quad.symbol_value(x) -
                                                 std::pow(x, params.s)) /
                                            std::pow(x, params.s));
            }
            j["symbol_oracle"] = {{"worst_relative_error", worst},
                                  {"threshold", 1e-8},
                                  {"pass", worst <= 1e-8}};
            all_pass = all_pass && worst <= 1e-8;
        }

        // auxiliary identity on seeded band-limited fields
        {
            double worst = 0.0;
            for (int trial = 0; trial < 5; ++trial) {
                const Field u = random_band_limited(grid, rng);
                worst = std::max(worst,
                                 auxiliary_identity_check(u, params, quad).residual);
            }
            j["auxiliary_identity"] = {{"worst_residual", worst},
                                       {"threshold", 1e-6},
                                       {"pass", worst <= 1e-6}};
            all_pass = all_pass && worst <= 1e-6;
        }

        // weight properties and lemma ratios per configured radius
        {
            json weights = json::array();
            for (double R : cfg.monitors.R) {
                const Weight phi = make_phi(grid, R);
                const WeightPropertyReport rep = verify_weight_properties(phi);
                const bool pass = rep.min_second_derivative_gap >= -1e-12 &&
                                  rep.min_slope_gap >= -1e-12 &&
                                  rep.min_laplacian_gap >= -1e-12 &&
                                  rep.support_violation_grad <= 1e-14 &&
                                  rep.support_violation_high <= 1e-14;
                json w = {{"R", R},
                          {"min_second_derivative_gap", rep.min_second_derivative_gap},
                          {"min_slope_gap", rep.min_slope_gap},
                          {"min_laplacian_gap", rep.min_laplacian_gap},
                          {"support_violation_grad", rep.support_violation_grad},
                          {"support_violation_high", rep.support_violation_high},
                          {"pass", pass}};
                for (int k = 0; k < 5; ++k)
                    w["scaled_sup_norms"].push_back(rep.scaled_sup_norms[k]);
                weights.push_back(w);
                all_pass = all_pass && pass;
            }
            j["weight_properties"] = weights;
        }

        // dV assembly realness and exterior-mass comparison on a random field
        {
            const Field u = random_band_limited(grid, rng);
            const double R = cfg.monitors.R.empty() ? 4.0 : cfg.monitors.R.front();
            const Weight psi = make_psi(grid, R);
            const VirialReport vr = virial_actions(u, psi, params, quad);
            const ExteriorMass em = exterior_mass(u, R);
            const bool realness = vr.dV_imag_residual <= 1e-6;
            const bool ordering = em.indicator_integral <= em.v_psi * (1.0 + 1e-12);
            j["dV_realness"] = {{"imag_residual", vr.dV_imag_residual},
                                {"threshold", 1e-6},
                                {"pass", realness}};
            j["exterior_mass_ordering"] = {{"indicator", em.indicator_integral},
                                           {"v_psi", em.v_psi},
                                           {"pass", ordering}};
            all_pass = all_pass && realness && ordering;

            const LemmaBoundReport lb = lemma_bound_report(u, psi, params, quad);
            auto entry = [](const LemmaBoundReport::Entry& e) {
                return json{{"lhs", e.lhs}, {"rhs", e.rhs}, {"ratio", e.ratio}};
            };
            const bool finite = std::isfinite(lb.gradient_pairing.ratio) &&
                                std::isfinite(lb.laplacian_weighted.ratio) &&
                                std::isfinite(lb.mixed_pairing.ratio) &&
                                std::isfinite(lb.bilaplacian_weighted.ratio) &&
                                std::isfinite(lb.virial_rate.ratio);
            j["lemma_bounds"] = {{"gradient_pairing", entry(lb.gradient_pairing)},
                                 {"laplacian_weighted", entry(lb.laplacian_weighted)},
                                 {"mixed_pairing", entry(lb.mixed_pairing)},
                                 {"bilaplacian_weighted", entry(lb.bilaplacian_weighted)},
                                 {"virial_rate", entry(lb.virial_rate)},
                                 {"pass", finite}};
            all_pass = all_pass && finite;
        }

        j["pass"] = all_pass;
        write_json(out_dir / "verify.json", j);
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        write_error(out_dir, e.what());
        return 1;
    }
}

int run_classify(const RunConfig& cfg, const fs::path& out_dir) {
    try {
        fs::create_directories(out_dir);
        const PhysicsParams params = config_params(cfg);
        GridPtr grid = config_grid(cfg);

        GroundStateSolution gs = config_ground_state(grid, params);
        const ThresholdData t = config_thresholds(gs);
        const Field u0 = make_initial(cfg, grid, params);
        const CriteriaVerdict v = classify(u0, params, t);

        json j;
        j["class"] = to_string(v.cls);
        j["verdict"] = v.criterion_met ? "criterion_met" : "not_covered";
        j["verdict_label"] = v.criterion_met ? "criterion met (analytic)"
                                             : "not covered";
        j["checks"]["E_negative"] = v.e_negative;
        if (v.intercritical_energy_product)
            j["checks"]["intercritical_energy_product"] = *v.intercritical_energy_product;
        if (v.intercritical_gradient_product)
            j["checks"]["intercritical_gradient_product"] =
                *v.intercritical_gradient_product;
        if (v.energy_critical_energy)
            j["checks"]["energy_critical_energy"] = *v.energy_critical_energy;
        if (v.energy_critical_gradient)
            j["checks"]["energy_critical_gradient"] = *v.energy_critical_gradient;
        if (v.delta) j["delta"] = *v.delta;
        j["regularity_condition"] = v.regularity_condition;
        j["provenance"] = v.provenance;
        j["thresholds"] = threshold_json(t);
        write_json(out_dir / "verdict.json", j);
        return 0;
    } catch (const std::exception& e) {
        write_error(out_dir, e.what());
        return 1;
    }
}

int run_sweep(const RunConfig& cfg, const fs::path& out_dir, int threads) {
    try {
        fs::create_directories(out_dir);
        if (cfg.sweep.parameter.empty() || cfg.sweep.values.empty())
            throw DomainError("sweep: sweep.parameter and sweep.values required");

        struct Task {
            std::string name;
            RunConfig cfg;
        };
        std::vector<Task> tasks;
        for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
            RunConfig sub = cfg;
            const double v = cfg.sweep.values[i];
            if (cfg.sweep.parameter == "initial.c") sub.initial.c = v;
            else if (cfg.sweep.parameter == "initial.amplitude") sub.initial.amplitude = v;
            else if (cfg.sweep.parameter == "grid.L") sub.grid.L = v;
            else throw DomainError("sweep: unsupported parameter " + cfg.sweep.parameter);
            char name[64];
            std::snprintf(name, sizeof name, "run_%03zu", i);
            tasks.push_back({name, std::move(sub)});
        }

        std::atomic<std::size_t> next{0};
        std::atomic<int> failures{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                const int rc =
                    tasks[i].cfg.sweep.command == "evolve"
                        ? run_evolve(tasks[i].cfg, out_dir / tasks[i].name)
                        : run_classify(tasks[i].cfg, out_dir / tasks[i].name);
                if (rc != 0) failures.fetch_add(1);
            }
        };
        std::vector<std::thread> pool;
        const int k = std::max(1, threads);
        for (int i = 0; i < k; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        json index;
        index["parameter"] = cfg.sweep.parameter;
        index["command"] = cfg.sweep.command;
        json runs = json::array();
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            runs.push_back({{"name", tasks[i].name},
                            {"value", cfg.sweep.values[i]},
                            {"completed",
                             !fs::exists(out_dir / tasks[i].name / "error.json")}});
        }
        index["runs"] = runs;
        write_json(out_dir / "index.json", index);
        return failures.load() == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        write_error(out_dir, e.what());
        return 1;
    }
}

int run_command(const std::string& command, const RunConfig& cfg,
                const fs::path& out_dir, int threads) {
    const auto bad = validate_config(cfg);
    if (!bad.empty()) {
        std::string msg = "config validation failed:";
        for (const auto& b : bad) msg += "\n  - " + b;
        write_error(out_dir, msg);
        return 2;
    }
    if (command == "ground-state") return run_ground_state(cfg, out_dir);
    if (command == "evolve") return run_evolve(cfg, out_dir);
    if (command == "verify") return run_verify(cfg, out_dir);
    if (command == "classify") return run_classify(cfg, out_dir);
    if (command == "sweep") return run_sweep(cfg, out_dir, threads);
    write_error(out_dir, "unknown command " + command);
    return 2;
}

}  // namespace fnls
