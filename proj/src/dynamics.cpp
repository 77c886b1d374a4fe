#include "fnls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fnls/errors.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

StrangStepper::StrangStepper(GridPtr grid, const PhysicsParams& params, double dt,
                             StrangOptions options)
    : grid_(std::move(grid)), params_(params), dt_(dt), options_(options) {
    if (!(dt > 0.0)) throw DomainError("StrangStepper: dt must be positive");
    const Grid& g = *grid_;
    const auto& k2 = g.freq2();
    linear_phase_.resize(g.size());
    for (std::size_t i = 0; i < k2.size(); ++i) {
        const double phase = -std::pow(k2[i], params_.s) * dt_;
        linear_phase_[i] = cplx(std::cos(phase), std::sin(phase));
    }
    keep_mask_.assign(g.size(), true);
    const int n = g.n();
    const int cutoff = n / 3;
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        std::size_t rem = flat;
        for (int a = 0; a < g.dim(); ++a) {
            const int i = static_cast<int>(rem % n);
            rem /= n;
            const int k = (i < n / 2) ? i : i - n;
            if (std::abs(k) > cutoff) {
                keep_mask_[flat] = false;
                break;
            }
        }
    }
}

Field StrangStepper::step(const Field& u, double* alias_tail) const {
    if (!(u.grid() == *grid_))
        throw StructuralError("StrangStepper: field grid mismatch");
    const Grid& g = *grid_;
    const double half = 0.5 * dt_;
    const double a = params_.alpha;

    std::vector<cplx> v = u.values();
    if (options_.apply_nonlinear) {
        for (auto& c : v) {
            const double phase = std::pow(std::abs(c), a) * half;
            c *= cplx(std::cos(phase), std::sin(phase));
        }
    }

    double removed = 0.0, total = 0.0;
    std::vector<cplx> spec = dft_forward(g, v);
    if (options_.dealias) {
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const double m = std::norm(spec[i]);
            total += m;
            if (!keep_mask_[i]) {
                removed += m;
                spec[i] = cplx{0.0, 0.0};
            }
        }
    }
    if (options_.apply_linear)
        for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= linear_phase_[i];
    v = dft_backward(g, spec);

    if (options_.apply_nonlinear) {
        for (auto& c : v) {
            const double phase = std::pow(std::abs(c), a) * half;
            c *= cplx(std::cos(phase), std::sin(phase));
        }
    }

    spec = dft_forward(g, v);
    if (options_.dealias) {
        for (std::size_t i = 0; i < spec.size(); ++i) {
            if (!keep_mask_[i]) {
                removed += std::norm(spec[i]);
                spec[i] = cplx{0.0, 0.0};
            }
        }
    }
    if (alias_tail) *alias_tail = total > 0.0 ? removed / total : 0.0;

    Field out = Field::from_spectrum(u.grid_ptr(), std::move(spec));
    for (const auto& c : out.values())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw IntegrationError("strang_step: non-finite state at dt = " +
                                   std::to_string(dt_));
    return out;
}

Field strang_step(const Field& u, double dt, const PhysicsParams& params,
                  double* alias_tail, StrangOptions options) {
    return StrangStepper(u.grid_ptr(), params, dt, options).step(u, alias_tail);
}

const char* to_string(BlowupReport::Stop s) {
    switch (s) {
        case BlowupReport::Stop::GradientGrowth: return "gradient_growth";
        case BlowupReport::Stop::DriftBreach: return "drift_breach";
        case BlowupReport::Stop::TEndReached: return "t_end_reached";
    }
    return "unknown";
}

namespace {

double spectral_mass(const Field& f) {
    const auto& spec = f.spectrum();
    double acc = 0.0;
    for (const auto& c : spec) acc += std::norm(c);
    return f.grid().box_volume() * acc;
}

double spectral_hs(const Field& f, double s) {
    const auto& spec = f.spectrum();
    const auto& k2 = f.grid().freq2();
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        acc += std::pow(k2[i], s) * std::norm(spec[i]);
    return std::sqrt(f.grid().box_volume() * acc);
}

}  // namespace

EvolveResult evolve(const Field& u0, const PhysicsParams& params, double dt,
                    double t_end, int sample_every, const Monitors& monitors,
                    double growth_threshold, double drift_threshold) {
    if (!(dt > 0.0 && dt <= 1e-2))
        throw DomainError("evolve: dt must lie in (0, 1e-2]");
    if (!(t_end > 0.0)) throw DomainError("evolve: t_end must be positive");
    if (sample_every < 1) throw DomainError("evolve: sample_every must be >= 1");
    if (monitors.virial_every > 0 && monitors.quad == nullptr)
        throw DomainError("evolve: virial monitor requires a quadrature");

    const GridPtr grid = u0.grid_ptr();
    std::vector<Weight> psi_weights;
    for (double R : monitors.exterior_radii) psi_weights.push_back(make_psi(grid, R));
    std::optional<Weight> phi_weight;
    if (monitors.virial_every > 0 && !monitors.exterior_radii.empty())
        phi_weight = make_phi(grid, monitors.exterior_radii.front());

    StrangStepper stepper(grid, params, dt);
    const double cell = grid->cell_volume();
    const auto& r2 = grid->radius2();

    EvolveResult result{{}, {}, u0};
    Field u = u0;
    const double mass0 = spectral_mass(u);
    const double hs0 = spectral_hs(u, params.s);
    const long nsteps = std::lround(t_end / dt);

    double alias_max = 0.0;
    double drift = 0.0;
    double growth = hs0 > 0.0 ? 1.0 : 0.0;
    double t = 0.0;
    long step_index = 0;

    auto sample = [&](double time) {
        TrajectoryRecord rec;
        rec.t = time;
        rec.conserved = conserved_report(u, params);
        for (std::size_t ri = 0; ri < psi_weights.size(); ++ri) {
            const double R = monitors.exterior_radii[ri];
            const double rr = R * R;
            double sharp = 0.0, vpsi = 0.0;
            const auto& vals = u.values();
            const auto& psi = psi_weights[ri].value;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                const double m = std::norm(vals[i]);
                if (r2[i] >= rr) sharp += m;
                vpsi += psi[i] * m;
            }
            rec.exterior_mass.push_back(cell * sharp);
            rec.v_psi.push_back(cell * vpsi);
        }
        if (phi_weight && monitors.virial_every > 0 &&
            (result.records.size() % static_cast<std::size_t>(monitors.virial_every)) == 0)
            rec.virial = virial_actions(u, *phi_weight, params, *monitors.quad);
        rec.mass_drift = drift;
        rec.alias_tail = alias_max;
        rec.support_flag = u.mass_fraction_outside(grid->half_length() / 2.0) > 1e-8;
        result.records.push_back(std::move(rec));
        alias_max = 0.0;
    };

    sample(0.0);

    BlowupReport& rep = result.report;
    rep.stopping_reason = BlowupReport::Stop::TEndReached;
    for (step_index = 1; step_index <= nsteps; ++step_index) {
        double tail = 0.0;
        u = stepper.step(u, &tail);
        alias_max = std::max(alias_max, tail);
        t = dt * step_index;

        const double mass = spectral_mass(u);
        drift = std::abs(mass - mass0) / mass0;
        const double hs = spectral_hs(u, params.s);
        growth = hs0 > 0.0 ? hs / hs0 : 0.0;

        const bool at_sample = (step_index % sample_every == 0) || step_index == nsteps;
        if (growth >= growth_threshold) {
            sample(t);
            rep.triggered = true;
            rep.stopping_reason = BlowupReport::Stop::GradientGrowth;
            break;
        }
        if (drift > drift_threshold) {
            sample(t);
            rep.stopping_reason = BlowupReport::Stop::DriftBreach;
            break;
        }
        if (at_sample) sample(t);
    }

    rep.t_star_estimate = t;
    rep.growth_factor = growth;

    // Best-effort growth-law fit over the longest trailing window of strictly
    // increasing samples.
    {
        std::vector<double> ts, hss;
        for (const auto& r : result.records) {
            if (r.t <= 0.0) continue;
            ts.push_back(r.t);
            hss.push_back(r.conserved.hs_norm);
        }
        std::size_t start = ts.size();
        while (start > 1 && hss[start - 1] > hss[start - 2]) --start;
        if (start > 0) --start;
        if (ts.size() - start >= 10) {
            try {
                rep.fit_exponent = growth_exponent_fit(
                    std::span<const double>(ts).subspan(start),
                    std::span<const double>(hss).subspan(start));
            } catch (const DomainError&) {
            }
        }
    }

    result.final_state = std::move(u);
    return result;
}

ExteriorMass exterior_mass(const Field& u, double R) {
    const Grid& g = u.grid();
    if (!(R < g.half_length()))
        throw DomainError("exterior_mass: R must stay below the half length");
    const Weight psi = make_psi(u.grid_ptr(), R);
    const auto& vals = u.values();
    const auto& r2 = g.radius2();
    const double rr = R * R;
    double sharp = 0.0, vpsi = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double m = std::norm(vals[i]);
        if (r2[i] >= rr) sharp += m;
        vpsi += psi.value[i] * m;
    }
    return {g.cell_volume() * sharp, g.cell_volume() * vpsi};
}

VirialEstimateRecord virial_estimate_monitor(const Field& u, double R,
                                             const PhysicsParams& params,
                                             const MQuadrature& quad,
                                             double q_exponent) {
    const double a = params.alpha;
    if (!(q_exponent > a + 2.0))
        throw DomainError("virial_estimate_monitor: q exponent must exceed alpha+2");

    VirialEstimateRecord rec;
    rec.eta = (1.0 / (a + 2.0) - 1.0 / q_exponent) / (0.5 - 1.0 / q_exponent);

    const Weight phi = make_phi(u.grid_ptr(), R);
    const VirialReport vr = virial_actions(u, phi, params, quad);
    rec.lhs = vr.dM_dt_rhs;

    const ConservedReport cons = conserved_report(u, params);
    rec.k16 = 16.0 * cons.K;

    const double ext2 = exterior_mass(u, R).indicator_integral;
    rec.remainder_r2 = ext2 / (R * R);
    rec.remainder_eta = std::pow(std::sqrt(ext2), rec.eta * (a + 2.0));

    const double denom = rec.remainder_r2 + rec.remainder_eta;
    const double excess = rec.lhs - rec.k16;
    rec.c_required = (excess <= 0.0) ? 0.0 : excess / std::max(denom, 1e-300);
    return rec;
}

double growth_exponent_fit(std::span<const double> t, std::span<const double> hs) {
    if (t.size() != hs.size())
        throw DomainError("growth_exponent_fit: size mismatch");
    if (t.size() < 10)
        throw DomainError("growth_exponent_fit: need at least 10 samples");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(hs[i] > 0.0))
            throw DomainError("growth_exponent_fit: samples must be positive");
        if (i > 0 && !(hs[i] > hs[i - 1]))
            throw DomainError("growth_exponent_fit: window not strictly increasing");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double x = std::log(t[i]);
        const double y = std::log(hs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fnls
