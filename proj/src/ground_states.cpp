#include "fnls/ground_states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fnls/errors.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

namespace {

// Average over the reflection group j -> (n-j) mod n per axis plus axis
// permutations; pins the profile to the origin and damps asymmetric drift.
std::vector<cplx> symmetrize(const Grid& g, const std::vector<cplx>& v) {
    const int n = g.n();
    const int d = g.dim();
    std::vector<cplx> out = v;
    std::vector<cplx> tmp(v.size());
    for (int axis = 0; axis < d; ++axis) {
        std::size_t stride = 1;
        for (int a = d - 1; a > axis; --a) stride *= n;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const int ji = static_cast<int>((i / stride) % n);
            const int jr = (n - ji) % n;
            const std::size_t mirror = i + static_cast<std::size_t>(jr - ji) * stride;
            tmp[i] = 0.5 * (out[i] + out[mirror]);
        }
        out.swap(tmp);
    }
    if (d == 2) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::size_t j = i / n, k = i % n;
            tmp[i] = 0.5 * (out[i] + out[k * n + j]);
        }
        out.swap(tmp);
    } else if (d == 3) {
        const std::size_t nn = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::size_t a = i / (nn * nn), b = (i / nn) % nn, c = i % nn;
            cplx acc = out[(a * nn + b) * nn + c] + out[(a * nn + c) * nn + b] +
                       out[(b * nn + a) * nn + c] + out[(b * nn + c) * nn + a] +
                       out[(c * nn + a) * nn + b] + out[(c * nn + b) * nn + a];
            tmp[i] = acc / 6.0;
        }
        out.swap(tmp);
    }
    return out;
}

void fill_q_diagnostics(GroundStateSolution& sol) {
    const PhysicsParams& p = sol.params;
    const double d = p.dim, s = p.s, a = p.alpha;
    sol.l2_norm = norm_lp(sol.profile, 2.0);
    sol.hdot_s_norm = norm_hdot(sol.profile, s);
    sol.nonlinear_norm = norm_lp(sol.profile, a + 2.0);
    const double X = sol.hdot_s_norm * sol.hdot_s_norm;
    const double P = std::pow(sol.nonlinear_norm, a + 2.0);
    const double M = sol.l2_norm * sol.l2_norm;
    sol.pohozaev_residual_1 = std::abs(X - d * a / (2.0 * s * (a + 2.0)) * P) / X;
    sol.pohozaev_residual_2 =
        std::abs(X - d * a / (4.0 * s - (d - 2.0 * s) * a) * M) / X;
}

}  // namespace

GroundStateSolution solve_Q(GridPtr grid, const PhysicsParams& params, double tol,
                            int max_iter, const Field* initial_guess) {
    const Criticality cls = params.criticality();
    if (cls != Criticality::Intercritical && cls != Criticality::MassCritical)
        throw DomainError("solve_Q: requires 4s/d <= alpha < 4s/(d-2s), got class " +
                          std::string(to_string(cls)));
    if (!(tol >= 1e-15)) throw DomainError("solve_Q: tol too small");

    const Grid& g = *grid;
    const double s = params.s, a = params.alpha;
    // The stabilizing exponent for a degree-(alpha+1) nonlinearity: the
    // amplitude error mode contracts for kappa in (1, 1+2/alpha) and dies in
    // one step at (alpha+1)/alpha.
    const double kappa = (a + 1.0) / a;

    const auto& k2 = g.freq2();
    const auto& r2 = g.radius2();
    std::vector<double> sym(g.size());
    for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = std::pow(k2[i], s) + 1.0;

    // unit-mass Gaussian seed unless the caller supplies one
    std::vector<cplx> q(g.size());
    if (initial_guess) {
        if (!(initial_guess->grid() == g))
            throw StructuralError("solve_Q: initial guess grid mismatch");
        q = initial_guess->values();
    } else {
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::exp(-0.5 * r2[i]);
        double mass = 0.0;
        for (const auto& c : q) mass += std::norm(c);
        mass *= g.cell_volume();
        for (auto& c : q) c /= std::sqrt(mass);
    }

    GroundStateSolution sol{Field(grid), params};
    std::vector<cplx> nl(g.size());
    double last_update = 1.0;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double amp = std::abs(q[i]);
            nl[i] = std::pow(amp, a) * q[i];
        }
        std::vector<cplx> qh = dft_forward(g, q);
        double num = 0.0;
        for (std::size_t i = 0; i < qh.size(); ++i) num += sym[i] * std::norm(qh[i]);
        num *= g.box_volume();
        double den = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            den += (std::conj(q[i]) * nl[i]).real();
        den *= g.cell_volume();
        if (!(den > 0.0) || !std::isfinite(den))
            throw ConvergenceError("solve_Q: degenerate iterate (zero nonlinear pairing)");
        const double gamma = num / den;

        std::vector<cplx> nlh = dft_forward(g, nl);
        for (std::size_t i = 0; i < nlh.size(); ++i) nlh[i] /= sym[i];
        std::vector<cplx> next = dft_backward(g, nlh);
        const double boost = std::pow(gamma, kappa);
        for (auto& c : next) c = boost * c.real();  // profile stays real
        next = symmetrize(g, next);

        double diff2 = 0.0, base2 = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            diff2 += std::norm(next[i] - q[i]);
            base2 += std::norm(q[i]);
        }
        last_update = std::sqrt(diff2 / std::max(base2, 1e-300));
        q.swap(next);
        if (last_update < tol) {
            sol.iterations = it + 1;
            sol.converged = true;
            break;
        }
    }
    if (!sol.converged) {
        std::ostringstream msg;
        msg << "solve_Q: no convergence in " << max_iter
            << " iterations, last relative update " << last_update;
        throw ConvergenceError(msg.str());
    }

    double peak = 0.0, floor = 0.0;
    for (const auto& c : q) {
        peak = std::max(peak, c.real());
        floor = std::min(floor, c.real());
    }
    if (floor < -1e-12 * peak)
        throw ConvergenceError("solve_Q: converged profile has negative minimum " +
                               std::to_string(floor));

    sol.profile = Field(grid, std::move(q));
    fill_q_diagnostics(sol);
    return sol;
}

ThresholdData intercritical_thresholds(const GroundStateSolution& q) {
    if (!q.converged) throw DomainError("intercritical_thresholds: profile not converged");
    const PhysicsParams& p = q.params;
    if (p.criticality() != Criticality::Intercritical)
        throw DomainError("intercritical_thresholds: intercritical class required");

    const double d = p.dim, s = p.s, a = p.alpha;
    const double sigma = *p.sigma();
    const double gnorm = q.hdot_s_norm;
    const double l2 = q.l2_norm;
    const double P = std::pow(q.nonlinear_norm, a + 2.0);

    ThresholdData t;
    t.regime = Criticality::Intercritical;
    t.sigma = sigma;
    t.gs_hdot2 = gnorm * gnorm;
    t.gs_mass = l2 * l2;

    // sharp constant from its defining quotient
    t.sharp_constant = P / (std::pow(l2, (4.0 * s - (d - 2.0 * s) * a) / (2.0 * s)) *
                            std::pow(gnorm, d * a / (2.0 * s)));
    // and from the Pohozaev closed form
    t.x0_direct = gnorm * std::pow(l2, sigma);
    t.sharp_constant_alt = 2.0 * s * (a + 2.0) / (d * a) /
                           std::pow(t.x0_direct, (d * a - 4.0 * s) / (2.0 * s));

    t.x0 = std::pow(2.0 * s * (a + 2.0) / (d * a * t.sharp_constant),
                    2.0 * s / (d * a - 4.0 * s));

    const double energy = 0.5 * t.gs_hdot2 - P / (a + 2.0);
    t.energy_threshold = energy * std::pow(t.gs_mass, sigma);
    return t;
}

GroundStateSolution make_W(GridPtr grid, const PhysicsParams& params) {
    if (params.criticality() != Criticality::EnergyCritical)
        throw DomainError("make_W: energy-critical class required");
    if (params.dim < 2) throw DomainError("make_W: requires d >= 2");

    const Grid& g = *grid;
    const double s = params.s;
    const double sstar = params.s_star();
    const double decay = 0.5 * (params.dim - 2.0 * s);

    std::vector<cplx> w(g.size());
    const auto& r2 = g.radius2();
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = std::pow(1.0 + r2[i], -decay);
    Field unit(grid, std::move(w));

    const double a2 = std::pow(norm_hdot(unit, s), 2);
    const double b = std::pow(norm_lp(unit, sstar), sstar);
    const double kappa = std::pow(a2 / b, 1.0 / (sstar - 2.0));

    std::vector<cplx> scaled = unit.values();
    for (auto& c : scaled) c *= kappa;

    GroundStateSolution sol{Field(grid, std::move(scaled)), params};
    sol.l2_norm = norm_lp(sol.profile, 2.0);
    sol.hdot_s_norm = norm_hdot(sol.profile, s);
    sol.nonlinear_norm = norm_lp(sol.profile, sstar);
    sol.iterations = 0;
    sol.converged = true;

    const double X = sol.hdot_s_norm * sol.hdot_s_norm;
    const double B = std::pow(sol.nonlinear_norm, sstar);
    sol.pohozaev_residual_1 = std::abs(X - B) / X;

    // relative L2 residual of (-Lap)^s W - W^{s*-1} as a diagnostic
    Field lap_w = apply_multiplier(sol.profile, FracLaplacian{s});
    std::vector<cplx> resid(lap_w.values());
    const auto& vals = sol.profile.values();
    for (std::size_t i = 0; i < resid.size(); ++i)
        resid[i] -= std::pow(vals[i].real(), sstar - 1.0);
    const double rnorm = norm_lp(Field(grid, std::move(resid)), 2.0);
    sol.pohozaev_residual_2 = rnorm / norm_lp(lap_w, 2.0);
    return sol;
}

ThresholdData energy_critical_thresholds(const GroundStateSolution& w) {
    if (!w.converged) throw DomainError("energy_critical_thresholds: profile not converged");
    const PhysicsParams& p = w.params;
    if (p.criticality() != Criticality::EnergyCritical)
        throw DomainError("energy_critical_thresholds: energy-critical class required");

    const double sstar = p.s_star();
    ThresholdData t;
    t.regime = Criticality::EnergyCritical;
    t.gs_hdot2 = w.hdot_s_norm * w.hdot_s_norm;
    t.gs_mass = w.l2_norm * w.l2_norm;
    t.sharp_constant = w.nonlinear_norm / w.hdot_s_norm;
    t.sharp_constant_alt = std::pow(w.hdot_s_norm, -2.0 * p.s / p.dim);
    t.x0 = std::pow(std::pow(t.sharp_constant, -sstar),
                    (p.dim - 2.0 * p.s) / (4.0 * p.s));
    t.x0_direct = w.hdot_s_norm;
    const double B = std::pow(w.nonlinear_norm, sstar);
    t.energy_threshold = 0.5 * t.gs_hdot2 - B / sstar;
    return t;
}

double threshold_function(double x, const ThresholdData& data,
                          const PhysicsParams& params) {
    if (x < 0.0) throw DomainError("threshold_function: argument must be nonnegative");
    if (data.regime == Criticality::Intercritical) {
        const double p = params.dim * params.alpha / (2.0 * params.s);
        return 0.5 * x * x -
               data.sharp_constant / (params.alpha + 2.0) * std::pow(x, p);
    }
    const double sstar = params.s_star();
    return 0.5 * x * x -
           std::pow(data.sharp_constant, sstar) / sstar * std::pow(x, sstar);
}

}  // namespace fnls
