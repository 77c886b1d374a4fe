#include "fnls/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

constexpr double kBinom[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

Jet4 jet_const(double c) {
    Jet4 j;
    j.d[0] = c;
    return j;
}

Jet4 jet_linear(double value, double slope) {
    Jet4 j;
    j.d[0] = value;
    j.d[1] = slope;
    return j;
}

Jet4 jet_add(const Jet4& a, const Jet4& b) {
    Jet4 c;
    for (int k = 0; k < 5; ++k) c.d[k] = a.d[k] + b.d[k];
    return c;
}

Jet4 jet_mul(const Jet4& a, const Jet4& b) {
    Jet4 c;
    for (int n = 0; n < 5; ++n) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += kBinom[n][k] * a.d[k] * b.d[n - k];
        c.d[n] = acc;
    }
    return c;
}

// c = a / b via Leibniz on a = b c, requires b.d[0] != 0
Jet4 jet_div(const Jet4& a, const Jet4& b) {
    Jet4 c;
    for (int n = 0; n < 5; ++n) {
        double acc = a.d[n];
        for (int k = 1; k <= n; ++k) acc -= kBinom[n][k] * b.d[k] * c.d[n - k];
        c.d[n] = acc / b.d[0];
    }
    return c;
}

Jet4 jet_exp(const Jet4& g) {
    Jet4 e;
    e.d[0] = std::exp(g.d[0]);
    for (int n = 1; n < 5; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += kBinom[n - 1][k - 1] * g.d[k] * e.d[n - k];
        e.d[n] = acc;
    }
    return e;
}

// S(t) = exp(-1/t) for t > 0, identically 0 for t <= 0; t linear in rho.
Jet4 jet_bump(const Jet4& t) {
    if (t.d[0] <= 1e-30) return Jet4{};
    return jet_exp(jet_div(jet_const(-1.0), t));
}

// chi(rho): 1 on [0,1], 0 on [2,inf), monotone smooth blend between.
Jet4 jet_plateau(double rho) {
    if (rho <= 1.0) return jet_const(1.0);
    if (rho >= 2.0) return Jet4{};
    const Jet4 up = jet_bump(jet_linear(2.0 - rho, -1.0));
    const Jet4 down = jet_bump(jet_linear(rho - 1.0, 1.0));
    return jet_div(up, jet_add(up, down));
}

// vartheta(rho): 0 on [0,1/2], 1 on [1,inf).
Jet4 jet_ramp(double rho) {
    if (rho <= 0.5) return Jet4{};
    if (rho >= 1.0) return jet_const(1.0);
    const Jet4 up = jet_bump(jet_linear(rho - 0.5, 1.0));
    const Jet4 down = jet_bump(jet_linear(1.0 - rho, -1.0));
    return jet_div(up, jet_add(up, down));
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double p0 = 0.0, p1 = 0.0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussRule& panel_rule() {
    static const GaussRule rule(16);
    return rule;
}

}  // namespace

CutoffProfile::CutoffProfile(WeightKind kind) : kind_(kind), terminal_(1.0) {
    if (kind_ == WeightKind::Phi) terminal_ = 1.0 + theta_integral(2.0);
}

double CutoffProfile::theta_integral(double rho) const {
    // int_1^rho 2 t chi(t) dt on composite 16-point panels of width <= 1/16
    const auto& rule = panel_rule();
    double acc = 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((rho - 1.0) * 16.0)));
    const double width = (rho - 1.0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = 1.0 + p * width;
        const double half = 0.5 * width;
        const double mid = a + half;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double t = mid + half * rule.x[i];
            acc += half * rule.w[i] * 2.0 * t * jet_plateau(t).value();
        }
    }
    return acc;
}

Jet4 CutoffProfile::eval(double rho) const {
    if (kind_ == WeightKind::Psi) return jet_ramp(rho);

    if (rho <= 1.0) {
        Jet4 j;
        j.d[0] = rho * rho;
        j.d[1] = 2.0 * rho;
        j.d[2] = 2.0;
        return j;
    }
    if (rho >= 2.0) return jet_const(terminal_);
    // theta' = 2 rho chi(rho); value from the running integral
    const Jet4 tprime = jet_mul(jet_linear(2.0 * rho, 2.0), jet_plateau(rho));
    Jet4 j;
    j.d[0] = 1.0 + theta_integral(rho);
    for (int k = 1; k < 5; ++k) j.d[k] = tprime.d[k - 1];
    return j;
}

int Weight::hessian_index(int d, int j, int k) {
    if (j > k) std::swap(j, k);
    return j * d - j * (j - 1) / 2 + (k - j);
}

Jet4 Weight::radial_jet(double r) const {
    const Jet4 u = profile->eval(r / R);
    Jet4 f;
    if (kind == WeightKind::Phi) {
        f.d[0] = R * R * u.d[0];
        f.d[1] = R * u.d[1];
        f.d[2] = u.d[2];
        f.d[3] = u.d[3] / R;
        f.d[4] = u.d[4] / (R * R);
    } else {
        double scale = 1.0;
        for (int k = 0; k < 5; ++k) {
            f.d[k] = u.d[k] * scale;
            scale /= R;
        }
    }
    return f;
}

namespace {

Weight build_weight(GridPtr grid, double R, WeightKind kind) {
    if (!(R > 1.0))
        throw DomainError("cutoff weight: R must exceed 1, got " + std::to_string(R));
    if (!(2.0 * R < grid->half_length()))
        throw DomainError("cutoff weight: 2R must stay below the half length (no "
                          "periodic wrap), got R = " + std::to_string(R) +
                          ", L = " + std::to_string(grid->half_length()));

    Weight w;
    w.grid = grid;
    w.R = R;
    w.kind = kind;
    w.profile = std::make_shared<CutoffProfile>(kind);
    w.profile_terminal = w.profile->terminal();

    const int d = grid->dim();
    const std::size_t sz = grid->size();
    w.value.assign(sz, 0.0);
    w.laplacian.assign(sz, 0.0);
    w.bilaplacian.assign(sz, 0.0);
    w.grad.assign(d, std::vector<double>(sz, 0.0));
    w.hessian.assign(d * (d + 1) / 2, std::vector<double>(sz, 0.0));

    const auto& r2 = grid->radius2();
    const auto& coords = grid->axis_coords();
    const int n = grid->n();

    for (std::size_t flat = 0; flat < sz; ++flat) {
        const double r = std::sqrt(r2[flat]);
        const double rho = r / R;
        const Jet4 u = w.profile->eval(rho);

        // rho-level radial quantities; exact cancellations in the plateau and
        // r^2 regions are preserved by forming differences before dividing.
        double slope_over_rho;   // u'/rho, smooth limit u'' at rho = 0
        double aniso;            // u'' - u'/rho
        if (r == 0.0) {
            slope_over_rho = u.d[2];
            aniso = 0.0;
        } else {
            slope_over_rho = u.d[1] / rho;
            aniso = u.d[2] - slope_over_rho;
        }

        double vscale, gscale, hscale, bscale;
        if (kind == WeightKind::Phi) {
            vscale = R * R;
            gscale = 1.0;          // grad_j = x_j (u'/rho)
            hscale = 1.0;
            bscale = 1.0 / (R * R);
        } else {
            vscale = 1.0;
            gscale = 1.0 / (R * R);
            hscale = 1.0 / (R * R);
            bscale = 1.0 / (R * R * R * R);
        }

        w.value[flat] = vscale * u.d[0];
        w.laplacian[flat] = hscale * (u.d[2] + (d - 1) * slope_over_rho);

        if (r == 0.0) {
            for (int j = 0; j < d; ++j)
                w.hessian[Weight::hessian_index(d, j, j)][flat] = hscale * u.d[2];
            // gradient and bilaplacian vanish at the origin
            continue;
        }

        double bil = u.d[4] + (d - 1) * 2.0 * u.d[3] / rho;
        if (d != 1 && d != 3) bil += (d - 1) * (d - 3) * aniso / (rho * rho);
        w.bilaplacian[flat] = bscale * bil;

        std::array<int, 3> idx{};
        std::size_t rem = flat;
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % n);
            rem /= n;
        }
        std::array<double, 3> xhat{};
        for (int a = 0; a < d; ++a) xhat[a] = coords[idx[a]] / r;

        for (int a = 0; a < d; ++a)
            w.grad[a][flat] = gscale * coords[idx[a]] * slope_over_rho;
        for (int j = 0; j < d; ++j)
            for (int k = j; k < d; ++k) {
                const double delta = (j == k) ? 1.0 : 0.0;
                w.hessian[Weight::hessian_index(d, j, k)][flat] =
                    hscale * (delta * slope_over_rho + xhat[j] * xhat[k] * aniso);
            }
    }
    return w;
}

}  // namespace

Weight make_psi(GridPtr grid, double R) { return build_weight(std::move(grid), R, WeightKind::Psi); }

Weight make_phi(GridPtr grid, double R) { return build_weight(std::move(grid), R, WeightKind::Phi); }

WeightPropertyReport verify_weight_properties(const Weight& w) {
    if (w.kind != WeightKind::Phi)
        throw DomainError("verify_weight_properties: phi kind required");

    WeightPropertyReport rep;
    rep.min_second_derivative_gap = 1e300;
    rep.min_slope_gap = 1e300;
    rep.min_laplacian_gap = 1e300;

    const Grid& g = *w.grid;
    const int d = g.dim();
    const auto& r2 = g.radius2();
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        const double r = std::sqrt(r2[flat]);
        const double rho = r / w.R;
        const Jet4 u = w.profile->eval(rho);
        const double slope_over_rho = (r == 0.0) ? u.d[2] : u.d[1] / rho;

        rep.min_second_derivative_gap =
            std::min(rep.min_second_derivative_gap, 2.0 - u.d[2]);
        rep.min_slope_gap = std::min(rep.min_slope_gap, 2.0 - slope_over_rho);
        rep.min_laplacian_gap =
            std::min(rep.min_laplacian_gap, 2.0 * d - w.laplacian[flat]);

        const Jet4 f = w.radial_jet(r);
        for (int k = 0; k < 5; ++k) {
            rep.scaled_sup_norms[k] = std::max(
                rep.scaled_sup_norms[k],
                std::abs(f.d[k]) * std::pow(w.R, k - 2));
        }
        if (r > 2.0 * w.R) {
            for (int a = 0; a < d; ++a)
                rep.support_violation_grad =
                    std::max(rep.support_violation_grad, std::abs(w.grad[a][flat]));
            for (const auto& hfield : w.hessian)
                rep.support_violation_grad =
                    std::max(rep.support_violation_grad, std::abs(hfield[flat]));
        }
        if (r < w.R || r > 2.0 * w.R) {
            rep.support_violation_high =
                std::max(rep.support_violation_high,
                         std::max(std::abs(f.d[3]), std::abs(f.d[4])));
        }
    }
    return rep;
}

}  // namespace fnls
