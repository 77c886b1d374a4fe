#include <cmath>
#include <cstdio>

#include "fnls/balakrishnan.hpp"
#include "fnls/dynamics.hpp"
#include "fnls/spectral.hpp"

using namespace fnls;

static Field boosted_gaussian(GridPtr grid, double velocity) {
    const Grid& g = *grid;
    std::vector<cplx> v(g.size());
    const auto& coords = g.axis_coords();
    const auto& r2 = g.radius2();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x0 = coords[i % g.n()];
        v[i] = std::exp(cplx(-r2[i], velocity * x0));
    }
    return Field(std::move(grid), std::move(v));
}

static Field conj_field(const Field& f) {
    std::vector<cplx> v = f.values();
    for (auto& c : v) c = std::conj(c);
    return Field(f.grid_ptr(), std::move(v));
}

int main() {
    auto grid = make_grid(1, 256, 15.0);
    const PhysicsParams p(1, 0.7, 2.8);
    const MQuadrature quad = MQuadrature::build(p.s);
    const Weight phi = make_phi(grid, 5.0);
    const Field u0 = boosted_gaussian(grid, 1.0);
    const double dt = 1e-5;

    auto fd_m = [&](StrangOptions opts) {
        const Field plus = strang_step(u0, dt, p, nullptr, opts);
        const Field minus = conj_field(strang_step(conj_field(u0), dt, p, nullptr, opts));
        const VirialReport vp = virial_actions(plus, phi, p, quad);
        const VirialReport vm = virial_actions(minus, phi, p, quad);
        return (vp.M_value - vm.M_value) / (2.0 * dt);
    };

    const VirialReport v0 = virial_actions(u0, phi, p, quad);
    StrangOptions lin, nl;
    lin.apply_nonlinear = false;
    nl.apply_linear = false;

    std::printf("term_bilap   = %.10g\n", v0.term_bilaplacian);
    std::printf("term_hessian = %.10g\n", v0.term_hessian);
    std::printf("term_nl      = %.10g\n", v0.term_nonlinear);
    std::printf("dM_rhs       = %.10g\n", v0.dM_dt_rhs);
    std::printf("fd full      = %.10g\n", fd_m({}));
    std::printf("fd lin-only  = %.10g  (vs bilap+hess = %.10g)\n", fd_m(lin),
                v0.term_bilaplacian + v0.term_hessian);
    std::printf("fd nl-only   = %.10g  (vs term_nl = %.10g)\n", fd_m(nl),
                v0.term_nonlinear);

    // exact discrete linear-flow derivative: dM/dt = -2 Im <A u, G u> with
    // A = (-Lap)^s and G u = -i (phi' u_x + (phi' u)_x)
    const Field au = apply_multiplier(u0, FracLaplacian{p.s});
    const Field ux = apply_multiplier(u0, GradientComponent{1});
    std::vector<cplx> gu(grid->size());
    {
        std::vector<cplx> pu(grid->size());
        for (std::size_t i = 0; i < gu.size(); ++i)
            pu[i] = phi.grad[0][i] * u0.values()[i];
        const Field pux = apply_multiplier(Field(grid, pu), GradientComponent{1});
        for (std::size_t i = 0; i < gu.size(); ++i)
            gu[i] = cplx(0.0, -1.0) *
                    (phi.grad[0][i] * ux.values()[i] + pux.values()[i]);
    }
    const cplx pairing = inner_product(au, Field(grid, gu));
    std::printf("exact lin    = %.10g\n", -2.0 * pairing.imag());
    return 0;
}
