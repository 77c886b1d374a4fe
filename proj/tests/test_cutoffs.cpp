#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fnls/cutoffs.hpp"
#include "fnls/errors.hpp"
#include "fnls/spectral.hpp"

using namespace fnls;

TEST_CASE("profile jets agree with finite differences") {
    for (WeightKind kind : {WeightKind::Psi, WeightKind::Phi}) {
        const CutoffProfile prof(kind);
        const double h = 1e-5;
        for (double rho : {0.6, 0.75, 0.9, 1.2, 1.5, 1.8}) {
            const Jet4 j = prof.eval(rho);
            const double d1 =
                (prof.eval(rho + h).value() - prof.eval(rho - h).value()) / (2 * h);
            const double d2 = (prof.eval(rho + h).value() -
                               2 * j.value() + prof.eval(rho - h).value()) /
                              (h * h);
            CHECK(j[1] == doctest::Approx(d1).epsilon(1e-7));
            CHECK(j[2] == doctest::Approx(d2).epsilon(1e-4));
            // third derivative from differenced second jets
            const double d3 = (prof.eval(rho + h)[2] - prof.eval(rho - h)[2]) / (2 * h);
            CHECK(j[3] == doctest::Approx(d3).epsilon(1e-6));
            const double d4 = (prof.eval(rho + h)[3] - prof.eval(rho - h)[3]) / (2 * h);
            CHECK(j[4] == doctest::Approx(d4).epsilon(1e-6));
        }
    }
}

TEST_CASE("phi profile invariants") {
    const CutoffProfile prof(WeightKind::Phi);
    CHECK(prof.eval(0.5).value() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(prof.eval(1.0).value() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(prof.eval(2.5).value() == doctest::Approx(prof.terminal()));
    CHECK(prof.eval(2.5)[1] == 0.0);
    CHECK(prof.terminal() > 1.0);
    CHECK(prof.terminal() < 4.0);
    for (double rho = 0.0; rho <= 3.0; rho += 0.01) {
        const Jet4 j = prof.eval(rho);
        CHECK(j[2] <= 2.0 + 1e-12);                      // theta'' <= 2
        CHECK(j[1] >= -1e-12);                           // theta' >= 0
        if (rho > 0) CHECK(j[1] / rho <= 2.0 + 1e-12);   // theta'/rho <= 2
    }
}

TEST_CASE("psi weight plateaus and disjoint support") {
    auto grid = make_grid(1, 512, 20.0);
    const double R = 6.0;
    const Weight psi = make_psi(grid, R);
    const auto& coords = grid->axis_coords();
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const double r = std::abs(coords[i]);
        CHECK(psi.value[i] >= -1e-14);
        CHECK(psi.value[i] <= 1.0 + 1e-14);
        if (r <= R / 2) CHECK(std::abs(psi.value[i]) < 1e-14);
        if (r >= R) CHECK(std::abs(psi.value[i] - 1.0) < 1e-14);
    }

    // field supported well inside |x| < R/2 has no psi-weighted mass
    std::vector<cplx> v(grid->size());
    const auto& r2 = grid->radius2();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-4.0 * r2[i]);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        acc += psi.value[i] * std::norm(v[i]);
    CHECK(acc * grid->cell_volume() < 1e-14);
}

TEST_CASE("psi gradient sup scales like 1/R") {
    auto grid = make_grid(1, 2048, 80.0);
    double first = 0.0;
    for (double R : {4.0, 8.0, 16.0, 32.0}) {
        const Weight psi = make_psi(grid, R);
        double sup = 0.0;
        for (double gx : psi.grad[0]) sup = std::max(sup, std::abs(gx));
        const double scaled = sup * R;  // should be R-independent
        if (first == 0.0) first = scaled;
        CHECK(scaled / first < 1.5);
        CHECK(scaled / first > 0.67);
    }
}

TEST_CASE("phi weight equals r^2 inside and freezes outside") {
    for (int d : {1, 2}) {
        auto grid = make_grid(d, d == 1 ? 512 : 128, 20.0);
        const double R = 6.0;
        const Weight phi = make_phi(grid, R);
        const auto& r2 = grid->radius2();
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double r = std::sqrt(r2[i]);
            if (r <= R)
                CHECK(phi.value[i] == doctest::Approx(r2[i]).epsilon(1e-12));
            if (r >= 2.0 * R) {
                for (int a = 0; a < d; ++a)
                    CHECK(std::abs(phi.grad[a][i]) < 1e-14);
                CHECK(phi.value[i] ==
                      doctest::Approx(R * R * phi.profile_terminal).epsilon(1e-12));
            }
        }
        CHECK(phi.value[0] > 0.0);  // corner of the box is beyond 2R
    }
}

TEST_CASE("phi pointwise inequalities hold on the grid") {
    for (int d : {1, 2}) {
        auto grid = make_grid(d, d == 1 ? 512 : 128, 40.0);
        for (double R : {4.0, 8.0, 16.0}) {
            const Weight phi = make_phi(grid, R);
            const WeightPropertyReport rep = verify_weight_properties(phi);
            CHECK(rep.min_second_derivative_gap >= -1e-12);
            CHECK(rep.min_slope_gap >= -1e-12);
            CHECK(rep.min_laplacian_gap >= -1e-12);
            CHECK(rep.support_violation_grad <= 1e-14);
            CHECK(rep.support_violation_high <= 1e-14);
        }
    }
}

TEST_CASE("scaled sup norms are stable across R") {
    auto grid = make_grid(1, 2048, 80.0);
    std::array<double, 5> lo{}, hi{};
    lo.fill(1e300);
    for (double R : {4.0, 8.0, 16.0}) {
        const WeightPropertyReport rep = verify_weight_properties(make_phi(grid, R));
        for (int k = 0; k < 5; ++k) {
            lo[k] = std::min(lo[k], rep.scaled_sup_norms[k]);
            hi[k] = std::max(hi[k], rep.scaled_sup_norms[k]);
        }
    }
    for (int k = 0; k < 5; ++k) CHECK(hi[k] / lo[k] <= 3.0);
}

TEST_CASE("hessian matches the radial decomposition") {
    auto grid = make_grid(2, 128, 20.0);
    const double R = 5.0;
    const Weight phi = make_phi(grid, R);
    const auto& coords = grid->axis_coords();
    const int n = grid->n();
    double worst = 0.0;
    for (std::size_t flat = 0; flat < grid->size(); flat += 7) {
        const double x = coords[flat / n], y = coords[flat % n];
        const double r = std::hypot(x, y);
        if (r < 0.5) continue;
        const Jet4 f = phi.radial_jet(r);
        const double fr = f[1], frr = f[2];
        const double xs[2] = {x, y};
        for (int j = 0; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                const double delta = (j == k) ? 1.0 : 0.0;
                const double expect = (delta / r - xs[j] * xs[k] / (r * r * r)) * fr +
                                      xs[j] * xs[k] / (r * r) * frr;
                const double got = phi.hessian[Weight::hessian_index(2, j, k)][flat];
                worst = std::max(worst, std::abs(got - expect));
            }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("weight preconditions") {
    auto grid = make_grid(1, 256, 10.0);
    CHECK_THROWS_AS(make_psi(grid, 0.5), DomainError);   // R <= 1
    CHECK_THROWS_AS(make_psi(grid, 5.0), DomainError);   // 2R >= L
    CHECK_THROWS_AS(make_phi(grid, 6.0), DomainError);
    CHECK_THROWS_AS(verify_weight_properties(make_psi(grid, 3.0)), DomainError);
}
