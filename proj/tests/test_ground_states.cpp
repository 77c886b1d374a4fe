#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fnls/errors.hpp"
#include "fnls/ground_states.hpp"
#include "fnls/invariants.hpp"
#include "fnls/spectral.hpp"

using namespace fnls;

// Desk-scale grids here: the tight Pohozaev gates run in the acceptance
// suite on larger boxes. The fractional profiles have polynomial tails, so
// the small-box residual floor sits near 1e-3.

namespace {

// One large-box solve shared by the threshold tests. The constants involve
// sigma-th powers of norms, so the box must be big enough that the profile
// tail and the |xi|^{2s} cusp quadrature sit below the 1e-4 comparisons.
struct BigSolve {
    GridPtr grid = make_grid(1, 8192, 384.0);
    PhysicsParams params{1, 0.6, 3.0};
    GroundStateSolution q = solve_Q(grid, params);
    ThresholdData t = intercritical_thresholds(q);
};

const BigSolve& big() {
    static const BigSolve b;
    return b;
}

}  // namespace

TEST_CASE("Petviashvili converges and satisfies Pohozaev approximately") {
    auto grid = make_grid(1, 1024, 48.0);
    const PhysicsParams p(1, 0.6, 3.0);
    const GroundStateSolution q = solve_Q(grid, p);
    CHECK(q.converged);
    CHECK(q.iterations < 200);
    CHECK(q.pohozaev_residual_1 < 2e-3);
    CHECK(q.pohozaev_residual_2 < 4e-3);

    // ratio ||(-Lap)^{s/2}Q||^2 / ||Q||^2 = d a/(4s - (d-2s)a) = 1 here
    const double ratio = q.hdot_s_norm * q.hdot_s_norm / (q.l2_norm * q.l2_norm);
    CHECK(ratio == doctest::Approx(1.0).epsilon(5e-3));

    // K(Q) vanishes up to the discretization floor
    const ConservedReport cons = conserved_report(q.profile, p);
    const double hs2 = std::pow(norm_h(q.profile, p.s), 2);
    CHECK(std::abs(cons.K) < 1e-3 * hs2);

    // profile positive
    double min_val = 1e300, max_val = 0.0;
    for (const auto& c : q.profile.values()) {
        min_val = std::min(min_val, c.real());
        max_val = std::max(max_val, c.real());
    }
    CHECK(min_val > -1e-12 * max_val);
}

TEST_CASE("solve_Q accepts the mass-critical exponent") {
    auto grid = make_grid(1, 1024, 48.0);
    const PhysicsParams p(1, 0.7, 2.8);
    const GroundStateSolution q = solve_Q(grid, p);
    CHECK(q.converged);
    // mass-critical ground state has (near) zero energy
    const ConservedReport cons = conserved_report(q.profile, p);
    CHECK(std::abs(cons.energy) < 1e-3 * cons.mass);
}

TEST_CASE("solve_Q errors") {
    auto grid = make_grid(1, 256, 20.0);
    CHECK_THROWS_AS(solve_Q(grid, PhysicsParams(1, 0.7, 1.0)), DomainError);
    CHECK_THROWS_AS(solve_Q(grid, PhysicsParams(2, 0.75, 6.0)), DomainError);
    const PhysicsParams p(1, 0.6, 3.0);
    CHECK_THROWS_AS(solve_Q(grid, p, 1e-13, 3), ConvergenceError);
    const Field zero(grid);
    CHECK_THROWS_AS(solve_Q(grid, p, 1e-13, 100, &zero), ConvergenceError);
}

TEST_CASE("intercritical thresholds are mutually consistent") {
    const PhysicsParams& p = big().params;
    const ThresholdData& t = big().t;

    CHECK(t.sigma == doctest::Approx(5.0));
    CHECK(t.sharp_constant ==
          doctest::Approx(t.sharp_constant_alt).epsilon(1e-4));
    CHECK(t.x0 == doctest::Approx(t.x0_direct).epsilon(1e-4));
    CHECK(threshold_function(t.x0, t, p) ==
          doctest::Approx(t.energy_threshold).epsilon(1e-4));

    // f(0) = 0; x0 is the maximum
    CHECK(threshold_function(0.0, t, p) == 0.0);
    const double f0 = threshold_function(t.x0, t, p);
    CHECK(threshold_function(0.5 * t.x0, t, p) < f0);
    CHECK(threshold_function(2.0 * t.x0, t, p) < f0);
    // f'(x0) = 0 by central difference
    const double h = 1e-6 * t.x0;
    const double deriv = (threshold_function(t.x0 + h, t, p) -
                          threshold_function(t.x0 - h, t, p)) / (2.0 * h);
    CHECK(std::abs(deriv) <= 1e-6 * f0 / t.x0);

    CHECK_THROWS_AS(threshold_function(-1.0, t, p), DomainError);
}

TEST_CASE("threshold constants are scaling invariant") {
    const PhysicsParams& p = big().params;
    const GroundStateSolution& q = big().q;
    const ThresholdData& t = big().t;

    const Field scaled = rescale(q.profile, 2.0, p).field;
    const double l2 = norm_lp(scaled, 2.0);
    const double gn = norm_hdot(scaled, p.s);
    const double pn = norm_lp(scaled, p.alpha + 2.0);
    const double d = p.dim, s = p.s, a = p.alpha;

    const double c_gn = std::pow(pn, a + 2.0) /
                        (std::pow(l2, (4.0 * s - (d - 2.0 * s) * a) / (2.0 * s)) *
                         std::pow(gn, d * a / (2.0 * s)));
    CHECK(c_gn == doctest::Approx(t.sharp_constant).epsilon(1e-4));

    const double x0 = gn * std::pow(l2, t.sigma);
    CHECK(x0 == doctest::Approx(t.x0_direct).epsilon(1e-4));

    const double energy = 0.5 * gn * gn - std::pow(pn, a + 2.0) / (a + 2.0);
    const double em = energy * std::pow(l2 * l2, t.sigma);
    CHECK(em == doctest::Approx(t.energy_threshold).epsilon(1e-4));
}

TEST_CASE("intercritical thresholds reject wrong inputs") {
    auto grid = make_grid(1, 512, 32.0);
    const GroundStateSolution q = solve_Q(grid, PhysicsParams(1, 0.7, 2.8));
    CHECK_THROWS_AS(intercritical_thresholds(q), DomainError);  // mass-critical
    GroundStateSolution fake = q;
    fake.converged = false;
    CHECK_THROWS_AS(intercritical_thresholds(fake), DomainError);
}

TEST_CASE("energy-critical profile obeys the forced identity and chain") {
    auto grid = make_grid(2, 256, 40.0);
    const PhysicsParams p(2, 0.75, 6.0);
    const GroundStateSolution w = make_W(grid, p);
    const double sstar = p.s_star();
    CHECK(sstar == doctest::Approx(8.0));

    const double X = w.hdot_s_norm * w.hdot_s_norm;
    const double B = std::pow(w.nonlinear_norm, sstar);
    CHECK(X == doctest::Approx(B).epsilon(1e-12));
    CHECK(w.pohozaev_residual_1 < 1e-12);
    CHECK(w.pohozaev_residual_2 < 0.5);  // elliptic residual is a diagnostic only

    const ThresholdData t = energy_critical_thresholds(w);
    // E(W) = (s/d) C_SE^{-d/s}
    const double ew = t.energy_threshold;
    CHECK(ew == doctest::Approx(p.s / p.dim *
                                std::pow(t.sharp_constant, -p.dim / p.s))
                    .epsilon(1e-3));
    // y0 = ||(-Lap)^{s/2} W||
    CHECK(t.x0 == doctest::Approx(t.x0_direct).epsilon(1e-3));
    // g(y0) = E(W)
    CHECK(threshold_function(t.x0, t, p) == doctest::Approx(ew).epsilon(1e-3));
    // four-way consistency of the sharp constant
    const double c1 = t.sharp_constant;
    const double c2 = std::pow(w.hdot_s_norm, -2.0 * p.s / p.dim);
    const double c3 = std::pow(w.nonlinear_norm, -sstar * p.s / p.dim);
    const double c4 = std::pow(p.s / (p.dim * ew), p.s / p.dim);
    for (double c : {c2, c3, c4}) CHECK(c == doctest::Approx(c1).epsilon(1e-3));

    CHECK_THROWS_AS(make_W(grid, PhysicsParams(2, 0.75, 2.0)), DomainError);
}
