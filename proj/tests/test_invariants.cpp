#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fnls/errors.hpp"
#include "fnls/invariants.hpp"

using namespace fnls;

namespace {

Field gaussian_field(GridPtr grid, double amplitude = 1.0) {
    std::vector<cplx> v(grid->size());
    const auto& r2 = grid->radius2();
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = amplitude * std::exp(-r2[i]);
    return Field(std::move(grid), std::move(v));
}

Field random_field(GridPtr grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<cplx> v(grid->size());
    for (auto& c : v) c = cplx(gauss(rng), gauss(rng));
    return Field(std::move(grid), std::move(v));
}

}  // namespace

TEST_CASE("conserved report: zero field and energy sign") {
    auto grid = make_grid(1, 512, 20.0);
    const PhysicsParams p(1, 0.7, 2.8);
    const ConservedReport zero = conserved_report(Field(grid), p);
    CHECK(zero.mass == 0.0);
    CHECK(zero.energy == 0.0);
    CHECK(zero.K == 0.0);

    // amplitude 3 makes the focusing term dominate
    const ConservedReport big = conserved_report(gaussian_field(grid, 3.0), p);
    CHECK(big.energy < 0.0);
    const ConservedReport small = conserved_report(gaussian_field(grid, 0.1), p);
    CHECK(small.energy > 0.0);
}

TEST_CASE("conserved report satisfies the K identity") {
    auto grid = make_grid(1, 256, 15.0);
    for (double alpha : {2.0, 2.8, 3.5}) {
        const PhysicsParams p(1, 0.7, alpha);
        const ConservedReport r = conserved_report(random_field(grid, 5), p);
        const double pot = std::pow(r.l_alpha2_norm, alpha + 2.0);
        const double expect =
            p.s * r.energy - (p.dim * alpha - 4.0 * p.s) / (4.0 * (alpha + 2.0)) * pot;
        CHECK(std::abs(r.K - expect) <=
              1e-12 * std::max({std::abs(r.K), std::abs(expect), 1e-30}));
        // and the energy identity by construction
        const double e_expect = 0.5 * r.hs_norm * r.hs_norm - pot / (alpha + 2.0);
        CHECK(r.energy == doctest::Approx(e_expect).epsilon(1e-14));
    }
}

TEST_CASE("mass-critical degeneracy: K = s E") {
    auto grid = make_grid(1, 256, 15.0);
    const PhysicsParams p(1, 0.7, 2.8);  // alpha = 4s/d
    const ConservedReport r = conserved_report(random_field(grid, 9), p);
    CHECK(r.K == doctest::Approx(p.s * r.energy).epsilon(1e-13));
}

TEST_CASE("criticality classification") {
    {
        const CriticalityReport r = classify_criticality(PhysicsParams(1, 0.7, 2.8));
        CHECK(r.cls == Criticality::MassCritical);
        CHECK(r.s_c == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(!r.sigma.has_value());
        CHECK(!r.alpha_star_upper.has_value());  // d = 1 < 2s has no upper threshold
    }
    {
        const CriticalityReport r = classify_criticality(PhysicsParams(1, 0.6, 3.0));
        CHECK(r.cls == Criticality::Intercritical);
        CHECK(r.s_c == doctest::Approx(0.1));
        CHECK(r.sigma.value() == doctest::Approx(5.0));
    }
    {
        const CriticalityReport r = classify_criticality(PhysicsParams(2, 0.75, 6.0));
        CHECK(r.cls == Criticality::EnergyCritical);
        CHECK(r.s_c == doctest::Approx(0.75));
        CHECK(r.alpha_star_upper.value() == doctest::Approx(6.0));
    }
    CHECK(classify_criticality(PhysicsParams(2, 0.75, 1.0)).cls ==
          Criticality::MassSubcritical);
    CHECK(classify_criticality(PhysicsParams(2, 0.75, 7.0)).cls ==
          Criticality::EnergySupercritical);
    // sigma > 0 iff intercritical; 0 at energy-critical
    CHECK(classify_criticality(PhysicsParams(2, 0.75, 3.0)).sigma.value() > 0.0);
    CHECK(classify_criticality(PhysicsParams(2, 0.75, 6.0)).sigma.value() ==
          doctest::Approx(0.0));
}

TEST_CASE("admissible pairs") {
    // (inf, 2) admissible for every kind with gamma = 0
    for (PairKind kind : {PairKind::Schrodinger, PairKind::Radial, PairKind::Fractional}) {
        const auto r = admissible_pair(3, 0.8, INFINITY, 2.0, kind);
        REQUIRE(std::holds_alternative<AdmissiblePair>(r));
        CHECK(std::get<AdmissiblePair>(r).gamma_pq == doctest::Approx(0.0));
    }
    {
        const auto r = admissible_pair(2, 0.75, 4.0, 4.0, PairKind::Schrodinger);
        REQUIRE(std::holds_alternative<AdmissiblePair>(r));
        CHECK(std::get<AdmissiblePair>(r).gamma_pq == doctest::Approx(0.125));
    }
    {
        const auto r = admissible_pair(2, 0.8, 6.4, 8.0 / 3.0, PairKind::Fractional);
        REQUIRE(std::holds_alternative<AdmissiblePair>(r));
    }
    {
        // fails the fractional equality
        const auto r = admissible_pair(2, 0.8, 4.0, 4.0, PairKind::Fractional);
        REQUIRE(std::holds_alternative<PairRejection>(r));
        CHECK(std::get<PairRejection>(r).condition.find("2s/p + d/q") !=
              std::string::npos);
    }
    {
        // schrodinger inequality violated
        const auto r = admissible_pair(1, 0.7, 2.0, 2.0, PairKind::Schrodinger);
        REQUIRE(std::holds_alternative<PairRejection>(r));
    }
    CHECK_THROWS_AS(admissible_pair(2, 0.8, 1.5, 4.0, PairKind::Schrodinger),
                    DomainError);
    CHECK_THROWS_AS(admissible_pair(2, 0.8, 4.0, INFINITY, PairKind::Schrodinger),
                    DomainError);
}

TEST_CASE("lwp exponents") {
    {
        const PhysicsParams p(2, 0.8, 2.0);
        const auto [pp, qq] = lwp_exponents(p, 0.5, LwpMode::RadialSubcritical);
        CHECK(pp == doctest::Approx(6.4));
        CHECK(qq == doctest::Approx(8.0 / 3.0));
        const auto r = admissible_pair(2, 0.8, pp, qq, PairKind::Fractional);
        CHECK(std::holds_alternative<AdmissiblePair>(r));
        CHECK_THROWS_WITH_AS(lwp_exponents(p, 1.0, LwpMode::RadialSubcritical),
                             "lwp_exponents: gamma in [0, d/2) violated", DomainError);
    }
    {
        const PhysicsParams p(2, 0.75, 6.0);
        const auto [pp, qq] = lwp_exponents(p, p.s_c(), LwpMode::RadialCritical);
        CHECK(pp == doctest::Approx(8.0));
        CHECK(qq == doctest::Approx(32.0 / 13.0));
        const auto r = admissible_pair(2, 0.75, pp, qq, PairKind::Fractional);
        CHECK(std::holds_alternative<AdmissiblePair>(r));
    }
    // fractional admissible equality holds across a parameter sweep
    for (double gamma : {0.2, 0.4, 0.6, 0.8}) {
        const PhysicsParams p(2, 0.85, 2.5);
        if (gamma <= p.s_c()) continue;
        const auto [pp, qq] = lwp_exponents(p, gamma, LwpMode::RadialSubcritical);
        const double lhs = 2.0 * p.s / pp + p.dim / qq;
        CHECK(std::abs(lhs - 0.5 * p.dim) < 1e-12);
    }
    CHECK_THROWS_AS(lwp_exponents(PhysicsParams(1, 0.8, 2.0), 0.3,
                                  LwpMode::RadialSubcritical),
                    DomainError);
}
