#include "fnls/invariants.hpp"

#include <cmath>

#include "fnls/errors.hpp"

namespace fnls {

ConservedReport conserved_report(const Field& field, const PhysicsParams& params) {
    ConservedReport r;
    r.mass = std::pow(norm_lp(field, 2.0), 2);
    r.hs_norm = norm_hdot(field, params.s);
    r.l_alpha2_norm = norm_lp(field, params.alpha + 2.0);
    const double grad2 = r.hs_norm * r.hs_norm;
    const double pot = std::pow(r.l_alpha2_norm, params.alpha + 2.0);
    const double d = params.dim, s = params.s, a = params.alpha;
    r.energy = 0.5 * grad2 - pot / (a + 2.0);
    r.K = 0.5 * s * grad2 - d * a / (4.0 * (a + 2.0)) * pot;
    return r;
}

CriticalityReport classify_criticality(const PhysicsParams& params) {
    CriticalityReport r{params.criticality(), params.s_c(), params.sigma(),
                        params.alpha_mass_critical(), params.alpha_energy_critical()};
    return r;
}

std::variant<AdmissiblePair, PairRejection> admissible_pair(int d, double s, double p,
                                                            double q, PairKind kind) {
    if (d < 1) throw DomainError("admissible_pair: d must be >= 1");
    if (!(p >= 2.0)) throw DomainError("admissible_pair: p must lie in [2, inf]");
    if (!(q >= 2.0) || std::isinf(q))
        throw DomainError("admissible_pair: q must lie in [2, inf)");

    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double tol = 1e-12;

    switch (kind) {
        case PairKind::Schrodinger: {
            if (p == 2.0 && std::isinf(q) && d == 2)
                return PairRejection{"(p,q,d) = (2,inf,2) excluded"};
            const double lhs = 2.0 * inv_p + d / q;
            if (lhs > 0.5 * d + tol)
                return PairRejection{"2/p + d/q <= d/2 violated"};
            break;
        }
        case PairKind::Radial: {
            if (d >= 2 && p == 2.0 &&
                std::abs(q - (4.0 * d - 2.0) / (2.0 * d - 3.0)) <= tol)
                return PairRejection{"(p,q) = (2, (4d-2)/(2d-3)) excluded"};
            const double lhs = 2.0 * inv_p + (2.0 * d - 1.0) / q;
            if (lhs > 0.5 * (2.0 * d - 1.0) + tol)
                return PairRejection{"2/p + (2d-1)/q <= (2d-1)/2 violated"};
            break;
        }
        case PairKind::Fractional: {
            if (d >= 2 && p == 2.0 &&
                std::abs(q - (4.0 * d - 2.0) / (2.0 * d - 3.0)) <= tol)
                return PairRejection{"(p,q) = (2, (4d-2)/(2d-3)) excluded"};
            const double lhs = 2.0 * s * inv_p + d / q;
            if (std::abs(lhs - 0.5 * d) > tol)
                return PairRejection{"2s/p + d/q = d/2 violated"};
            break;
        }
    }
    AdmissiblePair pair{p, q, 0.5 * d - d / q - 2.0 * s * inv_p, kind};
    return pair;
}

std::pair<double, double> lwp_exponents(const PhysicsParams& params, double gamma,
                                        LwpMode mode) {
    const double d = params.dim, s = params.s, a = params.alpha;
    if (params.dim < 2)
        throw DomainError("lwp_exponents: radial theory requires d >= 2");
    if (s < d / (2.0 * d - 1.0))
        throw DomainError("lwp_exponents: requires s >= d/(2d-1)");

    if (mode == LwpMode::RadialSubcritical) {
        if (!(gamma >= 0.0 && gamma < 0.5 * d))
            throw DomainError("lwp_exponents: gamma in [0, d/2) violated");
        if (!(gamma > params.s_c()))
            throw DomainError("lwp_exponents: gamma > s_c violated");
        const double p = 4.0 * s * (a + 2.0) / (a * (d - 2.0 * gamma));
        const double q = d * (a + 2.0) / (d + a * gamma);
        return {p, q};
    }

    if (!(params.s_c() >= 0.0))
        throw DomainError("lwp_exponents: critical mode requires s_c >= 0");
    const double p = a + 2.0;
    const double q = 2.0 * d * (a + 2.0) / (d * (a + 2.0) - 4.0 * s);
    return {p, q};
}

}  // namespace fnls
