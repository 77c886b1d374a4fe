#include "fnls/criteria.hpp"

#include <cmath>

#include "fnls/errors.hpp"
#include "fnls/invariants.hpp"

namespace fnls {

CriteriaVerdict classify(const Field& u0, const PhysicsParams& params,
                         const ThresholdData& thresholds) {
    const Criticality cls = params.criticality();
    if (cls == Criticality::Intercritical &&
        thresholds.regime != Criticality::Intercritical)
        throw StructuralError("classify: intercritical data needs intercritical thresholds");
    if (cls == Criticality::EnergyCritical &&
        thresholds.regime != Criticality::EnergyCritical)
        throw StructuralError("classify: energy-critical data needs energy-critical thresholds");

    const ConservedReport cons = conserved_report(u0, params);
    CriteriaVerdict v;
    v.cls = cls;
    v.e_negative = cons.energy < 0.0;
    v.regularity_condition = std::ceil(params.s) <= params.alpha + 1.0;

    v.provenance["mass"] = cons.mass;
    v.provenance["energy"] = cons.energy;
    v.provenance["K"] = cons.K;
    v.provenance["hs_norm"] = cons.hs_norm;

    const bool mass_critical_or_above = params.alpha >= params.alpha_mass_critical() - 1e-12;

    if (cls == Criticality::Intercritical) {
        const double sigma = thresholds.sigma;
        const double e_product = cons.energy * std::pow(cons.mass, sigma);
        const double g_product = cons.hs_norm * std::pow(std::sqrt(cons.mass), sigma);
        v.intercritical_energy_product = e_product < thresholds.energy_threshold;
        v.intercritical_gradient_product = g_product > thresholds.x0;
        v.provenance["energy_product"] = e_product;
        v.provenance["energy_product_threshold"] = thresholds.energy_threshold;
        v.provenance["gradient_product"] = g_product;
        v.provenance["gradient_product_threshold"] = thresholds.x0;
    } else if (cls == Criticality::EnergyCritical) {
        v.energy_critical_energy = cons.energy < thresholds.energy_threshold;
        v.energy_critical_gradient = cons.hs_norm > thresholds.x0_direct;
        v.provenance["energy_threshold"] = thresholds.energy_threshold;
        v.provenance["gradient_threshold"] = thresholds.x0_direct;
    }

    v.criterion_met =
        (v.e_negative && mass_critical_or_above) ||
        (v.intercritical_energy_product.value_or(false) &&
         v.intercritical_gradient_product.value_or(false)) ||
        (v.energy_critical_energy.value_or(false) &&
         v.energy_critical_gradient.value_or(false));

    if (v.criterion_met) {
        if (cons.energy < 0.0) {
            v.delta = -params.s * cons.energy;
        } else {
            try {
                v.delta = delta_bound(u0, params, thresholds).delta;
            } catch (const DomainError&) {
            }
        }
        if (v.delta) v.provenance["delta"] = *v.delta;
    }
    return v;
}

DeltaBound delta_bound(const Field& u0, const PhysicsParams& params,
                       const ThresholdData& thresholds, std::optional<double> rho) {
    const Criticality cls = params.criticality();
    const ConservedReport cons = conserved_report(u0, params);
    const double d = params.dim, s = params.s, a = params.alpha;

    double level;  // E M^sigma (intercritical) or E (energy-critical)
    if (cls == Criticality::Intercritical) {
        if (thresholds.regime != Criticality::Intercritical)
            throw StructuralError("delta_bound: threshold regime mismatch");
        level = cons.energy * std::pow(cons.mass, thresholds.sigma);
    } else if (cls == Criticality::EnergyCritical) {
        if (thresholds.regime != Criticality::EnergyCritical)
            throw StructuralError("delta_bound: threshold regime mismatch");
        level = cons.energy;
    } else {
        throw DomainError("delta_bound: intercritical or energy-critical class required");
    }

    const double threshold = thresholds.energy_threshold;
    const double rho_max = std::min(1.0, 1.0 - level / threshold);
    if (!(rho_max > 0.0))
        throw DomainError("delta_bound: no admissible rho, data at or above threshold");

    DeltaBound out;
    if (rho) {
        if (!(*rho > 0.0 && *rho <= rho_max))
            throw DomainError("delta_bound: supplied rho violates the margin inequality");
        out.rho = *rho;
    } else {
        out.rho = rho_max;
    }

    if (cls == Criticality::Intercritical) {
        out.delta = (d * a - 4.0 * s) * out.rho / 8.0 * thresholds.gs_hdot2 *
                    std::pow(thresholds.gs_mass / cons.mass, thresholds.sigma);
    } else {
        out.delta = out.rho * s * s / (d - 2.0 * s) * thresholds.gs_hdot2;
    }
    return out;
}

}  // namespace fnls
