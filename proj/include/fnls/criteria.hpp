#pragma once

#include <map>
#include <optional>
#include <string>

#include "fnls/ground_states.hpp"

namespace fnls {

// Structured classification of initial data against the blow-up conditions.
// Comparisons use the sigma-product form (E M^sigma against the ground-state
// value, gradient-mass product against x0); strict inequalities, so exact
// threshold data reports not_covered.
struct CriteriaVerdict {
    Criticality cls = Criticality::Intercritical;
    bool e_negative = false;
    std::optional<bool> intercritical_energy_product;
    std::optional<bool> intercritical_gradient_product;
    std::optional<bool> energy_critical_energy;
    std::optional<bool> energy_critical_gradient;
    std::optional<double> delta;
    bool criterion_met = false;
    // gamma = s always satisfies the regularity condition ceil(gamma) <=
    // alpha+1; recorded for provenance only.
    bool regularity_condition = true;
    std::map<std::string, double> provenance;
};

CriteriaVerdict classify(const Field& u0, const PhysicsParams& params,
                         const ThresholdData& thresholds);

struct DeltaBound {
    double delta = 0.0;
    double rho = 0.0;  // the margin actually used (maximal when not supplied)
};

// Lower bound on -K along the flow. rho, when supplied, must satisfy
// E(u0) M^sigma(u0) <= (1-rho) E(Q) M^sigma(Q) (intercritical) resp.
// E(u0) <= (1-rho) E(W); otherwise the maximal admissible rho (capped at 1)
// is computed. Rejects data at or above the threshold.
DeltaBound delta_bound(const Field& u0, const PhysicsParams& params,
                       const ThresholdData& thresholds,
                       std::optional<double> rho = std::nullopt);

}  // namespace fnls
