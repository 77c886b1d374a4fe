#pragma once

#include <optional>
#include <string>

#include "fnls/field.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

// Conserved functionals of the flow evaluated on one state.
// hs_norm is the homogeneous seminorm ||(-Lap)^{s/2} u||_{L2};
// l_alpha2_norm is ||u||_{L^{alpha+2}}.
struct ConservedReport {
    double mass = 0.0;
    double energy = 0.0;
    double K = 0.0;
    double hs_norm = 0.0;
    double l_alpha2_norm = 0.0;
};

ConservedReport conserved_report(const Field& field, const PhysicsParams& params);

struct CriticalityReport {
    Criticality cls;
    double s_c;
    std::optional<double> sigma;
    double alpha_star;                       // 4s/d
    std::optional<double> alpha_star_upper;  // 4s/(d-2s), requires d > 2s
};

CriticalityReport classify_criticality(const PhysicsParams& params);

enum class PairKind { Schrodinger, Radial, Fractional };

struct AdmissiblePair {
    double p;
    double q;
    double gamma_pq;  // d/2 - d/q - 2s/p
    PairKind kind;
};

struct PairRejection {
    std::string condition;  // which admissibility condition failed
};

// Checks the exponent conditions for the requested kind; q may be infinity
// for schrodinger/radial kinds (represented as +inf, never used in norms).
std::variant<AdmissiblePair, PairRejection> admissible_pair(
    int d, double s, double p, double q, PairKind kind);

enum class LwpMode { RadialSubcritical, RadialCritical };

// Exponent pairs of the radial local theory; the result always satisfies the
// fractional admissible equality.
std::pair<double, double> lwp_exponents(const PhysicsParams& params, double gamma,
                                        LwpMode mode);

}  // namespace fnls
