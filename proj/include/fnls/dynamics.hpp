#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fnls/balakrishnan.hpp"
#include "fnls/field.hpp"
#include "fnls/invariants.hpp"
#include "fnls/quadrature.hpp"

namespace fnls {

struct StrangOptions {
    bool apply_linear = true;
    bool apply_nonlinear = true;
    bool dealias = true;
};

// Symmetric splitting for i u_t - (-Lap)^s u = -|u|^alpha u: half-step
// nonlinear phase rotation (exact, modulus-preserving), full spectral linear
// step (exact), half-step nonlinear. A 2/3-rule truncation follows each
// nonlinear sub-step; the removed spectral mass fraction is reported.
class StrangStepper {
public:
    StrangStepper(GridPtr grid, const PhysicsParams& params, double dt,
                  StrangOptions options = {});

    // alias_tail, when non-null, receives the removed mass fraction.
    Field step(const Field& u, double* alias_tail = nullptr) const;

    double dt() const { return dt_; }

private:
    GridPtr grid_;
    PhysicsParams params_;
    double dt_;
    StrangOptions options_;
    std::vector<cplx> linear_phase_;
    std::vector<bool> keep_mask_;
};

Field strang_step(const Field& u, double dt, const PhysicsParams& params,
                  double* alias_tail = nullptr, StrangOptions options = {});

struct Monitors {
    std::vector<double> exterior_radii;  // psi_R radii; first one also sets phi_R
    int virial_every = 0;                // VirialReport on every k-th sample; 0 = off
    const MQuadrature* quad = nullptr;   // required when virial_every > 0
};

struct TrajectoryRecord {
    double t = 0.0;
    ConservedReport conserved;
    std::vector<double> exterior_mass;  // sharp integral over {|x| >= R}, per R
    std::vector<double> v_psi;          // V_{psi_R}(u), per R
    std::optional<VirialReport> virial;
    double mass_drift = 0.0;
    double alias_tail = 0.0;   // max removed fraction per step since last sample
    bool support_flag = false; // mass fraction outside |x| > L/2 above 1e-8
};

struct BlowupReport {
    enum class Stop { GradientGrowth, DriftBreach, TEndReached };
    bool triggered = false;
    double t_star_estimate = 0.0;
    double growth_factor = 0.0;
    std::optional<double> fit_exponent;
    Stop stopping_reason = Stop::TEndReached;
};

const char* to_string(BlowupReport::Stop s);

struct EvolveResult {
    std::vector<TrajectoryRecord> records;
    BlowupReport report;
    Field final_state;
};

EvolveResult evolve(const Field& u0, const PhysicsParams& params, double dt,
                    double t_end, int sample_every, const Monitors& monitors,
                    double growth_threshold = 20.0, double drift_threshold = 1e-6);

struct ExteriorMass {
    double indicator_integral = 0.0;  // int_{|x| >= R} |u|^2
    double v_psi = 0.0;               // V_{psi_R}(u); never smaller
};

ExteriorMass exterior_mass(const Field& u, double R);

// One evaluation of the localized virial estimate
//   dM_{phi_R}/dt <= 16 K(u) + C R^{-2} ||u||^2_{L2(|x|>=R)}
//                          + C ||u||^{eta(alpha+2)}_{L2(|x|>=R)}
// with eta from 1/(alpha+2) = eta/2 + (1-eta)/q.
struct VirialEstimateRecord {
    double lhs = 0.0;  // dM_dt_rhs with the phi_R weight
    double k16 = 0.0;  // 16 K(u)
    double remainder_r2 = 0.0;
    double remainder_eta = 0.0;
    double eta = 0.0;
    double c_required = 0.0;  // smallest C making the estimate hold
};

VirialEstimateRecord virial_estimate_monitor(const Field& u, double R,
                                             const PhysicsParams& params,
                                             const MQuadrature& quad,
                                             double q_exponent);

// Least-squares slope of log hs vs log t; rejects short or non-increasing
// windows.
double growth_exponent_fit(std::span<const double> t, std::span<const double> hs);

}  // namespace fnls
