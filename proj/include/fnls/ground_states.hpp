#pragma once

#include "fnls/field.hpp"
#include "fnls/invariants.hpp"

namespace fnls {

// Converged elliptic profile (Q intercritical/mass-critical, W energy
// critical) with the norms and identity residuals the thresholds need.
struct GroundStateSolution {
    Field profile;
    PhysicsParams params;
    double l2_norm = 0.0;
    double hdot_s_norm = 0.0;
    double nonlinear_norm = 0.0;  // L^{alpha+2} for Q, L^{s*} for W
    // Q: relative residuals of the two identities
    //   ||(-Lap)^{s/2}Q||^2 = d a/(2s(a+2)) ||Q||^{a+2}_{a+2}
    //                       = d a/(4s-(d-2s)a) ||Q||^2.
    // W: residual_1 is ||(-Lap)^{s/2}W||^2 vs ||W||^{s*}_{s*} (zero by the
    // normalization), residual_2 the relative L2 residual of the elliptic
    // equation itself, reported as a discretization diagnostic.
    double pohozaev_residual_1 = 0.0;
    double pohozaev_residual_2 = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Petviashvili iteration for (-Lap)^s Q + Q = |Q|^alpha Q in spectral form.
// Accepts mass-critical and intercritical alpha (4s/d <= alpha < 4s/(d-2s)).
// The default seed is a unit-mass Gaussian; a degenerate seed (zero field)
// fails immediately.
GroundStateSolution solve_Q(GridPtr grid, const PhysicsParams& params,
                            double tol = 1e-13, int max_iter = 2000,
                            const Field* initial_guess = nullptr);

// Sharp constants and threshold quantities derived from a converged profile.
struct ThresholdData {
    Criticality regime = Criticality::Intercritical;
    double sharp_constant = 0.0;    // C_GN (intercritical) or C_SE (energy-critical)
    double x0 = 0.0;                // critical point of f (resp. y0 of g)
    double energy_threshold = 0.0;  // E(Q) M^sigma(Q) (resp. E(W))
    double sigma = 0.0;             // intercritical only
    // cross-check routes
    double sharp_constant_alt = 0.0;  // C_GN from the Pohozaev closed form
    double x0_direct = 0.0;           // ||(-Lap)^{s/2}Q|| ||Q||^sigma (resp. Hdot norm of W)
    // delta-formula inputs
    double gs_hdot2 = 0.0;  // ||(-Lap)^{s/2} profile||^2
    double gs_mass = 0.0;   // ||profile||^2
};

ThresholdData intercritical_thresholds(const GroundStateSolution& q);

// Energy-critical profile kappa (1+|x|^2)^{-(d-2s)/2} with kappa normalized so
// that ||(-Lap)^{s/2}W||^2 = ||W||^{s*}_{s*} holds on the grid.
GroundStateSolution make_W(GridPtr grid, const PhysicsParams& params);

ThresholdData energy_critical_thresholds(const GroundStateSolution& w);

// f(x) = x^2/2 - C_GN x^{da/2s}/(a+2) (intercritical) or
// g(y) = y^2/2 - C_SE^{s*} y^{s*}/s* (energy-critical), by regime.
double threshold_function(double x, const ThresholdData& data,
                          const PhysicsParams& params);

}  // namespace fnls
