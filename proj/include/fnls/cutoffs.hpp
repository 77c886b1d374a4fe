#pragma once

#include <array>
#include <memory>
#include <vector>

#include "fnls/field.hpp"

namespace fnls {

// Value and first four derivatives at a point, propagated exactly through
// the profile construction (Leibniz/chain-rule arithmetic, no differencing).
struct Jet4 {
    std::array<double, 5> d{};  // d[k] = k-th derivative

    double value() const { return d[0]; }
    double operator[](int k) const { return d[k]; }
};

enum class WeightKind { Psi, Phi };

// Radial profile underlying a cutoff weight.
//   Psi: vartheta(rho), 0 on [0,1/2], 1 on [1,inf), smooth bump blend between.
//   Phi: theta(rho) with theta' = 2 rho chi(rho), chi a smooth plateau equal
//        to 1 on [0,1] and 0 on [2,inf); hence theta = rho^2 on [0,1],
//        theta'' <= 2, theta'/rho <= 2, theta constant beyond 2.
class CutoffProfile {
public:
    explicit CutoffProfile(WeightKind kind);

    WeightKind kind() const { return kind_; }
    // theta(rho) (phi kind) or vartheta(rho) (psi kind) with derivatives 1..4.
    Jet4 eval(double rho) const;
    // Plateau value of theta; 1 for the psi profile.
    double terminal() const { return terminal_; }

private:
    double theta_integral(double rho) const;  // int_1^rho 2 t chi(t) dt
    WeightKind kind_;
    double terminal_;
};

// Cutoff weight sampled on a grid with analytic derivative fields.
// hessian is packed upper-triangular: (j,k), j <= k, at index
// j*d - j(j-1)/2 + (k-j).
struct Weight {
    GridPtr grid;
    double R = 0.0;
    WeightKind kind = WeightKind::Psi;
    std::vector<double> value;
    std::vector<std::vector<double>> grad;     // d fields
    std::vector<double> laplacian;
    std::vector<std::vector<double>> hessian;  // d(d+1)/2 fields
    std::vector<double> bilaplacian;
    double profile_terminal = 0.0;
    std::shared_ptr<const CutoffProfile> profile;

    static int hessian_index(int d, int j, int k);
    // Radial derivatives of the weight at radius r, orders 0..4.
    Jet4 radial_jet(double r) const;
};

// psi_R(x) = vartheta(|x|/R): 0 inside |x| <= R/2, 1 outside |x| >= R.
Weight make_psi(GridPtr grid, double R);

// phi_R(x) = R^2 theta(|x|/R): equal to |x|^2 for |x| <= R, constant for
// |x| >= 2R, with 2 - theta'' >= 0, 2 - phi'/r >= 0, 2d - Lap phi >= 0.
Weight make_phi(GridPtr grid, double R);

struct WeightPropertyReport {
    // Pointwise minima of the three nonnegativity expressions (phi kind).
    double min_second_derivative_gap = 0.0;  // min of 2 - theta''(r/R)
    double min_slope_gap = 0.0;              // min of 2 - phi'(r)/r
    double min_laplacian_gap = 0.0;          // min of 2d - Lap phi
    // Largest |derivative| found outside the claimed supports.
    double support_violation_grad = 0.0;     // grad, hessian outside |x| <= 2R
    double support_violation_high = 0.0;     // orders 3,4 outside R <= |x| <= 2R
    // sup |d^k/dr^k phi_R| * R^{k-2} over the grid, k = 0..4.
    std::array<double, 5> scaled_sup_norms{};
};

WeightPropertyReport verify_weight_properties(const Weight& w);

}  // namespace fnls
