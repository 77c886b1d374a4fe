#pragma once

#include <variant>

#include "fnls/field.hpp"

namespace fnls {

enum class Direction { ToSpectral, ToPhysical };

// Raw-data DFT: the returned Field holds the transformed samples (spectral
// coefficients for ToSpectral). to_physical(to_spectral(u)) == u.
Field transform(const Field& f, Direction dir);

// Fourier multipliers. frac_laplacian(beta) has symbol |xi|^{2 beta}, so
// beta = s/2 realizes (-Lap)^{s/2} and beta = 1/4 realizes |grad|^{1/2}.
// resolvent(m) has symbol 1/(|xi|^2 + m) — the c_s prefactor of the auxiliary
// field is applied by the caller. gradient_component(j) has symbol i xi_j.
struct FracLaplacian { double beta; };
struct Resolvent { double m; };
struct GradientComponent { int axis; };
using Symbol = std::variant<FracLaplacian, Resolvent, GradientComponent>;

Field apply_multiplier(const Field& f, const Symbol& symbol);

// Norms. Lp by physical quadrature with weight (2L/n)^d (p = inf gives the
// grid sup); Hdot and H on the spectral side via Plancherel.
double norm_lp(const Field& f, double p);
double norm_hdot(const Field& f, double nu);
double norm_h(const Field& f, double nu);

// L2 pairing <f, g> = integral of conj(f) g by physical quadrature.
cplx inner_product(const Field& f, const Field& g);

struct RescaleResult {
    Field field;
    bool support_warning = false;      // rescaled support spilled out of the box
    double outside_fraction = 0.0;     // offending mass fraction of the input
};

// x -> lambda^{2s/alpha} u(lambda x) on the same grid for dyadic lambda = 2^k.
// Exact index remapping for lambda > 1, spectral midpoint upsampling for
// lambda < 1; either way this is the trigonometric interpolant evaluated at
// the mapped points.
RescaleResult rescale(const Field& f, double lambda, const PhysicsParams& params);

// Zero all modes with any axis index beyond two thirds of Nyquist. Returns the
// removed fraction of the spectral L2 mass.
Field dealias_two_thirds(const Field& f, double* removed_fraction = nullptr);

}  // namespace fnls
