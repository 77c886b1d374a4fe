#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

using cplx = std::complex<double>;

// Complex state on a Grid. The physical samples are authoritative; the
// spectral coefficients (convention u(x) = sum_k uhat_k e^{i xi_k . x}) are
// cached on first use. All operations on Fields are pure.
class Field {
public:
    explicit Field(GridPtr grid);
    Field(GridPtr grid, std::vector<cplx> values);

    static Field from_spectrum(GridPtr grid, std::vector<cplx> spectrum);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    const std::vector<cplx>& values() const { return values_; }
    const std::vector<cplx>& spectrum() const;  // lazy transform of values

    bool has_cached_spectrum() const { return spectrum_.has_value(); }

    // Fraction of the L2 mass carried by grid points with |x| > r.
    double mass_fraction_outside(double r) const;

private:
    GridPtr grid_;
    std::vector<cplx> values_;
    mutable std::optional<std::vector<cplx>> spectrum_;
};

// Raw DFT with our normalization and coordinate phases. forward maps physical
// samples to coefficients uhat_k; backward inverts it exactly.
std::vector<cplx> dft_forward(const Grid& g, const std::vector<cplx>& values);
std::vector<cplx> dft_backward(const Grid& g, const std::vector<cplx>& spectrum);

}  // namespace fnls
