#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace fnls {

// Periodic box [-L, L)^d sampled on n points per axis, n a power of two.
// Wavenumbers are xi_k = pi k / L for integer k in [-n/2, n/2), stored in
// FFT index order (0, 1, ..., n/2-1, -n/2, ..., -1).
class Grid {
public:
    Grid(int dim, int points_per_dim, double half_length);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double half_length() const { return half_length_; }
    std::size_t size() const { return size_; }

    double spacing() const { return 2.0 * half_length_ / n_; }
    double cell_volume() const { return cell_volume_; }
    double box_volume() const { return box_volume_; }

    const std::vector<double>& axis_coords() const { return coords_; }
    const std::vector<double>& axis_freqs() const { return freqs_; }
    double max_freq() const { return max_freq_; }

    // |x|^2 and |xi|^2 per flat index, row-major over the axes.
    const std::vector<double>& radius2() const { return radius2_; }
    const std::vector<double>& freq2() const { return freq2_; }

    // Decompose a flat row-major index into per-axis indices.
    std::array<int, 3> unflatten(std::size_t flat) const;

    bool operator==(const Grid& other) const {
        return dim_ == other.dim_ && n_ == other.n_ &&
               half_length_ == other.half_length_;
    }

private:
    int dim_;
    int n_;
    double half_length_;
    std::size_t size_;
    double cell_volume_;
    double box_volume_;
    double max_freq_;
    std::vector<double> coords_;
    std::vector<double> freqs_;
    std::vector<double> radius2_;
    std::vector<double> freq2_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, int points_per_dim, double half_length);

enum class Criticality {
    MassSubcritical,
    MassCritical,
    Intercritical,
    EnergyCritical,
    EnergySupercritical,
};

const char* to_string(Criticality c);

// Model parameters (d, s, alpha) with the derived scaling exponents.
struct PhysicsParams {
    int dim = 1;
    double s = 0.7;
    double alpha = 2.0;

    PhysicsParams(int d, double s_, double alpha_);

    double s_c() const { return 0.5 * dim - 2.0 * s / alpha; }
    double alpha_mass_critical() const { return 4.0 * s / dim; }
    // Defined only when d > 2s.
    std::optional<double> alpha_energy_critical() const;
    Criticality criticality() const;
    // sigma = (s - s_c)/s_c = (4s - (d-2s)a) / (da - 4s); absent at mass-critical
    // alpha where the denominator vanishes.
    std::optional<double> sigma() const;
    // Lebesgue exponent 2d/(d-2s) of the energy-critical nonlinearity.
    double s_star() const;
};

}  // namespace fnls
