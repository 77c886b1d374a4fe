#include "fnls/grid.hpp"

#include <cmath>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int points_per_dim, double half_length)
    : dim_(dim), n_(points_per_dim), half_length_(half_length) {
    if (dim < 1 || dim > 3)
        throw DomainError("Grid: dim must be 1, 2 or 3, got " + std::to_string(dim));
    if (!is_power_of_two(n_) || n_ < 16)
        throw DomainError("Grid: points_per_dim must be a power of two >= 16, got " +
                          std::to_string(n_));
    if (!(half_length > 0.0))
        throw DomainError("Grid: half_length must be positive");

    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
    cell_volume_ = std::pow(spacing(), dim_);
    box_volume_ = std::pow(2.0 * half_length_, dim_);

    coords_.resize(n_);
    freqs_.resize(n_);
    const double h = spacing();
    for (int i = 0; i < n_; ++i) {
        coords_[i] = -half_length_ + h * i;
        const int k = (i < n_ / 2) ? i : i - n_;
        freqs_[i] = M_PI * k / half_length_;
    }
    max_freq_ = M_PI * (n_ / 2) / half_length_;

    radius2_.resize(size_);
    freq2_.resize(size_);
    for (std::size_t flat = 0; flat < size_; ++flat) {
        std::size_t rem = flat;
        double r2 = 0.0, k2 = 0.0;
        for (int a = dim_ - 1; a >= 0; --a) {
            const int i = static_cast<int>(rem % n_);
            rem /= n_;
            r2 += coords_[i] * coords_[i];
            k2 += freqs_[i] * freqs_[i];
        }
        radius2_[flat] = r2;
        freq2_[flat] = k2;
    }
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return idx;
}

GridPtr make_grid(int dim, int points_per_dim, double half_length) {
    return std::make_shared<Grid>(dim, points_per_dim, half_length);
}

const char* to_string(Criticality c) {
    switch (c) {
        case Criticality::MassSubcritical: return "mass-subcritical";
        case Criticality::MassCritical: return "mass-critical";
        case Criticality::Intercritical: return "intercritical";
        case Criticality::EnergyCritical: return "energy-critical";
        case Criticality::EnergySupercritical: return "energy-supercritical";
    }
    return "unknown";
}

PhysicsParams::PhysicsParams(int d, double s_, double alpha_)
    : dim(d), s(s_), alpha(alpha_) {
    if (dim < 1) throw DomainError("PhysicsParams: dim must be >= 1");
    if (!(s > 0.5 && s < 1.0))
        throw DomainError("PhysicsParams: s must lie in (1/2, 1), got " +
                          std::to_string(s));
    if (!(alpha > 0.0)) throw DomainError("PhysicsParams: alpha must be positive");
}

std::optional<double> PhysicsParams::alpha_energy_critical() const {
    if (dim <= 2.0 * s) return std::nullopt;
    return 4.0 * s / (dim - 2.0 * s);
}

Criticality PhysicsParams::criticality() const {
    const double a_star = alpha_mass_critical();
    const double tol = 1e-12 * std::max(1.0, alpha);
    if (alpha < a_star - tol) return Criticality::MassSubcritical;
    if (std::abs(alpha - a_star) <= tol) return Criticality::MassCritical;
    if (auto a_upper = alpha_energy_critical()) {
        if (std::abs(alpha - *a_upper) <= tol) return Criticality::EnergyCritical;
        if (alpha > *a_upper) return Criticality::EnergySupercritical;
    }
    return Criticality::Intercritical;
}

std::optional<double> PhysicsParams::sigma() const {
    const double denom = dim * alpha - 4.0 * s;
    if (std::abs(denom) <= 1e-12 * std::max(1.0, dim * alpha)) return std::nullopt;
    return (4.0 * s - (dim - 2.0 * s) * alpha) / denom;
}

double PhysicsParams::s_star() const {
    if (dim <= 2.0 * s)
        throw DomainError("s_star requires d > 2s");
    return 2.0 * dim / (dim - 2.0 * s);
}

}  // namespace fnls
