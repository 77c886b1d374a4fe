#pragma once

#include <span>
#include <vector>

namespace fnls {

// Quadrature for integrals over m in (0, infty) against the Balakrishnan
// measure. Nodes come from the substitution m = exp(sinh y) with uniform
// (trapezoid) spacing in y; the closed-form scalar symbol
//   x^s = (sin pi s / pi) \int_0^infty m^{s-1} x/(x+m) dm
// is checked at construction and failure throws.
class MQuadrature {
public:
    static MQuadrature build(double s, int order = kDefaultOrder);

    static constexpr int kDefaultOrder = 256;

    double s() const { return s_; }
    int order() const { return static_cast<int>(nodes_.size()); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    // w_k * m_k^s, the combination every virial integral uses
    std::span<const double> ms_weights() const { return ms_weights_; }

    // (sin pi s / pi) sum_k w_k m_k^{s-1} x/(x+m_k)
    double symbol_value(double x) const;

    // sum_k m_k^s w_k f(m_k) in fixed node order
    template <class F>
    double integrate_ms(F&& f) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            acc += ms_weights_[k] * f(nodes_[k]);
        return acc;
    }

private:
    MQuadrature() = default;
    double s_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> ms_weights_;
};

}  // namespace fnls
