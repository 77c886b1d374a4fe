#include "fnls/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "fnls/errors.hpp"

namespace fnls {

MQuadrature MQuadrature::build(double s, int order) {
    if (!(s > 0.5 && s < 1.0))
        throw DomainError("MQuadrature: s must lie in (1/2, 1)");
    if (order < 32) throw DomainError("MQuadrature: order must be >= 32");

    // Truncation of the y-range: the lower tail of the symbol integrand is
    // O((m/x)^s), the upper tail O((x/m)^{1-s}); both are pushed below 1e-9
    // over the validated x-range, capped to keep exp(sinh y) finite.
    const double m_lo = 50.0;
    const double m_hi = std::min(700.0, std::log(1e4) + 21.0 / (1.0 - s));
    const double y_lo = -std::asinh(m_lo);
    const double y_hi = std::asinh(m_hi);
    const double h = (y_hi - y_lo) / (order - 1);

    MQuadrature q;
    q.s_ = s;
    q.nodes_.resize(order);
    q.weights_.resize(order);
    q.ms_weights_.resize(order);
    for (int k = 0; k < order; ++k) {
        const double y = y_lo + h * k;
        const double m = std::exp(std::sinh(y));
        double w = h * std::cosh(y) * m;
        if (k == 0 || k == order - 1) w *= 0.5;
        q.nodes_[k] = m;
        q.weights_[k] = w;
        q.ms_weights_[k] = w * std::pow(m, s);
    }

    // Self-validation on a 50-point logarithmic grid.
    double worst_err = 0.0, worst_x = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
        const double err = std::abs(q.symbol_value(x) - std::pow(x, s)) / std::pow(x, s);
        if (err > worst_err) {
            worst_err = err;
            worst_x = x;
        }
    }
    if (worst_err > 1e-8) {
        std::ostringstream msg;
        msg << "MQuadrature(s=" << s << ", order=" << order
            << "): symbol validation failed, worst relative error " << worst_err
            << " at x = " << worst_x;
        throw QuadratureError(msg.str());
    }
    return q;
}

double MQuadrature::symbol_value(double x) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const double m = nodes_[k];
        acc += weights_[k] * std::pow(m, s_ - 1.0) * x / (x + m);
    }
    return std::sin(M_PI * s_) / M_PI * acc;
}

}  // namespace fnls
