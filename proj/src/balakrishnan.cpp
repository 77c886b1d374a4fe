#include "fnls/balakrishnan.hpp"

#include <cmath>

#include "fnls/errors.hpp"
#include "fnls/spectral.hpp"

namespace fnls {

namespace {

// Physical-space quadrature sum of w(x) |f(x)|^2.
double weighted_mass(const std::vector<double>& w, const std::vector<cplx>& f,
                     double cell) {
    double acc = 0.0, carry = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = w[i] * std::norm(f[i]) - carry;
        const double t = acc + x;
        carry = (t - acc) - x;
        acc = t;
    }
    return cell * acc;
}

cplx weighted_pairing(const std::vector<double>& w, const std::vector<cplx>& a,
                      const std::vector<cplx>& b, double cell) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx t = w[i] * std::conj(a[i]) * b[i];
        re += t.real();
        im += t.imag();
    }
    return cell * cplx{re, im};
}

// Spectra of u_m and its gradient components for one resolvent node.
struct AuxNode {
    std::vector<cplx> values;                 // u_m physical
    std::vector<std::vector<cplx>> grad;      // d physical gradient fields
};

AuxNode make_aux_node(const Field& u, double m, double c_s, bool with_gradient) {
    const Grid& g = u.grid();
    const auto& spec = u.spectrum();
    const auto& k2 = g.freq2();
    std::vector<cplx> aux_spec(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        aux_spec[i] = c_s * spec[i] / (k2[i] + m);

    AuxNode node;
    node.values = dft_backward(g, aux_spec);
    if (with_gradient) {
        const int n = g.n();
        const auto& freqs = g.axis_freqs();
        node.grad.resize(g.dim());
        std::vector<cplx> tmp(spec.size());
        for (int axis = 0; axis < g.dim(); ++axis) {
            std::size_t stride = 1;
            for (int a = g.dim() - 1; a > axis; --a) stride *= n;
            for (std::size_t i = 0; i < spec.size(); ++i) {
                const int ki = static_cast<int>((i / stride) % n);
                tmp[i] = aux_spec[i] * cplx(0.0, freqs[ki]);
            }
            node.grad[axis] = dft_backward(g, tmp);
        }
    }
    return node;
}

void require_same_grid(const Field& u, const Weight& w) {
    if (!(u.grid() == *w.grid))
        throw StructuralError("field and weight live on different grids");
}

// The continuum integrals of Lap phi and Lap^2 phi vanish. Their grid samples
// carry an aliasing-level mean, and inside the m-integrals that mean couples
// to the resolvent zero mode whose m^{s-2} tail diverges as m -> 0; the
// quadrature would amplify it by orders of magnitude. Enforce the zero mean
// before pairing against |u_m|^2.
std::vector<double> mean_free(const std::vector<double>& w) {
    double acc = 0.0;
    for (double x : w) acc += x;
    const double mean = acc / static_cast<double>(w.size());
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] - mean;
    return out;
}

}  // namespace

double auxiliary_normalization(double s) { return std::sqrt(std::sin(M_PI * s) / M_PI); }

Field auxiliary_field(const Field& u, double m, const PhysicsParams& params) {
    if (!(m > 0.0)) throw DomainError("auxiliary_field: m must be positive");
    const double c_s = auxiliary_normalization(params.s);
    const Grid& g = u.grid();
    const auto& spec = u.spectrum();
    const auto& k2 = g.freq2();
    std::vector<cplx> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        out[i] = c_s * spec[i] / (k2[i] + m);
    return Field::from_spectrum(u.grid_ptr(), std::move(out));
}

AuxiliaryIdentityResult auxiliary_identity_check(const Field& u,
                                                 const PhysicsParams& params,
                                                 const MQuadrature& quad) {
    const double c_s = auxiliary_normalization(params.s);
    const Grid& g = u.grid();
    const double cell = g.cell_volume();

    const auto nodes = quad.nodes();
    const auto msw = quad.ms_weights();
    double lhs = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const AuxNode node = make_aux_node(u, nodes[k], c_s, true);
        double grad2 = 0.0;
        for (const auto& comp : node.grad) {
            double acc = 0.0;
            for (const auto& c : comp) acc += std::norm(c);
            grad2 += cell * acc;
        }
        lhs += msw[k] * grad2;
    }

    AuxiliaryIdentityResult r;
    r.lhs = lhs;
    const double hs = norm_hdot(u, params.s);
    r.rhs = params.s * hs * hs;
    r.residual = std::abs(r.lhs - r.rhs) / std::max(r.rhs, 1e-300);
    return r;
}

VirialReport virial_actions(const Field& u, const Weight& weight,
                            const PhysicsParams& params, const MQuadrature& quad) {
    require_same_grid(u, weight);
    const Grid& g = u.grid();
    const int d = g.dim();
    const double cell = g.cell_volume();
    const double c_s = auxiliary_normalization(params.s);

    VirialReport rep;
    rep.V_value = weighted_mass(weight.value, u.values(), cell);

    // M = 2 Im int conj(u) grad phi . grad u
    std::vector<Field> grad_u;
    grad_u.reserve(d);
    for (int a = 0; a < d; ++a)
        grad_u.push_back(apply_multiplier(u, GradientComponent{a + 1}));
    cplx pairing{0.0, 0.0};
    for (int a = 0; a < d; ++a)
        pairing += weighted_pairing(weight.grad[a], u.values(), grad_u[a].values(), cell);
    rep.M_value = 2.0 * pairing.imag();

    const auto nodes = quad.nodes();
    const auto msw = quad.ms_weights();
    const std::vector<double> lap0 = mean_free(weight.laplacian);
    const std::vector<double> bilap0 = mean_free(weight.bilaplacian);
    cplx dv_accum{0.0, 0.0};
    double bilap_accum = 0.0;
    double hess_accum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const AuxNode node = make_aux_node(u, nodes[k], c_s, true);

        // dV integrand: int Lap phi |u_m|^2 + 2 int conj(u_m) grad phi . grad u_m
        cplx z{weighted_mass(lap0, node.values, cell), 0.0};
        cplx mixed{0.0, 0.0};
        for (int a = 0; a < d; ++a)
            mixed += weighted_pairing(weight.grad[a], node.values, node.grad[a], cell);
        z += 2.0 * mixed;
        dv_accum += msw[k] * z;

        bilap_accum += msw[k] * weighted_mass(bilap0, node.values, cell);

        double hess_sum = 0.0;
        for (int j = 0; j < d; ++j)
            for (int kk = 0; kk < d; ++kk) {
                const auto& h = weight.hessian[Weight::hessian_index(d, j, kk)];
                hess_sum +=
                    weighted_pairing(h, node.grad[j], node.grad[kk], cell).real();
            }
        hess_accum += msw[k] * hess_sum;
    }

    // dV/dt = -i * dv_accum; the assembled sum is purely imaginary up to
    // quadrature error, so the real answer is Im(dv_accum).
    rep.dV_dt_rhs = dv_accum.imag();
    rep.dV_imag_residual =
        std::abs(dv_accum.real()) / std::max(std::abs(rep.dV_dt_rhs), 1e-300);

    rep.term_bilaplacian = -bilap_accum;
    rep.term_hessian = 4.0 * hess_accum;

    const double a = params.alpha;
    std::vector<double> upow(u.values().size());
    for (std::size_t i = 0; i < upow.size(); ++i)
        upow[i] = std::pow(std::abs(u.values()[i]), a + 2.0);
    double nl = 0.0;
    for (std::size_t i = 0; i < upow.size(); ++i) nl += weight.laplacian[i] * upow[i];
    rep.term_nonlinear = -2.0 * a / (a + 2.0) * cell * nl;

    rep.dM_dt_rhs = rep.term_bilaplacian + rep.term_hessian + rep.term_nonlinear;
    return rep;
}

LemmaBoundReport lemma_bound_report(const Field& u, const Weight& weight,
                                    const PhysicsParams& params,
                                    const MQuadrature& quad) {
    require_same_grid(u, weight);
    const Grid& g = u.grid();
    const int d = g.dim();
    const double cell = g.cell_volume();
    const double s = params.s;
    const double c_s = auxiliary_normalization(s);

    auto sup = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    double grad_sup = 0.0;
    for (const auto& comp : weight.grad) grad_sup = std::max(grad_sup, sup(comp));
    const double lap_sup = sup(weight.laplacian);
    const double bilap_sup = sup(weight.bilaplacian);
    const double grad_w1 = grad_sup + lap_sup;  // ||grad phi||_{W^{1,inf}} surrogate

    const double l2 = norm_lp(u, 2.0);
    const double hdot_half = norm_hdot(u, 0.5);
    const double h_half_sq = l2 * l2 + hdot_half * hdot_half;
    const double hs = norm_h(u, s);

    LemmaBoundReport rep;

    std::vector<Field> grad_u;
    for (int a = 0; a < d; ++a)
        grad_u.push_back(apply_multiplier(u, GradientComponent{a + 1}));
    cplx pairing{0.0, 0.0};
    for (int a = 0; a < d; ++a)
        pairing += weighted_pairing(weight.grad[a], u.values(), grad_u[a].values(), cell);
    rep.gradient_pairing.lhs = std::abs(pairing);
    rep.gradient_pairing.rhs =
        grad_w1 * (hdot_half * hdot_half + l2 * hdot_half);

    const auto nodes = quad.nodes();
    const auto msw = quad.ms_weights();
    const std::vector<double> lap0 = mean_free(weight.laplacian);
    const std::vector<double> bilap0 = mean_free(weight.bilaplacian);
    double lap_term = 0.0, bilap_term = 0.0;
    cplx mixed_term{0.0, 0.0};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const AuxNode node = make_aux_node(u, nodes[k], c_s, true);
        lap_term += msw[k] * weighted_mass(lap0, node.values, cell);
        bilap_term += msw[k] * weighted_mass(bilap0, node.values, cell);
        cplx mixed{0.0, 0.0};
        for (int a = 0; a < d; ++a)
            mixed += weighted_pairing(weight.grad[a], node.values, node.grad[a], cell);
        mixed_term += msw[k] * mixed;
    }

    rep.laplacian_weighted.lhs = std::abs(lap_term);
    rep.laplacian_weighted.rhs =
        std::pow(lap_sup, 2.0 * s - 1.0) * std::pow(grad_sup, 2.0 - 2.0 * s) * l2 * l2;

    rep.mixed_pairing.lhs = std::abs(mixed_term);
    rep.mixed_pairing.rhs = grad_w1 * h_half_sq;

    rep.bilaplacian_weighted.lhs = std::abs(bilap_term);
    rep.bilaplacian_weighted.rhs =
        std::pow(bilap_sup, s) * std::pow(lap_sup, 1.0 - s) * l2 * l2;

    const VirialReport vr = virial_actions(u, weight, params, quad);
    rep.virial_rate.lhs = std::abs(vr.dV_dt_rhs);
    rep.virial_rate.rhs = grad_w1 * hs * hs;

    for (auto* e : {&rep.gradient_pairing, &rep.laplacian_weighted, &rep.mixed_pairing,
                    &rep.bilaplacian_weighted, &rep.virial_rate})
        e->ratio = e->rhs > 0.0 ? e->lhs / e->rhs : 0.0;
    return rep;
}

}  // namespace fnls
