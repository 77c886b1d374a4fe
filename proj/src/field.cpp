#include "fnls/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

// FFTW plans keyed by (dim, n). Planning is not thread-safe; execution on
// fresh buffers via fftw_execute_dft is. FFTW_ESTIMATE keeps planning
// deterministic across runs.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void execute(const Grid& g, const cplx* in, cplx* out, int sign) {
        fftw_plan plan = get_plan(g, sign);
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    fftw_plan get_plan(const Grid& g, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_tuple(g.dim(), g.n(), sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> buf(g.size());
        int dims[3] = {g.n(), g.n(), g.n()};
        fftw_plan plan = fftw_plan_dft(
            g.dim(), dims, reinterpret_cast<fftw_complex*>(buf.data()),
            reinterpret_cast<fftw_complex*>(buf.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// Coefficients live at xi_k = pi k / L while FFTW indexes from x = 0, so each
// axis picks up a factor (-1)^k from the shift to x_0 = -L. With n even the
// parity of the FFT index equals the parity of the signed wavenumber.
void apply_axis_signs(const Grid& g, std::vector<cplx>& a) {
    const int n = g.n();
    for (std::size_t flat = 0; flat < a.size(); ++flat) {
        std::size_t rem = flat;
        int parity = 0;
        for (int ax = 0; ax < g.dim(); ++ax) {
            parity += static_cast<int>(rem % n);
            rem /= n;
        }
        if (parity & 1) a[flat] = -a[flat];
    }
}

}  // namespace

std::vector<cplx> dft_forward(const Grid& g, const std::vector<cplx>& values) {
    if (values.size() != g.size())
        throw StructuralError("dft_forward: field size " + std::to_string(values.size()) +
                              " does not match grid size " + std::to_string(g.size()));
    std::vector<cplx> out(g.size());
    PlanCache::instance().execute(g, values.data(), out.data(), FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& c : out) c *= scale;
    apply_axis_signs(g, out);
    return out;
}

std::vector<cplx> dft_backward(const Grid& g, const std::vector<cplx>& spectrum) {
    if (spectrum.size() != g.size())
        throw StructuralError("dft_backward: spectrum size does not match grid");
    std::vector<cplx> tmp = spectrum;
    apply_axis_signs(g, tmp);
    std::vector<cplx> out(g.size());
    PlanCache::instance().execute(g, tmp.data(), out.data(), FFTW_BACKWARD);
    return out;
}

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), cplx{0.0, 0.0}) {}

Field::Field(GridPtr grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw StructuralError("Field: values size does not match grid size");
}

Field Field::from_spectrum(GridPtr grid, std::vector<cplx> spectrum) {
    if (spectrum.size() != grid->size())
        throw StructuralError("Field::from_spectrum: spectrum size does not match grid");
    Field f(grid, dft_backward(*grid, spectrum));
    f.spectrum_ = std::move(spectrum);
    return f;
}

const std::vector<cplx>& Field::spectrum() const {
    if (!spectrum_) spectrum_ = dft_forward(*grid_, values_);
    return *spectrum_;
}

double Field::mass_fraction_outside(double r) const {
    const auto& r2 = grid_->radius2();
    const double rr = r * r;
    double outside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double m = std::norm(values_[i]);
        total += m;
        if (r2[i] > rr) outside += m;
    }
    return total > 0.0 ? outside / total : 0.0;
}

}  // namespace fnls
