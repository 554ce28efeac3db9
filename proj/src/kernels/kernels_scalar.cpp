#include "lvvmf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lvvmf::kernels::scalar {

void horner_batch(const HornerBatch& args) {
    const std::size_t n = args.coeff_re.size();
    const std::size_t points = args.q_re.size();
    if (args.coeff_im.size() != n || args.q_im.size() != points || args.out_re.size() != points ||
        args.out_im.size() != points)
        throw std::invalid_argument("horner_batch: span size mismatch");
    for (std::size_t p = 0; p < points; ++p) {
        const double qr = args.q_re[p];
        const double qi = args.q_im[p];
        double ar = 0.0;
        double ai = 0.0;
        for (std::size_t k = n; k-- > 0;) {
            const double tr = ar * qr - ai * qi + args.coeff_re[k];
            const double ti = ar * qi + ai * qr + args.coeff_im[k];
            ar = tr;
            ai = ti;
        }
        args.out_re[p] = ar;
        args.out_im[p] = ai;
    }
}

double max_abs(std::span<const std::complex<double>> z) {
    double best = 0.0;
    for (const auto& v : z) {
        const double m = v.real() * v.real() + v.imag() * v.imag();
        best = std::max(best, m);
    }
    return std::sqrt(best);
}

Moments moments(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("moments: span size mismatch");
    Moments m;
    m.n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        m.sx += x[i];
        m.sy += y[i];
        m.sxx += x[i] * x[i];
        m.sxy += x[i] * y[i];
    }
    return m;
}

}  // namespace lvvmf::kernels::scalar
