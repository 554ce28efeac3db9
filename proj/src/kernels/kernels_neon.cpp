// AArch64 variants. NEON is architecturally mandatory there, so no runtime
// probe is needed beyond the build target.

#include "lvvmf/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lvvmf::kernels::neon {

void horner_batch(const HornerBatch& args) {
    const std::size_t n = args.coeff_re.size();
    const std::size_t points = args.q_re.size();
    if (args.coeff_im.size() != n || args.q_im.size() != points || args.out_re.size() != points ||
        args.out_im.size() != points)
        throw std::invalid_argument("horner_batch: span size mismatch");

    std::size_t p = 0;
    for (; p + 2 <= points; p += 2) {
        const float64x2_t qr = vld1q_f64(&args.q_re[p]);
        const float64x2_t qi = vld1q_f64(&args.q_im[p]);
        float64x2_t ar = vdupq_n_f64(0.0);
        float64x2_t ai = vdupq_n_f64(0.0);
        for (std::size_t k = n; k-- > 0;) {
            const float64x2_t cr = vdupq_n_f64(args.coeff_re[k]);
            const float64x2_t ci = vdupq_n_f64(args.coeff_im[k]);
            const float64x2_t tr = vfmaq_f64(vfmsq_f64(cr, ai, qi), ar, qr);
            const float64x2_t ti = vfmaq_f64(vfmaq_f64(ci, ai, qr), ar, qi);
            ar = tr;
            ai = ti;
        }
        vst1q_f64(&args.out_re[p], ar);
        vst1q_f64(&args.out_im[p], ai);
    }
    if (p < points) {
        const std::size_t rest = points - p;
        scalar::horner_batch({args.coeff_re, args.coeff_im, args.q_re.subspan(p, rest),
                              args.q_im.subspan(p, rest), args.out_re.subspan(p, rest),
                              args.out_im.subspan(p, rest)});
    }
}

double max_abs(std::span<const std::complex<double>> z) {
    const double* raw = reinterpret_cast<const double*>(z.data());
    float64x2_t best = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const float64x2_t v = vld1q_f64(raw + 2 * i);
        const float64x2_t sq = vmulq_f64(v, v);
        best = vmaxq_f64(best, vdupq_n_f64(vaddvq_f64(sq)));
    }
    return std::sqrt(vgetq_lane_f64(best, 0));
}

Moments moments(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("moments: span size mismatch");
    float64x2_t sx = vdupq_n_f64(0.0), sy = vdupq_n_f64(0.0);
    float64x2_t sxx = vdupq_n_f64(0.0), sxy = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= x.size(); i += 2) {
        const float64x2_t vx = vld1q_f64(&x[i]);
        const float64x2_t vy = vld1q_f64(&y[i]);
        sx = vaddq_f64(sx, vx);
        sy = vaddq_f64(sy, vy);
        sxx = vfmaq_f64(sxx, vx, vx);
        sxy = vfmaq_f64(sxy, vx, vy);
    }
    Moments m;
    m.n = static_cast<double>(x.size());
    m.sx = vaddvq_f64(sx);
    m.sy = vaddvq_f64(sy);
    m.sxx = vaddvq_f64(sxx);
    m.sxy = vaddvq_f64(sxy);
    for (; i < x.size(); ++i) {
        m.sx += x[i];
        m.sy += y[i];
        m.sxx += x[i] * x[i];
        m.sxy += x[i] * y[i];
    }
    return m;
}

}  // namespace lvvmf::kernels::neon

#endif
