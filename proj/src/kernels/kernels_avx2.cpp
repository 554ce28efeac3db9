// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "lvvmf/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lvvmf::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

void horner_batch(const HornerBatch& args) {
    const std::size_t n = args.coeff_re.size();
    const std::size_t points = args.q_re.size();
    if (args.coeff_im.size() != n || args.q_im.size() != points || args.out_re.size() != points ||
        args.out_im.size() != points)
        throw std::invalid_argument("horner_batch: span size mismatch");

    std::size_t p = 0;
    // Four evaluation points per register, structure-of-arrays.
    for (; p + 4 <= points; p += 4) {
        const __m256d qr = _mm256_loadu_pd(&args.q_re[p]);
        const __m256d qi = _mm256_loadu_pd(&args.q_im[p]);
        __m256d ar = _mm256_setzero_pd();
        __m256d ai = _mm256_setzero_pd();
        for (std::size_t k = n; k-- > 0;) {
            const __m256d cr = _mm256_set1_pd(args.coeff_re[k]);
            const __m256d ci = _mm256_set1_pd(args.coeff_im[k]);
            const __m256d tr = _mm256_fmadd_pd(ar, qr, _mm256_fnmadd_pd(ai, qi, cr));
            const __m256d ti = _mm256_fmadd_pd(ar, qi, _mm256_fmadd_pd(ai, qr, ci));
            ar = tr;
            ai = ti;
        }
        _mm256_storeu_pd(&args.out_re[p], ar);
        _mm256_storeu_pd(&args.out_im[p], ai);
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
    const std::size_t count = z.size();
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    // Two complex values per load: [re0, im0, re1, im1].
    for (; i + 2 <= count; i += 2) {
        const __m256d v = _mm256_loadu_pd(raw + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        // hadd within 128-bit lanes gives [|z0|^2, |z0|^2, |z1|^2, |z1|^2].
        best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < count; ++i) {
        const double re = z[i].real();
        const double im = z[i].imag();
        m = std::max(m, re * re + im * im);
    }
    return std::sqrt(m);
}

Moments moments(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("moments: span size mismatch");
    __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd();
    __m256d sxx = _mm256_setzero_pd(), sxy = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const __m256d vx = _mm256_loadu_pd(&x[i]);
        const __m256d vy = _mm256_loadu_pd(&y[i]);
        sx = _mm256_add_pd(sx, vx);
        sy = _mm256_add_pd(sy, vy);
        sxx = _mm256_fmadd_pd(vx, vx, sxx);
        sxy = _mm256_fmadd_pd(vx, vy, sxy);
    }
    Moments m;
    m.n = static_cast<double>(x.size());
    m.sx = hsum(sx);
    m.sy = hsum(sy);
    m.sxx = hsum(sxx);
    m.sxy = hsum(sxy);
    for (; i < x.size(); ++i) {
        m.sx += x[i];
        m.sy += y[i];
        m.sxx += x[i] * x[i];
        m.sxy += x[i] * y[i];
    }
    return m;
}

}  // namespace lvvmf::kernels::avx2
