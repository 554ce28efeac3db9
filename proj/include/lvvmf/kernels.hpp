#pragma once

// Data-parallel double-precision inner loops. Every kernel has a scalar
// reference implementation and SIMD variants (AVX2+FMA on x86-64, NEON on
// AArch64); the variant is chosen once at runtime from CPU features and can
// be pinned with LVVMF_SIMD=scalar|avx2|neon.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace lvvmf::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Best variant supported by this CPU and build.
Isa detect_isa();

/// Currently selected variant (detect_isa() unless overridden).
Isa active_isa();

/// Override the selection; throws std::invalid_argument if `isa` is not
/// available in this build or on this CPU.
void set_active_isa(Isa isa);

bool isa_available(Isa isa);

/// Horner evaluation of p(q) = sum_n c[n] q^n at a batch of points, all in
/// structure-of-arrays layout. c has N coefficients (real/imag parts);
/// q and out have one entry per point.
struct HornerBatch {
    std::span<const double> coeff_re;
    std::span<const double> coeff_im;
    std::span<const double> q_re;
    std::span<const double> q_im;
    std::span<double> out_re;
    std::span<double> out_im;
};

void horner_batch(const HornerBatch& args);

/// max_i |z_i|, computed as sqrt(max |z_i|^2).
double max_abs(std::span<const std::complex<double>> z);

/// Accumulated first and second moments of (x, y) pairs.
struct Moments {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
};

Moments moments(std::span<const double> x, std::span<const double> y);

// Direct access to individual variants for equivalence testing.
namespace scalar {
void horner_batch(const HornerBatch& args);
double max_abs(std::span<const std::complex<double>> z);
Moments moments(std::span<const double> x, std::span<const double> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void horner_batch(const HornerBatch& args);
double max_abs(std::span<const std::complex<double>> z);
Moments moments(std::span<const double> x, std::span<const double> y);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void horner_batch(const HornerBatch& args);
double max_abs(std::span<const std::complex<double>> z);
Moments moments(std::span<const double> x, std::span<const double> y);
}  // namespace neon
#endif

}  // namespace lvvmf::kernels
