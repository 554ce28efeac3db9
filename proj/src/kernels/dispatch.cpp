#include "lvvmf/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lvvmf::kernels {

namespace {

Isa initial_isa() {
    if (const char* forced = std::getenv("LVVMF_SIMD")) {
        const std::string name(forced);
        if (name == "scalar") return Isa::scalar;
        if (name == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
        if (name == "neon" && isa_available(Isa::neon)) return Isa::neon;
    }
    return detect_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa detect_isa() {
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_available(isa))
        throw std::invalid_argument("SIMD variant not available: " + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

void horner_batch(const HornerBatch& args) {
    switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: return avx2::horner_batch(args);
#endif
#if defined(__aarch64__)
        case Isa::neon: return neon::horner_batch(args);
#endif
        default: return scalar::horner_batch(args);
    }
}

double max_abs(std::span<const std::complex<double>> z) {
    switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: return avx2::max_abs(z);
#endif
#if defined(__aarch64__)
        case Isa::neon: return neon::max_abs(z);
#endif
        default: return scalar::max_abs(z);
    }
}

Moments moments(std::span<const double> x, std::span<const double> y) {
    switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2: return avx2::moments(x, y);
#endif
#if defined(__aarch64__)
        case Isa::neon: return neon::moments(x, y);
#endif
        default: return scalar::moments(x, y);
    }
}

}  // namespace lvvmf::kernels
