#include "lvvmf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lvvmf {

unsigned worker_count() {
    if (const char* env = std::getenv("LVVMF_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace lvvmf
