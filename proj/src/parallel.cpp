#include "padicosc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace padicosc {

unsigned worker_count() {
    if (const char* env = std::getenv("PADIC_OSC_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace padicosc
