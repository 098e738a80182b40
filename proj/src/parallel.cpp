#include "pleat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pleat {

unsigned default_workers() {
    if (const char* env = std::getenv("PLEAT_WORKERS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

}  // namespace pleat
