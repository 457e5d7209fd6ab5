#include "hamperc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hamperc {

unsigned default_threads()
{
    if (const char* env = std::getenv("HP_THREADS")) {
        try {
            const long value = std::stol(env);
            if (value > 0) {
                return static_cast<unsigned>(value);
            }
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace hamperc
