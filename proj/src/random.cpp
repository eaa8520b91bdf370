#include "ddclock/random.hpp"

namespace ddclock {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label) {
    Rng r(master_seed ^ fnv1a64(label));
    r.next_u64(); // decorrelate nearby master seeds
    return r.next_u64();
}

} // namespace ddclock
