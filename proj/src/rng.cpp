#include "dapo/rng.hpp"

namespace dapo {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xffu;
        h *= kFnvPrime;
    }
}

std::uint64_t splitmix64(std::uint64_t h) {
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view role, std::uint64_t index) {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, master);
    for (unsigned char c : role) {
        h ^= c;
        h *= kFnvPrime;
    }
    fnv_mix(h, index);
    return splitmix64(h);
}

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0)
        return 0;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double rng_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng_unit(rng);
}

} // namespace dapo
