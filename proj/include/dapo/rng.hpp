#ifndef DAPO_RNG_HPP
#define DAPO_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace dapo {

/// Child-seed derivation: FNV-1a over (master, role tag, index) with a
/// splitmix64 finalizer. One master seed deterministically fans out to
/// every generator, optimizer restart, sparsifier and dropout trial.
std::uint64_t derive_seed(std::uint64_t master, std::string_view role, std::uint64_t index);

/// Uniform integer in [0, bound), rejection-sampled. Implemented here so
/// sequences do not depend on standard-library distribution internals.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double rng_unit(std::mt19937_64& rng);

/// Uniform double in [lo, hi).
double rng_range(std::mt19937_64& rng, double lo, double hi);

} // namespace dapo

#endif // DAPO_RNG_HPP
