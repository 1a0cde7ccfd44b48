#pragma once

// Deterministic random sampling. The standard distribution classes are
// implementation-defined, so every draw here is built directly on the raw
// mt19937_64 stream; identical seeds give identical results on every
// platform and standard library.

#include <cstdint>
#include <random>
#include <vector>

namespace bilocal {

// Cheap stateless mixer used to derive independent substream seeds from a
// master seed and an index.
std::uint64_t splitmix64(std::uint64_t x);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0,1) with 53 random bits.
    double next_double();

    // Index i with probability weights[i] / sum(weights). Weights must be
    // nonnegative with a positive sum.
    int categorical(const std::vector<double>& weights);

    // n independent categorical draws tallied per index.
    std::vector<std::int64_t> multinomial(std::int64_t n,
                                          const std::vector<double>& weights);

private:
    std::mt19937_64 gen_;
};

} // namespace bilocal
