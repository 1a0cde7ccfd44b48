#include "bilocal/rng.hpp"

#include "bilocal/errors.hpp"

namespace bilocal {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double Rng::next_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

int Rng::categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvariantError("categorical weight is negative");
        total += w;
    }
    if (total <= 0.0) throw InvariantError("categorical weights sum to zero");

    const double u = next_double() * total;
    double acc = 0.0;
    const int n = static_cast<int>(weights.size());
    for (int i = 0; i < n; ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    // u landed in the round-off sliver past the last partial sum.
    for (int i = n - 1; i >= 0; --i)
        if (weights[i] > 0.0) return i;
    return n - 1;
}

std::vector<std::int64_t> Rng::multinomial(std::int64_t n,
                                           const std::vector<double>& weights) {
    std::vector<std::int64_t> counts(weights.size(), 0);
    for (std::int64_t k = 0; k < n; ++k)
        ++counts[categorical(weights)];
    return counts;
}

} // namespace bilocal
