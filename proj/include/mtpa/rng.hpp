#pragma once

#include <cstdint>
#include <random>

namespace mtpa {

// Deterministic random stream addressed by (seed, stream). The engine is
// std::mt19937_64, but every variate transformation is implemented here by
// hand so that a given (seed, stream) pair produces the same draws on any
// conforming standard library. Replica r of an ensemble uses stream r;
// single runs use stream 0.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform01();

    // Uniform on {0, ..., n-1}, unbiased (power-of-two mask rejection).
    // n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);

    // Uniform on [a, b).
    double uniform(double a, double b);

    // Standard normal (Marsaglia polar, one spare cached).
    double normal();

    // Gamma(shape, scale), shape > 0, scale > 0 (Marsaglia-Tsang; the
    // shape < 1 case uses the boosting identity).
    double gamma(double shape, double scale);

    // Poisson(mean), mean >= 0. Exact for all means: repeated splitting
    // Poisson(a + b) = Poisson(a) + Poisson(b) down to Knuth inversion.
    long poisson(double mean);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;

    long poisson_small(double mean);
};

} // namespace mtpa
