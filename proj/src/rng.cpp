#include "mtpa/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mtpa {

namespace {

// splitmix64; used only to expand (seed, stream) into seed material.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xA3EC647659359ACDull * (stream + 1));
    std::uint32_t material[16];
    for (int i = 0; i < 8; ++i) {
        std::uint64_t w = splitmix64(state);
        material[2 * i] = static_cast<std::uint32_t>(w);
        material[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(material, material + 16);
    engine_.seed(seq);
}

std::uint64_t RngStream::next_u64() {
    return engine_();
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    if (n == 1) return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t r = next_u64() & mask;
        if (r < n) return r;
    }
}

double RngStream::uniform(double a, double b) {
    return a + (b - a) * uniform01();
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_ = true;
    return u * f;
}

double RngStream::gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0)
        throw std::invalid_argument("gamma: shape and scale must be positive");
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a+1) * U^{1/a}
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return scale * d * v;
    }
}

long RngStream::poisson_small(double mean) {
    double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01();
    } while (p > limit);
    return k - 1;
}

long RngStream::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    long total = 0;
    while (mean > 30.0) {
        total += poisson_small(20.0);
        mean -= 20.0;
    }
    return total + poisson_small(mean);
}

} // namespace mtpa
