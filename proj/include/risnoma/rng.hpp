#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "risnoma/units.hpp"

namespace risnoma {

// splitmix64: used to expand (seed, stream index) into engine seeds so that
// every Monte Carlo trial owns an independent, reproducible stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

// Deterministic random stream. The raw engine is std::mt19937_64 (bit-exact
// across platforms); all transforms on top are hand-rolled so the sequence
// does not depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        return Rng(derive_stream_seed(seed, trial));
    }

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection-free modulo is biased; n is tiny here, so reject the tail.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do { x = engine_(); } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; second deviate cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(two_pi * u2);
        have_cached_ = true;
        return r * std::cos(two_pi * u2);
    }

    // Gamma(shape, scale=1) via Marsaglia-Tsang, with the usual boost for
    // shape < 1.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = std::pow(uniform_positive(), 1.0 / shape);
            return u * gamma(shape + 1.0);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_positive();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    // Nakagami amplitude: |h| = sqrt(X) with X ~ Gamma(shape=f, scale=omega/f),
    // so E{|h|^2} = omega.
    double nakagami(double shape, double omega) {
        if (shape < 0.5) throw std::domain_error("nakagami: shape must be >= 0.5");
        if (omega <= 0.0) throw std::domain_error("nakagami: spread must be > 0");
        return std::sqrt(gamma(shape) * omega / shape);
    }

    // Fading coefficient: Nakagami amplitude with uniform phase.
    std::complex<double> fading(double shape, double omega) {
        const double amp = nakagami(shape, omega);
        const double phase = uniform(0.0, two_pi);
        return std::polar(amp, phase);
    }

private:
    double uniform_positive() {
        double u;
        do { u = uniform(); } while (u <= 0.0);
        return u;
    }

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace risnoma
