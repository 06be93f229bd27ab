// Copyright 2026 The topophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic random streams. Only std::mt19937_64 (whose output sequence
// the standard pins down) is used as a source; every transformation to
// uniform, normal and Poisson variates is done here so a seed gives the
// same counts on every platform.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "topophase/angles.hpp"
#include "topophase/error.hpp"

namespace topophase {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Folds a list of words into one well-mixed seed.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    for (std::uint64_t w : words) h = splitmix64(h ^ splitmix64(w));
    return h;
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        // Box-Muller, one variate per call keeps the stream position simple
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline constexpr double kPoissonNormalThreshold = 1000.0;

/// Smallest k with F(k) >= u for a Poisson(mean) distribution. The search
/// starts at the mode, so e^{−mean} never has to be representable.
inline std::int64_t poisson_quantile(double mean, double u) {
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw Error(ErrorKind::InvalidArgument, "Poisson mean must be finite and positive");
    }
    std::int64_t k = static_cast<std::int64_t>(std::floor(mean));
    const double pk_mode = std::exp(-mean + static_cast<double>(k) * std::log(mean) -
                                    std::lgamma(static_cast<double>(k) + 1.0));

    // F(k) at the mode by summing the pmf downwards.
    double cdf = 0.0;
    {
        double p = pk_mode;
        for (std::int64_t j = k; j >= 0; --j) {
            cdf += p;
            p *= static_cast<double>(j) / mean;
            if (p == 0.0) break;
        }
    }

    double pk = pk_mode;
    if (u <= cdf) {
        // walk down while F(k−1) still covers u
        while (k > 0 && cdf - pk >= u) {
            cdf -= pk;
            pk *= static_cast<double>(k) / mean;
            --k;
        }
        return k;
    }
    while (cdf < u) {
        ++k;
        pk *= mean / static_cast<double>(k);
        cdf += pk;
        if (pk < 1e-300) break;  // tail exhausted by rounding
    }
    return k;
}

/// Inverse-transform sampling up to kPoissonNormalThreshold, rounded normal
/// approximation above it. One uniform (or one normal) per draw.
inline std::int64_t sample_poisson(double mean, RandomStream& rng) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw Error(ErrorKind::InvalidArgument, "Poisson mean must be finite and non-negative");
    }
    if (mean == 0.0) return 0;
    if (mean > kPoissonNormalThreshold) {
        const double x = std::round(mean + std::sqrt(mean) * rng.normal());
        return x < 0.0 ? 0 : static_cast<std::int64_t>(x);
    }
    return poisson_quantile(mean, rng.uniform());
}

}  // namespace topophase
