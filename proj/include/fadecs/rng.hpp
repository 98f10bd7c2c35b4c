// fadecs - sparse signal recovery over fading multiple-access channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numbers>
#include <random>

namespace fadecs {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a child seed from a master seed and a path of coordinate words.
/// Depends only on the path contents, never on any loop structure at the
/// call site, so work items may be scheduled in any order.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master ^ 0xd1b54a32d192ed03ULL;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t p : path) {
        s ^= p + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
        out = splitmix64(s);
    }
    return out;
}

/// Canonical bit pattern of a double, for use in seed paths.
inline std::uint64_t seed_word(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u;
}

/// Deterministic sampler on top of a raw mt19937_64 stream.
///
/// The standard distribution adaptors (std::normal_distribution etc.) are
/// implementation-defined, so every law is implemented here explicitly:
/// identical seeds give bit-identical draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on (0, 1]; never returns 0, so log(u) is always finite.
    double uniform01() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// P(true) = p exactly for p in {k/2^53}; p=1 always fires, p=0 never.
    bool bernoulli(double p) { return uniform01() <= p; }

    /// Box-Muller; consumes exactly two uniforms per draw.
    double normal(double stddev) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return stddev * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Inverse-CDF Rayleigh draw, h = nu * sqrt(-2 ln u).
    double rayleigh(double nu) {
        return nu * std::sqrt(-2.0 * std::log(uniform01()));
    }

    /// Exponential magnitude with a fair sign; avoids the log(0) corner of
    /// the folded inverse CDF.
    double laplace(double scale) {
        const double mag = -scale * std::log(uniform01());
        return bernoulli(0.5) ? -mag : mag;
    }

    /// Integer in [0, n). The modulo bias is < n * 2^-64, irrelevant for the
    /// index ranges used here.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace fadecs
