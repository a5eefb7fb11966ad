#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace impactir::harness {

/// Seeded generator with distributions defined here rather than by the
/// standard library, whose distributions differ between implementations.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n >= 1.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    /// Uniform integer in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

    /// Standard normal (Box-Muller).
    double normal()
    {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t next() { return m_engine(); }

   private:
    std::mt19937_64 m_engine;
};

/// Samples ranks 0..n-1 with probability proportional to 1 / (rank + 1)^s.
class ZipfSampler {
   public:
    ZipfSampler(std::size_t n, double exponent);

    std::size_t operator()(Rng& rng) const;
    [[nodiscard]] std::size_t size() const noexcept { return m_cdf.size(); }

   private:
    std::vector<double> m_cdf;
};

}  // namespace impactir::harness
