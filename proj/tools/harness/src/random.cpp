#include "impactir/harness/random.hpp"

#include <algorithm>

namespace impactir::harness {

ZipfSampler::ZipfSampler(std::size_t n, double exponent) : m_cdf(n)
{
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
        m_cdf[r] = total;
    }
    for (auto& c : m_cdf) {
        c /= total;
    }
}

std::size_t ZipfSampler::operator()(Rng& rng) const
{
    auto u = rng.uniform();
    auto it = std::upper_bound(m_cdf.begin(), m_cdf.end(), u);
    return std::min(static_cast<std::size_t>(it - m_cdf.begin()), m_cdf.size() - 1);
}

}  // namespace impactir::harness
