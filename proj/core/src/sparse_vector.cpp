#include "impactir/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "impactir/error.hpp"

namespace impactir {

namespace {

auto find_entry(std::span<SparseEntry const> entries, TermId term)
{
    return std::lower_bound(entries.begin(), entries.end(), term, [](SparseEntry const& e, TermId t) {
        return e.term < t;
    });
}

}  // namespace

double SparseVector::weight(TermId term) const noexcept
{
    std::span<SparseEntry const> entries = m_entries;
    auto it = find_entry(entries, term);
    return (it != entries.end() && it->term == term) ? it->weight : 0.0;
}

bool SparseVector::contains(TermId term) const noexcept
{
    std::span<SparseEntry const> entries = m_entries;
    auto it = find_entry(entries, term);
    return it != entries.end() && it->term == term;
}

SparseVector from_pairs(std::span<std::pair<TermId, double> const> pairs)
{
    std::vector<SparseEntry> entries;
    entries.reserve(pairs.size());
    for (auto const& [term, weight] : pairs) {
        if (!std::isfinite(weight)) {
            throw Error(ErrorCode::NonFinite, "weight of term " + std::to_string(term.value));
        }
        if (weight < 0.0) {
            throw Error(ErrorCode::NegativeWeight, "weight of term " + std::to_string(term.value));
        }
        entries.push_back({term, weight});
    }
    std::sort(entries.begin(), entries.end(), [](auto const& a, auto const& b) { return a.term < b.term; });
    auto dup = std::adjacent_find(
        entries.begin(), entries.end(), [](auto const& a, auto const& b) { return a.term == b.term; });
    if (dup != entries.end()) {
        throw Error(ErrorCode::DuplicateTerm, "term " + std::to_string(dup->term.value));
    }
    std::erase_if(entries, [](auto const& e) { return e.weight == 0.0; });
    return SparseVector(std::move(entries));
}

SparseVector from_pairs(std::initializer_list<std::pair<TermId, double>> pairs)
{
    return from_pairs(std::span<std::pair<TermId, double> const>(pairs.begin(), pairs.size()));
}

double dot(SparseVector const& a, SparseVector const& b) noexcept
{
    double sum = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->term < ib->term) {
            ++ia;
        } else if (ib->term < ia->term) {
            ++ib;
        } else {
            sum += ia->weight * ib->weight;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

SparseVector top_k_truncate(SparseVector const& v, std::size_t k)
{
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "top_k_truncate requires k >= 1");
    }
    if (v.size() <= k) {
        return v;
    }
    std::vector<SparseEntry> kept(v.begin(), v.end());
    std::nth_element(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(k), kept.end(),
                     [](auto const& a, auto const& b) {
                         return a.weight != b.weight ? a.weight > b.weight : a.term < b.term;
                     });
    kept.resize(k);
    std::sort(kept.begin(), kept.end(), [](auto const& a, auto const& b) { return a.term < b.term; });
    return SparseVector(std::move(kept));
}

}  // namespace impactir
