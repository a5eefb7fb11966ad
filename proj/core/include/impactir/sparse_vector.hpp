#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace impactir {

/// Ordinal of a term in a vocabulary.
struct TermId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(TermId, TermId) = default;
};

struct SparseEntry {
    TermId term;
    double weight = 0.0;

    friend bool operator==(SparseEntry const&, SparseEntry const&) = default;
};

/// Sparse term-weight vector. Entries are strictly ascending by term and every
/// stored weight is positive and finite; the only way to obtain a non-empty
/// vector is through `from_pairs`, which enforces this.
class SparseVector {
   public:
    SparseVector() = default;

    [[nodiscard]] std::span<SparseEntry const> entries() const noexcept { return m_entries; }
    [[nodiscard]] std::size_t size() const noexcept { return m_entries.size(); }
    [[nodiscard]] bool empty() const noexcept { return m_entries.empty(); }
    [[nodiscard]] auto begin() const noexcept { return m_entries.begin(); }
    [[nodiscard]] auto end() const noexcept { return m_entries.end(); }

    /// Weight stored for `term`, or 0 if absent.
    [[nodiscard]] double weight(TermId term) const noexcept;
    [[nodiscard]] bool contains(TermId term) const noexcept;

    friend bool operator==(SparseVector const&, SparseVector const&) = default;

   private:
    explicit SparseVector(std::vector<SparseEntry> entries) : m_entries(std::move(entries)) {}

    friend SparseVector from_pairs(std::span<std::pair<TermId, double> const>);
    friend SparseVector top_k_truncate(SparseVector const&, std::size_t);

    std::vector<SparseEntry> m_entries;
};

/// Builds a vector from unordered pairs. Zero weights are dropped; duplicate
/// terms, negative weights and NaN/inf raise `Error`.
[[nodiscard]] SparseVector from_pairs(std::span<std::pair<TermId, double> const> pairs);
[[nodiscard]] SparseVector from_pairs(std::initializer_list<std::pair<TermId, double>> pairs);

[[nodiscard]] double dot(SparseVector const& a, SparseVector const& b) noexcept;

/// Keeps the `k` largest-weight entries. Ties at the cutoff keep the smaller
/// term id. Requires k >= 1.
[[nodiscard]] SparseVector top_k_truncate(SparseVector const& v, std::size_t k);

}  // namespace impactir
