#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "impactir/sparse_vector.hpp"

namespace impactir {

/// Bijection between term strings and dense `TermId`s, in insertion order.
class Vocabulary {
   public:
    Vocabulary() = default;

    /// Terms named "0", "1", ..., "size-1".
    [[nodiscard]] static Vocabulary numeric(std::size_t size);

    /// Returns the id of `term`, inserting it if unseen.
    TermId intern(std::string_view term);

    /// Appends a term that must not already exist.
    TermId add(std::string term);

    [[nodiscard]] std::optional<TermId> find(std::string_view term) const;
    [[nodiscard]] std::string const& term(TermId id) const { return m_terms.at(id.value); }
    [[nodiscard]] std::size_t size() const noexcept { return m_terms.size(); }
    [[nodiscard]] std::vector<std::string> const& terms() const noexcept { return m_terms; }

    friend bool operator==(Vocabulary const& a, Vocabulary const& b) { return a.m_terms == b.m_terms; }

   private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };

    std::vector<std::string> m_terms;
    std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> m_ids;
};

}  // namespace impactir
