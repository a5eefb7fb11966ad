#include "impactir/vocabulary.hpp"

#include <limits>

#include "impactir/error.hpp"

namespace impactir {

Vocabulary Vocabulary::numeric(std::size_t size)
{
    Vocabulary vocab;
    for (std::size_t i = 0; i < size; ++i) {
        vocab.add(std::to_string(i));
    }
    return vocab;
}

TermId Vocabulary::intern(std::string_view term)
{
    if (auto id = find(term)) {
        return *id;
    }
    return add(std::string(term));
}

TermId Vocabulary::add(std::string term)
{
    if (m_terms.size() >= std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidArgument, "vocabulary is full");
    }
    auto id = static_cast<std::uint32_t>(m_terms.size());
    auto [it, inserted] = m_ids.emplace(term, id);
    if (!inserted) {
        throw Error(ErrorCode::DuplicateTerm, "vocabulary term '" + term + "'");
    }
    m_terms.push_back(std::move(term));
    return TermId{id};
}

std::optional<TermId> Vocabulary::find(std::string_view term) const
{
    auto it = m_ids.find(term);
    if (it == m_ids.end()) {
        return std::nullopt;
    }
    return TermId{it->second};
}

}  // namespace impactir
