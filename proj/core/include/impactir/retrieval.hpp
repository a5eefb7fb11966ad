#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "impactir/index.hpp"
#include "impactir/sparse_vector.hpp"
#include "impactir/vocabulary.hpp"

namespace impactir {

struct SearchParams {
    std::size_t top_n = 10;
    /// Keep only the query_k highest-weight query terms; 0 keeps all.
    std::size_t query_k = 0;
    /// Fraction of (distinct, post-pruning) query terms a document must match.
    double threshold = 0.0;
    /// Also count every document sharing at least one term with the query.
    /// This forces a full disjunctive traversal and is off by default.
    bool count_all_candidates = false;

    /// Throws `Error(InvalidArgument)` unless top_n >= 1 and threshold in [0, 1].
    void validate() const;
};

struct QueryPlan {
    SparseVector terms;
    std::size_t term_count = 0;
    std::size_t required_matches = 0;
};

/// Accumulator entry for one document.
struct Candidate {
    std::uint32_t doc = 0;
    double score = 0.0;
    std::uint32_t matched_terms = 0;

    friend bool operator==(Candidate const&, Candidate const&) = default;
};

/// Candidates ordered by ascending document ordinal.
using CandidateTable = std::vector<Candidate>;

struct SearchResult {
    std::string external_id;
    std::uint32_t ordinal = 0;
    double score = 0.0;
    std::uint32_t matched_terms = 0;

    friend bool operator==(SearchResult const&, SearchResult const&) = default;
};

struct SearchStats {
    /// Documents matching at least one query term; only known when the
    /// traversal was fully disjunctive.
    std::optional<std::size_t> candidates_pre_filter;
    std::size_t candidates_post_filter = 0;
    double seconds = 0.0;
};

struct SearchOutcome {
    std::vector<SearchResult> results;
    SearchStats stats;
};

/// Maps (term string, weight) pairs onto `vocab`. Strings the vocabulary does
/// not know are dropped.
[[nodiscard]] SparseVector map_query_terms(std::span<std::pair<std::string, double> const> terms,
                                           Vocabulary const& vocab);

[[nodiscard]] SparseVector select_query_terms(SparseVector const& query, std::size_t query_k);

/// max(1, ceil(threshold * term_count)) for term_count >= 1.
[[nodiscard]] std::size_t required_matches(std::size_t term_count, double threshold);

/// Applies query term selection, drops terms outside the index vocabulary and
/// derives the match requirement. Throws `Error(EmptyQuery)` if nothing is left.
[[nodiscard]] QueryPlan plan_query(SparseVector const& query, SearchParams const& params, ImpactIndex const& index);

/// Disjunctive document-at-a-time traversal over the plan's posting lists.
[[nodiscard]] CandidateTable retrieve_candidates(ImpactIndex const& index, QueryPlan const& plan);

[[nodiscard]] CandidateTable threshold_filter(CandidateTable candidates, QueryPlan const& plan);

/// Best `top_n` candidates by score, ties broken by ascending ordinal.
[[nodiscard]] std::vector<SearchResult> rank_top_n(ImpactIndex const& index,
                                                   std::span<Candidate const> candidates,
                                                   std::size_t top_n);

/// plan_query -> retrieve_candidates -> threshold_filter -> rank_top_n.
///
/// The traversal is fused: when the plan needs r of m terms, only the
/// m - r + 1 shortest posting lists generate candidates and the rest are
/// probed with skips. Results are identical to the staged composition.
[[nodiscard]] SearchOutcome search(ImpactIndex const& index, SparseVector const& query, SearchParams const& params);

}  // namespace impactir
