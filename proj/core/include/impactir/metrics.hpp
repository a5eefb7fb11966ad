#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "impactir/index.hpp"
#include "impactir/sparse_vector.hpp"

namespace impactir {

/// query id -> relevant external doc ids (deduplicated, insertion order).
class Judgments {
   public:
    void add(std::string const& query_id, std::string const& doc_id);

    [[nodiscard]] std::map<std::string, std::vector<std::string>> const& queries() const noexcept { return m_relevant; }
    [[nodiscard]] std::vector<std::string> const* relevant(std::string const& query_id) const;
    [[nodiscard]] bool empty() const noexcept { return m_relevant.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return m_relevant.size(); }

   private:
    std::map<std::string, std::vector<std::string>> m_relevant;
};

/// External doc id -> dense embedding, all of one dimension, none zero.
class EmbeddingStore {
   public:
    void add(std::string doc_id, std::vector<double> embedding);

    /// Throws `Error(MissingEmbedding)` naming the doc id.
    [[nodiscard]] std::span<double const> at(std::string const& doc_id) const;
    [[nodiscard]] std::size_t dimension() const noexcept { return m_dimension; }
    [[nodiscard]] std::size_t size() const noexcept { return m_vectors.size(); }

   private:
    std::size_t m_dimension = 0;
    std::unordered_map<std::string, std::vector<double>> m_vectors;
};

struct RankedDoc {
    std::string external_id;
    double score = 0.0;

    friend bool operator==(RankedDoc const&, RankedDoc const&) = default;
};

struct QueryRun {
    std::vector<RankedDoc> ranking;
    double latency_seconds = 0.0;
    std::size_t candidates_pre_filter = 0;
    std::size_t candidates_post_filter = 0;
};

/// Per-query outcomes keyed by query id.
using RunResults = std::map<std::string, QueryRun>;

/// Mean reciprocal rank of the first relevant document within the top `k`,
/// over every judged query (missing queries score 0).
[[nodiscard]] double mrr_at_k(RunResults const& run, Judgments const& judgments, std::size_t k = 10);

[[nodiscard]] double cosine(std::span<double const> a, std::span<double const> b);

enum class SssAggregation { Max, Mean };

/// Semantic similarity at k. Each retrieved document scores its best (or
/// mean) cosine against the query's relevant documents; a query scores the
/// mean over what it retrieved, or 0 if it retrieved nothing.
[[nodiscard]] double sss_at_k(RunResults const& run,
                              Judgments const& judgments,
                              EmbeddingStore const& store,
                              std::size_t k = 10,
                              SssAggregation aggregation = SssAggregation::Max);

/// Expected number of shared activated terms per (query, document) pair:
/// sum_t p_Q(t) * p_D(t). Query terms outside the index vocabulary contribute
/// nothing.
[[nodiscard]] double flops_estimate(ImpactIndex const& index, std::span<SparseVector const> queries);

struct LatencyStats {
    double mean = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
    double max = 0.0;
};

/// Nearest-rank percentiles.
[[nodiscard]] LatencyStats latency_stats(std::span<double const> samples);

}  // namespace impactir
