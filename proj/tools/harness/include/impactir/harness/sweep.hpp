#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "impactir/bm25.hpp"
#include "impactir/index.hpp"
#include "impactir/metrics.hpp"
#include "impactir/retrieval.hpp"

namespace impactir::harness {

/// A query either as a term-id vector over the index vocabulary or, in BM25
/// mode, as raw tokens weighted against each index's statistics.
struct NamedQuery {
    std::string id;
    SparseVector vector;
    std::vector<std::string> tokens;
    bool text = false;
};

[[nodiscard]] SparseVector query_vector(NamedQuery const& query, ImpactIndex const& index);

struct SweepSpec {
    std::vector<std::size_t> document_k{0};
    std::vector<std::size_t> query_k{0};
    std::vector<double> thresholds{0.0, 0.2, 0.4, 0.6, 0.8};
    std::size_t top_n = 10;
    std::size_t eval_k = 10;
    /// Timed searches per query and cell; latency is their mean.
    std::size_t repetitions = 1;

    void validate() const;
};

struct SweepRow {
    std::size_t document_k = 0;
    std::size_t query_k = 0;
    double threshold = 0.0;
    double latency_mean_s = 0.0;
    double mrr = 0.0;
    std::optional<double> sss;
    double flops = 0.0;
    double candidates_pre_filter_mean = 0.0;
    double candidates_post_filter_mean = 0.0;
};

struct SweepInputs {
    ImpactIndex const& index;
    std::span<NamedQuery const> queries;
    Judgments const& judgments;
    EmbeddingStore const* embeddings = nullptr;
};

/// Evaluates one grid cell against an already-pruned index.
[[nodiscard]] RunResults run_queries(ImpactIndex const& index,
                                     std::span<NamedQuery const> queries,
                                     SearchParams const& params,
                                     std::size_t repetitions,
                                     std::size_t workers);

/// One row per (document_k, query_k, threshold), in that nesting order. Each
/// document_k > 0 materialises a statically pruned copy of `inputs.index`.
[[nodiscard]] std::vector<SweepRow> run_sweep(SweepInputs const& inputs, SweepSpec const& spec, std::size_t workers);

/// Column order of the sweep CSV.
[[nodiscard]] std::vector<std::string> const& sweep_csv_columns();

/// Names of the CSV columns holding wall-clock measurements.
[[nodiscard]] std::vector<std::string> const& sweep_latency_columns();

void write_sweep_csv(std::ostream& out, std::span<SweepRow const> rows);

}  // namespace impactir::harness
