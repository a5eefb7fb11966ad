#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "impactir/formats.hpp"
#include "impactir/metrics.hpp"

namespace impactir::harness {

/// Knobs for the synthetic collection. Documents belong to topics; each
/// document mixes Zipf-distributed topic terms with Zipf-distributed global
/// background terms. A query is a noisy subset of one "relevant" document's
/// terms plus a few expansion terms drawn from the same topic.
struct SyntheticParams {
    std::uint64_t seed = 1;
    std::size_t doc_count = 1000;
    std::size_t vocab_size = 5000;
    std::size_t query_count = 100;

    std::size_t topic_count = 50;
    std::size_t terms_per_topic = 300;
    double topic_term_share = 0.6;
    /// Weight scale of background terms relative to topic terms.
    double background_weight = 0.15;
    double zipf_exponent = 1.0;
    std::size_t min_doc_terms = 20;
    std::size_t max_doc_terms = 60;

    std::size_t min_query_doc_terms = 4;
    std::size_t max_query_doc_terms = 10;
    std::size_t min_query_expansion_terms = 4;
    std::size_t max_query_expansion_terms = 10;

    std::size_t embedding_dim = 32;
    double embedding_noise = 0.25;

    /// Throws `Error(InvalidArgument)` on inconsistent settings.
    void validate() const;
};

struct SyntheticData {
    std::vector<VectorRecord> docs;
    std::vector<VectorRecord> queries;
    /// (query id, doc id) pairs in query order.
    std::vector<std::pair<std::string, std::string>> judgments;
    /// (doc id, embedding) in document order.
    std::vector<std::pair<std::string, std::vector<double>>> embeddings;
};

[[nodiscard]] SyntheticData generate_synthetic(SyntheticParams const& params);

struct SyntheticPaths {
    std::filesystem::path corpus;
    std::filesystem::path queries;
    std::filesystem::path judgments;
    std::filesystem::path embeddings;
};

[[nodiscard]] SyntheticPaths synthetic_paths(std::filesystem::path const& directory);

/// Writes corpus.tsv, queries.tsv, qrels.tsv and embeddings.tsv.
SyntheticPaths write_synthetic(SyntheticData const& data, std::filesystem::path const& directory);

}  // namespace impactir::harness
