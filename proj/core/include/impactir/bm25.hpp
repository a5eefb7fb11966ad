#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "impactir/index.hpp"
#include "impactir/sparse_vector.hpp"
#include "impactir/vocabulary.hpp"

namespace impactir {

// BM25 expressed as impacts: the document side stores the saturated,
// length-normalised tf component and the query side carries idf, so the
// sparse dot product of the two equals the classic BM25 score.

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// tf * (k1 + 1) / (tf + k1 * (1 - b + b * doc_len / avgdl)). Requires tf >= 1.
[[nodiscard]] double bm25_doc_impact(std::uint32_t tf, std::uint32_t doc_len, double avgdl, Bm25Params params = {});

/// ln(1 + (N - df + 0.5) / (df + 0.5)). Requires 1 <= df <= N.
[[nodiscard]] double bm25_query_weight(std::uint64_t df, std::uint64_t doc_count);

struct TextDocument {
    std::string external_id;
    std::vector<std::string> tokens;
};

/// A text collection turned into BM25 document vectors.
struct Bm25Corpus {
    Vocabulary vocab;
    std::vector<CorpusDocument> docs;
    /// Document frequency per TermId, before any pruning.
    std::vector<std::size_t> document_frequency;
    double average_length = 0.0;
};

[[nodiscard]] Bm25Corpus bm25_vectorize_corpus(std::span<TextDocument const> docs, Bm25Params params = {});

/// Document-side vector: one impact per distinct token. Interns new tokens.
[[nodiscard]] SparseVector bm25_document_vector(std::span<std::string const> tokens,
                                                Vocabulary& vocab,
                                                double average_length,
                                                Bm25Params params = {});

/// Query-side vector: one idf weight per distinct token known to `vocab`;
/// unknown tokens and tokens with zero document frequency are skipped.
[[nodiscard]] SparseVector bm25_query_vector(std::span<std::string const> tokens,
                                             Vocabulary const& vocab,
                                             std::span<std::size_t const> document_frequency,
                                             std::size_t doc_count);

/// Query-side vector using the document frequencies stored in `index`.
[[nodiscard]] SparseVector bm25_query_vector(std::span<std::string const> tokens, ImpactIndex const& index);

}  // namespace impactir
