#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "impactir/sparse_vector.hpp"
#include "impactir/vocabulary.hpp"

namespace impactir {

struct DocRecord {
    std::string external_id;
    std::uint32_t ordinal = 0;
    /// Number of terms kept after static pruning.
    std::uint32_t term_count = 0;
    /// Token count before vectorization (BM25 length).
    std::uint32_t raw_length = 0;

    friend bool operator==(DocRecord const&, DocRecord const&) = default;
};

struct Posting {
    std::uint32_t doc = 0;
    float impact = 0.0F;

    friend bool operator==(Posting const&, Posting const&) = default;
};

using PostingList = std::vector<Posting>;

/// One input document for `build_index`.
struct CorpusDocument {
    std::string external_id;
    SparseVector vector;
    std::uint32_t raw_length = 0;
};

/// Immutable inverted impact index: per-term posting lists sorted by document
/// ordinal, plus the document table and collection statistics.
class ImpactIndex {
   public:
    ImpactIndex() = default;

    /// Validates all structural invariants; throws `Error(InvariantViolation)`
    /// when they do not hold.
    ImpactIndex(Vocabulary vocab, std::vector<DocRecord> docs, std::vector<PostingList> postings);

    [[nodiscard]] Vocabulary const& vocabulary() const noexcept { return m_vocab; }
    [[nodiscard]] std::span<DocRecord const> docs() const noexcept { return m_docs; }
    [[nodiscard]] DocRecord const& doc(std::uint32_t ordinal) const { return m_docs.at(ordinal); }
    [[nodiscard]] std::size_t doc_count() const noexcept { return m_docs.size(); }
    [[nodiscard]] std::size_t vocab_size() const noexcept { return m_vocab.size(); }

    [[nodiscard]] std::span<Posting const> postings(TermId term) const { return m_postings.at(term.value); }
    [[nodiscard]] std::size_t document_frequency(TermId term) const { return postings(term).size(); }
    /// df(t) / doc_count, or 0 for an empty index.
    [[nodiscard]] double activation_probability(TermId term) const;
    [[nodiscard]] double average_raw_length() const noexcept { return m_avg_raw_length; }
    [[nodiscard]] std::size_t total_postings() const noexcept { return m_total_postings; }

    /// Per-document vectors rebuilt from the posting lists, indexed by ordinal.
    [[nodiscard]] std::vector<SparseVector> document_vectors() const;

    friend bool operator==(ImpactIndex const& a, ImpactIndex const& b)
    {
        return a.m_vocab == b.m_vocab && a.m_docs == b.m_docs && a.m_postings == b.m_postings;
    }

   private:
    Vocabulary m_vocab;
    std::vector<DocRecord> m_docs;
    std::vector<PostingList> m_postings;
    double m_avg_raw_length = 0.0;
    std::size_t m_total_postings = 0;
};

/// Builds an index over `corpus`. Weights are rounded to 32-bit floats before
/// pruning, so that the in-memory index equals what `save_index` persists.
/// `document_k == 0` disables static pruning; otherwise each document keeps its
/// `document_k` highest-impact terms.
[[nodiscard]] ImpactIndex build_index(std::span<CorpusDocument const> corpus,
                                      Vocabulary vocab,
                                      std::size_t document_k = 0);

/// Same, with a numeric vocabulary sized to the largest term id in `corpus`.
[[nodiscard]] ImpactIndex build_index(std::span<CorpusDocument const> corpus, std::size_t document_k = 0);

/// Static document-centric pruning of an existing index. Requires k >= 1.
[[nodiscard]] ImpactIndex prune_index(ImpactIndex const& index, std::size_t document_k);

struct IndexStats {
    static constexpr std::size_t histogram_bins = 10;

    std::size_t doc_count = 0;
    std::size_t vocab_size = 0;
    std::size_t total_postings = 0;
    double mean_postings_per_term = 0.0;
    double mean_term_count = 0.0;
    std::size_t max_term_count = 0;
    /// Terms bucketed by p_D(t) into equal-width bins over [0, 1]; the last bin
    /// is closed.
    std::array<std::size_t, histogram_bins> activation_histogram{};
};

[[nodiscard]] IndexStats index_stats(ImpactIndex const& index);

}  // namespace impactir
