#include "impactir/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "impactir/error.hpp"

namespace impactir {

namespace {

[[noreturn]] void violation(std::string const& what) { throw Error(ErrorCode::InvariantViolation, what); }

SparseVector round_to_float(SparseVector const& v)
{
    std::vector<std::pair<TermId, double>> pairs;
    pairs.reserve(v.size());
    for (auto const& e : v) {
        auto rounded = static_cast<float>(e.weight);
        if (!std::isfinite(rounded)) {
            throw Error(ErrorCode::NonFinite, "weight of term " + std::to_string(e.term.value) + " overflows float");
        }
        pairs.emplace_back(e.term, static_cast<double>(rounded));
    }
    return from_pairs(pairs);
}

}  // namespace

ImpactIndex::ImpactIndex(Vocabulary vocab, std::vector<DocRecord> docs, std::vector<PostingList> postings)
    : m_vocab(std::move(vocab)), m_docs(std::move(docs)), m_postings(std::move(postings))
{
    if (m_postings.size() != m_vocab.size()) {
        violation("posting list count differs from vocabulary size");
    }
    if (m_docs.size() > std::numeric_limits<std::uint32_t>::max()) {
        violation("too many documents");
    }
    std::unordered_set<std::string_view> ids;
    std::uint64_t raw_total = 0;
    std::size_t term_total = 0;
    for (std::size_t i = 0; i < m_docs.size(); ++i) {
        auto const& doc = m_docs[i];
        if (doc.ordinal != i) {
            violation("document ordinals are not dense");
        }
        if (!ids.insert(doc.external_id).second) {
            throw Error(ErrorCode::DuplicateDocId, doc.external_id);
        }
        raw_total += doc.raw_length;
        term_total += doc.term_count;
    }
    std::vector<std::uint32_t> seen(m_docs.size(), 0);
    for (auto const& list : m_postings) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto const& p = list[i];
            if (p.doc >= m_docs.size()) {
                violation("posting refers to unknown document");
            }
            if (i > 0 && list[i - 1].doc >= p.doc) {
                violation("posting list not strictly ascending");
            }
            if (!(p.impact > 0.0F) || !std::isfinite(p.impact)) {
                violation("posting impact not positive and finite");
            }
            ++seen[p.doc];
        }
        m_total_postings += list.size();
    }
    if (m_total_postings != term_total) {
        violation("total postings differ from summed document term counts");
    }
    for (std::size_t i = 0; i < m_docs.size(); ++i) {
        if (seen[i] != m_docs[i].term_count) {
            violation("term_count of document " + m_docs[i].external_id + " disagrees with postings");
        }
    }
    m_avg_raw_length = m_docs.empty() ? 0.0 : static_cast<double>(raw_total) / static_cast<double>(m_docs.size());
}

double ImpactIndex::activation_probability(TermId term) const
{
    if (m_docs.empty()) {
        return 0.0;
    }
    return static_cast<double>(document_frequency(term)) / static_cast<double>(m_docs.size());
}

std::vector<SparseVector> ImpactIndex::document_vectors() const
{
    std::vector<std::vector<std::pair<TermId, double>>> pairs(m_docs.size());
    for (std::uint32_t t = 0; t < m_postings.size(); ++t) {
        for (auto const& p : m_postings[t]) {
            pairs[p.doc].emplace_back(TermId{t}, static_cast<double>(p.impact));
        }
    }
    std::vector<SparseVector> vectors;
    vectors.reserve(pairs.size());
    for (auto const& doc_pairs : pairs) {
        vectors.push_back(from_pairs(doc_pairs));
    }
    return vectors;
}

ImpactIndex build_index(std::span<CorpusDocument const> corpus, Vocabulary vocab, std::size_t document_k)
{
    std::vector<DocRecord> docs;
    docs.reserve(corpus.size());
    std::vector<PostingList> postings(vocab.size());
    std::unordered_set<std::string_view> ids;

    for (auto const& input : corpus) {
        if (!ids.insert(input.external_id).second) {
            throw Error(ErrorCode::DuplicateDocId, input.external_id);
        }
        auto vector = round_to_float(input.vector);
        if (document_k > 0) {
            vector = top_k_truncate(vector, document_k);
        }
        auto ordinal = static_cast<std::uint32_t>(docs.size());
        for (auto const& e : vector) {
            if (e.term.value >= postings.size()) {
                throw Error(ErrorCode::TermOutOfRange,
                            "term " + std::to_string(e.term.value) + " in document " + input.external_id);
            }
            postings[e.term.value].push_back({ordinal, static_cast<float>(e.weight)});
        }
        docs.push_back({input.external_id, ordinal, static_cast<std::uint32_t>(vector.size()), input.raw_length});
    }
    return ImpactIndex(std::move(vocab), std::move(docs), std::move(postings));
}

ImpactIndex build_index(std::span<CorpusDocument const> corpus, std::size_t document_k)
{
    std::uint32_t max_term = 0;
    bool any = false;
    for (auto const& doc : corpus) {
        if (!doc.vector.empty()) {
            max_term = std::max(max_term, doc.vector.entries().back().term.value);
            any = true;
        }
    }
    return build_index(corpus, Vocabulary::numeric(any ? max_term + 1U : 0U), document_k);
}

ImpactIndex prune_index(ImpactIndex const& index, std::size_t document_k)
{
    if (document_k == 0) {
        throw Error(ErrorCode::InvalidArgument, "prune_index requires document_k >= 1");
    }
    auto vectors = index.document_vectors();
    std::vector<CorpusDocument> corpus;
    corpus.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto const& doc = index.docs()[i];
        corpus.push_back({doc.external_id, std::move(vectors[i]), doc.raw_length});
    }
    return build_index(corpus, index.vocabulary(), document_k);
}

IndexStats index_stats(ImpactIndex const& index)
{
    IndexStats stats;
    stats.doc_count = index.doc_count();
    stats.vocab_size = index.vocab_size();
    stats.total_postings = index.total_postings();
    if (stats.vocab_size > 0) {
        stats.mean_postings_per_term =
            static_cast<double>(stats.total_postings) / static_cast<double>(stats.vocab_size);
    }
    if (stats.doc_count > 0) {
        stats.mean_term_count = static_cast<double>(stats.total_postings) / static_cast<double>(stats.doc_count);
    }
    for (auto const& doc : index.docs()) {
        stats.max_term_count = std::max<std::size_t>(stats.max_term_count, doc.term_count);
    }
    if (stats.doc_count > 0) {
        for (std::uint32_t t = 0; t < stats.vocab_size; ++t) {
            auto df = index.document_frequency(TermId{t});
            // integer bucketing avoids float edge effects at bin borders
            auto bin = std::min(IndexStats::histogram_bins - 1, df * IndexStats::histogram_bins / stats.doc_count);
            ++stats.activation_histogram[bin];
        }
    }
    return stats;
}

}  // namespace impactir
