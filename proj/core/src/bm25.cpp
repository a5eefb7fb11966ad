#include "impactir/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>

#include "impactir/error.hpp"

namespace impactir {

double bm25_doc_impact(std::uint32_t tf, std::uint32_t doc_len, double avgdl, Bm25Params params)
{
    if (tf == 0) {
        throw Error(ErrorCode::InvalidArgument, "bm25_doc_impact requires tf >= 1");
    }
    double const tf_d = tf;
    double const norm = 1.0 - params.b + params.b * static_cast<double>(doc_len) / avgdl;
    return tf_d * (params.k1 + 1.0) / (tf_d + params.k1 * norm);
}

double bm25_query_weight(std::uint64_t df, std::uint64_t doc_count)
{
    if (df == 0 || df > doc_count) {
        throw Error(ErrorCode::InvalidArgument, "bm25_query_weight requires 1 <= df <= doc_count");
    }
    double const n = static_cast<double>(doc_count);
    double const d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

SparseVector bm25_document_vector(std::span<std::string const> tokens,
                                  Vocabulary& vocab,
                                  double average_length,
                                  Bm25Params params)
{
    std::map<TermId, std::uint32_t> tf;
    for (auto const& token : tokens) {
        ++tf[vocab.intern(token)];
    }
    auto const len = static_cast<std::uint32_t>(tokens.size());
    std::vector<std::pair<TermId, double>> pairs;
    pairs.reserve(tf.size());
    for (auto [term, count] : tf) {
        pairs.emplace_back(term, bm25_doc_impact(count, len, average_length, params));
    }
    return from_pairs(pairs);
}

Bm25Corpus bm25_vectorize_corpus(std::span<TextDocument const> docs, Bm25Params params)
{
    Bm25Corpus corpus;
    std::uint64_t total = 0;
    for (auto const& doc : docs) {
        total += doc.tokens.size();
    }
    corpus.average_length = docs.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs.size());
    corpus.docs.reserve(docs.size());
    for (auto const& doc : docs) {
        auto vector = bm25_document_vector(doc.tokens, corpus.vocab, corpus.average_length, params);
        corpus.document_frequency.resize(corpus.vocab.size(), 0);
        for (auto const& e : vector) {
            ++corpus.document_frequency[e.term.value];
        }
        corpus.docs.push_back({doc.external_id, std::move(vector), static_cast<std::uint32_t>(doc.tokens.size())});
    }
    return corpus;
}

namespace {

template <typename DocumentFrequency>
SparseVector query_vector(std::span<std::string const> tokens,
                          Vocabulary const& vocab,
                          std::size_t doc_count,
                          DocumentFrequency&& df_of)
{
    std::map<TermId, double> weights;
    for (auto const& token : tokens) {
        auto id = vocab.find(token);
        if (!id) {
            continue;
        }
        auto df = df_of(*id);
        if (df == 0) {
            continue;
        }
        weights.emplace(*id, bm25_query_weight(df, doc_count));
    }
    std::vector<std::pair<TermId, double>> pairs(weights.begin(), weights.end());
    return from_pairs(pairs);
}

}  // namespace

SparseVector bm25_query_vector(std::span<std::string const> tokens,
                               Vocabulary const& vocab,
                               std::span<std::size_t const> document_frequency,
                               std::size_t doc_count)
{
    return query_vector(tokens, vocab, doc_count, [&](TermId id) -> std::size_t {
        return id.value < document_frequency.size() ? document_frequency[id.value] : 0;
    });
}

SparseVector bm25_query_vector(std::span<std::string const> tokens, ImpactIndex const& index)
{
    return query_vector(tokens, index.vocabulary(), index.doc_count(), [&](TermId id) {
        return index.document_frequency(id);
    });
}

}  // namespace impactir
