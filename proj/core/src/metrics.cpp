#include "impactir/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "impactir/error.hpp"

namespace impactir {

void Judgments::add(std::string const& query_id, std::string const& doc_id)
{
    auto& docs = m_relevant[query_id];
    if (std::find(docs.begin(), docs.end(), doc_id) == docs.end()) {
        docs.push_back(doc_id);
    }
}

std::vector<std::string> const* Judgments::relevant(std::string const& query_id) const
{
    auto it = m_relevant.find(query_id);
    return it == m_relevant.end() ? nullptr : &it->second;
}

void EmbeddingStore::add(std::string doc_id, std::vector<double> embedding)
{
    if (embedding.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "empty embedding for " + doc_id);
    }
    if (m_vectors.empty()) {
        m_dimension = embedding.size();
    } else if (embedding.size() != m_dimension) {
        throw Error(ErrorCode::DimensionMismatch,
                    "embedding for " + doc_id + " has dimension " + std::to_string(embedding.size()) +
                        ", expected " + std::to_string(m_dimension));
    }
    if (std::all_of(embedding.begin(), embedding.end(), [](double x) { return x == 0.0; })) {
        throw Error(ErrorCode::ZeroVector, "embedding for " + doc_id);
    }
    if (!std::all_of(embedding.begin(), embedding.end(), [](double x) { return std::isfinite(x); })) {
        throw Error(ErrorCode::NonFinite, "embedding for " + doc_id);
    }
    m_vectors.insert_or_assign(std::move(doc_id), std::move(embedding));
}

std::span<double const> EmbeddingStore::at(std::string const& doc_id) const
{
    auto it = m_vectors.find(doc_id);
    if (it == m_vectors.end()) {
        throw Error(ErrorCode::MissingEmbedding, doc_id);
    }
    return it->second;
}

double mrr_at_k(RunResults const& run, Judgments const& judgments, std::size_t k)
{
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    }
    if (judgments.empty()) {
        throw Error(ErrorCode::NoJudgedQueries, "judgments are empty");
    }
    double total = 0.0;
    for (auto const& [query_id, relevant] : judgments.queries()) {
        auto it = run.find(query_id);
        if (it == run.end()) {
            continue;
        }
        auto const& ranking = it->second.ranking;
        auto depth = std::min(k, ranking.size());
        for (std::size_t r = 0; r < depth; ++r) {
            if (std::find(relevant.begin(), relevant.end(), ranking[r].external_id) != relevant.end()) {
                total += 1.0 / static_cast<double>(r + 1);
                break;
            }
        }
    }
    return total / static_cast<double>(judgments.size());
}

double cosine(std::span<double const> a, std::span<double const> b)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "cosine of vectors with different dimensions");
    }
    double ab = 0.0;
    double aa = 0.0;
    double bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) {
        throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
    }
    return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

double sss_at_k(RunResults const& run,
                Judgments const& judgments,
                EmbeddingStore const& store,
                std::size_t k,
                SssAggregation aggregation)
{
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    }
    if (judgments.empty()) {
        throw Error(ErrorCode::NoJudgedQueries, "judgments are empty");
    }
    double total = 0.0;
    for (auto const& [query_id, relevant] : judgments.queries()) {
        auto it = run.find(query_id);
        if (it == run.end() || it->second.ranking.empty()) {
            continue;
        }
        std::vector<std::span<double const>> truths;
        truths.reserve(relevant.size());
        for (auto const& doc_id : relevant) {
            truths.push_back(store.at(doc_id));
        }
        auto const& ranking = it->second.ranking;
        auto depth = std::min(k, ranking.size());
        double per_query = 0.0;
        for (std::size_t r = 0; r < depth; ++r) {
            auto emb = store.at(ranking[r].external_id);
            double agg = aggregation == SssAggregation::Max ? -1.0 : 0.0;
            for (auto truth : truths) {
                double sim = cosine(emb, truth);
                agg = aggregation == SssAggregation::Max ? std::max(agg, sim) : agg + sim;
            }
            if (aggregation == SssAggregation::Mean) {
                agg /= static_cast<double>(truths.size());
            }
            per_query += agg;
        }
        total += per_query / static_cast<double>(depth);
    }
    return total / static_cast<double>(judgments.size());
}

double flops_estimate(ImpactIndex const& index, std::span<SparseVector const> queries)
{
    if (queries.empty()) {
        throw Error(ErrorCode::EmptyQuerySet, "flops_estimate needs at least one query");
    }
    if (index.doc_count() == 0) {
        return 0.0;
    }
    std::vector<std::size_t> query_df(index.vocab_size(), 0);
    for (auto const& q : queries) {
        for (auto const& e : q) {
            if (e.term.value < query_df.size()) {
                ++query_df[e.term.value];
            }
        }
    }
    // integer numerator keeps the estimate exact up to the final division
    std::uint64_t shared = 0;
    for (std::uint32_t t = 0; t < query_df.size(); ++t) {
        shared += static_cast<std::uint64_t>(query_df[t]) * index.document_frequency(TermId{t});
    }
    return static_cast<double>(shared) /
           (static_cast<double>(queries.size()) * static_cast<double>(index.doc_count()));
}

LatencyStats latency_stats(std::span<double const> samples)
{
    if (samples.empty()) {
        throw Error(ErrorCode::EmptySamples, "latency_stats needs at least one sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    auto nearest_rank = [&](double p) {
        auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
        return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
    };
    LatencyStats stats;
    stats.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    stats.p50 = nearest_rank(0.50);
    stats.p95 = nearest_rank(0.95);
    stats.max = sorted.back();
    return stats;
}

}  // namespace impactir
