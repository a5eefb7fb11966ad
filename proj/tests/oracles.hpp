#pragma once

// Brute-force reference implementations used only by the tests. They work on
// raw inputs (corpus vectors, token lists, dense loops) and share no code path
// with the library routines they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "impactir/harness/random.hpp"
#include "impactir/index.hpp"
#include "impactir/sparse_vector.hpp"

namespace oracle {

using impactir::CorpusDocument;
using impactir::SparseVector;
using impactir::TermId;
using impactir::harness::Rng;

/// term -> weight, the plainest possible sparse representation.
using TermMap = std::map<std::uint32_t, double>;

inline TermMap to_map(SparseVector const& v)
{
    TermMap m;
    for (auto const& e : v) {
        m[e.term.value] = e.weight;
    }
    return m;
}

inline double map_dot(TermMap const& a, TermMap const& b)
{
    double s = 0.0;
    for (auto const& [t, w] : a) {
        if (auto it = b.find(t); it != b.end()) {
            s += w * it->second;
        }
    }
    return s;
}

inline std::size_t shared_terms(TermMap const& a, TermMap const& b)
{
    std::size_t n = 0;
    for (auto const& [t, w] : a) {
        n += b.count(t);
    }
    return n;
}

struct Hit {
    std::uint32_t doc;
    double score;
    std::size_t matched;
};

/// Scores every document against the query, keeps those with at least
/// `min_matched` shared terms, full-sorts by (score desc, ordinal asc) and
/// truncates.
inline std::vector<Hit> brute_force_top(std::vector<TermMap> const& docs,
                                        TermMap const& query,
                                        std::size_t min_matched,
                                        std::size_t top_n)
{
    std::vector<Hit> hits;
    for (std::uint32_t d = 0; d < docs.size(); ++d) {
        auto matched = shared_terms(query, docs[d]);
        if (matched >= std::max<std::size_t>(min_matched, 1)) {
            hits.push_back({d, map_dot(query, docs[d]), matched});
        }
    }
    std::sort(hits.begin(), hits.end(), [](Hit const& a, Hit const& b) {
        return a.score != b.score ? a.score > b.score : a.doc < b.doc;
    });
    if (hits.size() > top_n) {
        hits.resize(top_n);
    }
    return hits;
}

/// Random vector whose weights are exactly representable as float, so index
/// impacts equal the raw weights.
inline SparseVector random_vector(Rng& rng, std::size_t vocab, std::size_t max_terms, std::size_t min_terms = 0)
{
    auto n = rng.between(std::min(min_terms, max_terms), max_terms);
    std::set<std::uint32_t> terms;
    while (terms.size() < std::min(n, vocab)) {
        terms.insert(static_cast<std::uint32_t>(rng.below(vocab)));
    }
    std::vector<std::pair<TermId, double>> pairs;
    for (auto t : terms) {
        // coarse weights make exact score ties common
        double w = rng.uniform() < 0.3 ? static_cast<double>(1 + rng.below(4)) * 0.5
                                       : static_cast<double>(static_cast<float>(rng.uniform(0.01, 3.0)));
        pairs.emplace_back(TermId{t}, w);
    }
    return impactir::from_pairs(pairs);
}

inline std::vector<CorpusDocument> random_corpus(Rng& rng, std::size_t docs, std::size_t vocab, std::size_t max_terms)
{
    std::vector<CorpusDocument> corpus;
    for (std::size_t d = 0; d < docs; ++d) {
        auto v = random_vector(rng, vocab, max_terms);
        auto raw = static_cast<std::uint32_t>(v.size() + rng.below(5));
        corpus.push_back({"doc" + std::to_string(d), std::move(v), raw});
    }
    return corpus;
}

/// (1 / (|Q| N)) * sum over all (q, d) of |support(q) & support(d)|.
inline double exhaustive_flops(std::vector<TermMap> const& docs, std::vector<TermMap> const& queries)
{
    std::uint64_t shared = 0;
    for (auto const& q : queries) {
        for (auto const& d : docs) {
            shared += shared_terms(q, d);
        }
    }
    return static_cast<double>(shared) / (static_cast<double>(queries.size()) * static_cast<double>(docs.size()));
}

/// Classic Okapi BM25 over raw tokens, distinct query terms.
inline double classic_bm25(std::vector<std::vector<std::string>> const& docs,
                           std::size_t doc,
                           std::vector<std::string> const& query,
                           double k1,
                           double b)
{
    double avgdl = 0.0;
    for (auto const& d : docs) {
        avgdl += static_cast<double>(d.size());
    }
    avgdl /= static_cast<double>(docs.size());
    double const n = static_cast<double>(docs.size());
    std::set<std::string> distinct(query.begin(), query.end());
    double score = 0.0;
    for (auto const& term : distinct) {
        double df = 0.0;
        for (auto const& d : docs) {
            df += std::find(d.begin(), d.end(), term) != d.end() ? 1.0 : 0.0;
        }
        double tf = static_cast<double>(std::count(docs[doc].begin(), docs[doc].end(), term));
        if (df == 0.0 || tf == 0.0) {
            continue;
        }
        double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
        double dl = static_cast<double>(docs[doc].size());
        score += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * dl / avgdl));
    }
    return score;
}

using Dense = std::vector<std::vector<double>>;

inline Dense random_dense(Rng& rng, std::size_t rows, std::size_t cols, double hi)
{
    Dense m(rows, std::vector<double>(cols));
    for (auto& r : m) {
        for (auto& x : r) {
            x = rng.uniform(0.0, hi);
        }
    }
    return m;
}

inline double naive_in_batch(Dense const& s)
{
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double denom = 0.0;
        for (double x : s[i]) {
            denom += std::exp(x);
        }
        total += -std::log(std::exp(s[i][i]) / denom);
    }
    return total / static_cast<double>(s.size());
}

inline double naive_mean_dot(Dense const& a, Dense const& b)
{
    double total = 0.0;
    for (std::size_t j = 0; j < a[0].size(); ++j) {
        double ma = 0.0;
        double mb = 0.0;
        for (auto const& r : a) {
            ma += r[j];
        }
        for (auto const& r : b) {
            mb += r[j];
        }
        total += (ma / static_cast<double>(a.size())) * (mb / static_cast<double>(b.size()));
    }
    return total;
}

/// Central-difference derivative of `f` with respect to every entry of `x`.
template <typename F>
Dense central_differences(Dense x, F&& f, double eps = 1e-5)
{
    Dense g(x.size(), std::vector<double>(x[0].size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            double saved = x[i][j];
            x[i][j] = saved + eps;
            double up = f(x);
            x[i][j] = saved - eps;
            double down = f(x);
            x[i][j] = saved;
            g[i][j] = (up - down) / (2.0 * eps);
        }
    }
    return g;
}

/// max |a - n| / max(|a|, |n|, floor): relative error with an absolute floor
/// for entries that are near zero.
inline double max_relative_error(Dense const& analytic, Dense const& numeric, double floor = 1e-4)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        for (std::size_t j = 0; j < analytic[i].size(); ++j) {
            double a = analytic[i][j];
            double n = numeric[i][j];
            worst = std::max(worst, std::abs(a - n) / std::max({std::abs(a), std::abs(n), floor}));
        }
    }
    return worst;
}

}  // namespace oracle
