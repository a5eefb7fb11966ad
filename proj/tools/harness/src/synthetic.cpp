#include "impactir/harness/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "impactir/error.hpp"
#include "impactir/harness/random.hpp"

namespace impactir::harness {

namespace {

std::string padded(char prefix, std::size_t value, std::size_t count)
{
    auto digits = std::to_string(std::max<std::size_t>(count, 1) - 1).size();
    auto s = std::to_string(value);
    return prefix + std::string(digits - std::min(digits, s.size()), '0') + s;
}

std::string term_name(std::size_t id) { return "t" + std::to_string(id); }

/// Float-representable positive weight, so files and indexes agree exactly.
double weight(double value) { return static_cast<double>(std::max(static_cast<float>(value), 1e-3F)); }

struct Topic {
    std::vector<std::size_t> terms;
    std::vector<double> centroid;
};

std::vector<double> unit_gaussian(Rng& rng, std::size_t dim)
{
    std::vector<double> v(dim);
    double norm = 0.0;
    for (auto& x : v) {
        x = rng.normal();
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : v) {
        x /= norm;
    }
    return v;
}

}  // namespace

void SyntheticParams::validate() const
{
    auto fail = [](std::string const& what) { throw Error(ErrorCode::InvalidArgument, what); };
    if (doc_count == 0) {
        fail("doc_count must be >= 1");
    }
    if (vocab_size == 0 || topic_count == 0 || terms_per_topic == 0 || embedding_dim == 0) {
        fail("vocab_size, topic_count, terms_per_topic and embedding_dim must be >= 1");
    }
    if (terms_per_topic > vocab_size) {
        fail("terms_per_topic exceeds vocab_size");
    }
    if (min_doc_terms == 0 || min_doc_terms > max_doc_terms || max_doc_terms > vocab_size) {
        fail("need 1 <= min_doc_terms <= max_doc_terms <= vocab_size");
    }
    if (min_query_doc_terms == 0 || min_query_doc_terms > max_query_doc_terms) {
        fail("need 1 <= min_query_doc_terms <= max_query_doc_terms");
    }
    if (min_query_expansion_terms > max_query_expansion_terms || max_query_expansion_terms > terms_per_topic) {
        fail("need min_query_expansion_terms <= max_query_expansion_terms <= terms_per_topic");
    }
    if (!(topic_term_share >= 0.0 && topic_term_share <= 1.0) || !(zipf_exponent >= 0.0) ||
        !(embedding_noise >= 0.0) || !(background_weight > 0.0)) {
        fail("topic_term_share must lie in [0, 1]; zipf_exponent, embedding_noise >= 0; background_weight > 0");
    }
}

SyntheticData generate_synthetic(SyntheticParams const& p)
{
    p.validate();
    Rng rng(p.seed);
    ZipfSampler global(p.vocab_size, p.zipf_exponent);
    ZipfSampler topical(p.terms_per_topic, p.zipf_exponent);

    std::vector<Topic> topics(p.topic_count);
    std::vector<std::size_t> all_terms(p.vocab_size);
    std::iota(all_terms.begin(), all_terms.end(), 0);
    for (auto& topic : topics) {
        // partial Fisher-Yates picks a random ordered subset of the vocabulary
        for (std::size_t i = 0; i < p.terms_per_topic; ++i) {
            std::swap(all_terms[i], all_terms[i + rng.below(p.vocab_size - i)]);
        }
        topic.terms.assign(all_terms.begin(), all_terms.begin() + static_cast<std::ptrdiff_t>(p.terms_per_topic));
        topic.centroid = unit_gaussian(rng, p.embedding_dim);
    }

    SyntheticData data;
    data.docs.reserve(p.doc_count);
    std::vector<std::size_t> doc_topic(p.doc_count);
    std::vector<std::vector<std::pair<std::size_t, double>>> doc_terms(p.doc_count);
    for (std::size_t d = 0; d < p.doc_count; ++d) {
        auto z = rng.below(p.topic_count);
        doc_topic[d] = z;
        auto target = rng.between(p.min_doc_terms, p.max_doc_terms);
        std::unordered_set<std::size_t> seen;
        auto& terms = doc_terms[d];
        for (std::size_t attempt = 0; terms.size() < target && attempt < 20 * target; ++attempt) {
            bool on_topic = rng.uniform() < p.topic_term_share;
            auto term = on_topic ? topics[z].terms[topical(rng)] : global(rng);
            if (!seen.insert(term).second) {
                continue;
            }
            double scale = on_topic ? 1.0 : p.background_weight;
            terms.emplace_back(term, weight(scale * std::exp(0.5 * rng.normal())));
        }
        std::sort(terms.begin(), terms.end());
        WeightedTerms named;
        named.reserve(terms.size());
        for (auto [term, w] : terms) {
            named.emplace_back(term_name(term), w);
        }
        data.docs.push_back({padded('d', d, p.doc_count), std::move(named)});

        std::vector<double> emb = topics[z].centroid;
        auto noise = unit_gaussian(rng, p.embedding_dim);
        for (std::size_t i = 0; i < emb.size(); ++i) {
            emb[i] += p.embedding_noise * noise[i];
        }
        data.embeddings.emplace_back(data.docs.back().id, std::move(emb));
    }

    data.queries.reserve(p.query_count);
    for (std::size_t q = 0; q < p.query_count; ++q) {
        auto d = rng.below(p.doc_count);
        auto const& source = doc_terms[d];
        auto const& topic = topics[doc_topic[d]];

        // weight-proportional sampling without replacement from the relevant document
        auto take = std::min(source.size(), rng.between(p.min_query_doc_terms, p.max_query_doc_terms));
        std::vector<std::pair<std::size_t, double>> pool = source;
        std::vector<std::pair<std::size_t, double>> picked;
        for (std::size_t i = 0; i < take; ++i) {
            double total = 0.0;
            for (auto const& e : pool) {
                total += e.second;
            }
            double u = rng.uniform() * total;
            std::size_t j = 0;
            for (; j + 1 < pool.size() && u >= pool[j].second; ++j) {
                u -= pool[j].second;
            }
            picked.emplace_back(pool[j].first, weight(pool[j].second * rng.uniform(0.5, 1.5)));
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        }
        std::unordered_set<std::size_t> used;
        for (auto const& e : picked) {
            used.insert(e.first);
        }
        auto expansions = rng.between(p.min_query_expansion_terms, p.max_query_expansion_terms);
        for (std::size_t attempt = 0, added = 0; added < expansions && attempt < 20 * (expansions + 1); ++attempt) {
            auto term = topic.terms[topical(rng)];
            if (used.insert(term).second) {
                picked.emplace_back(term, weight(rng.uniform(0.2, 1.0)));
                ++added;
            }
        }
        std::sort(picked.begin(), picked.end());
        WeightedTerms named;
        for (auto [term, w] : picked) {
            named.emplace_back(term_name(term), w);
        }
        auto qid = padded('q', q, p.query_count);
        data.queries.push_back({qid, std::move(named)});
        data.judgments.emplace_back(qid, data.docs[d].id);
    }
    return data;
}

SyntheticPaths synthetic_paths(std::filesystem::path const& directory)
{
    return {directory / "corpus.tsv", directory / "queries.tsv", directory / "qrels.tsv",
            directory / "embeddings.tsv"};
}

SyntheticPaths write_synthetic(SyntheticData const& data, std::filesystem::path const& directory)
{
    std::filesystem::create_directories(directory);
    auto paths = synthetic_paths(directory);
    {
        auto out = open_output(paths.corpus);
        for (auto const& doc : data.docs) {
            write_vector_record(out, doc.id, doc.terms);
        }
    }
    {
        auto out = open_output(paths.queries);
        for (auto const& query : data.queries) {
            write_vector_record(out, query.id, query.terms);
        }
    }
    {
        auto out = open_output(paths.judgments);
        for (auto const& [qid, did] : data.judgments) {
            out << qid << '\t' << did << '\n';
        }
    }
    {
        auto out = open_output(paths.embeddings);
        for (auto const& [did, emb] : data.embeddings) {
            out << did << '\t';
            for (std::size_t i = 0; i < emb.size(); ++i) {
                out << (i ? " " : "") << format_double(emb[i]);
            }
            out << '\n';
        }
    }
    return paths;
}

}  // namespace impactir::harness
