#include <catch_amalgamated.hpp>

#include <set>

#include "impactir/error.hpp"
#include "impactir/index.hpp"
#include "impactir/index_io.hpp"
#include "oracles.hpp"

using namespace impactir;

namespace {

std::vector<CorpusDocument> two_docs()
{
    return {
        {"A", from_pairs({{TermId{1}, 2.0}, {TermId{2}, 1.0}}), 5},
        {"B", from_pairs({{TermId{2}, 3.0}}), 3},
    };
}

std::set<std::tuple<std::uint32_t, std::uint32_t, float>> posting_set(ImpactIndex const& index)
{
    std::set<std::tuple<std::uint32_t, std::uint32_t, float>> out;
    for (std::uint32_t t = 0; t < index.vocab_size(); ++t) {
        for (auto const& p : index.postings(TermId{t})) {
            out.emplace(t, p.doc, p.impact);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("build transposes documents into postings", "[index]")
{
    auto index = build_index(two_docs());
    REQUIRE(index.doc_count() == 2);
    REQUIRE(index.vocab_size() == 3);
    CHECK(std::vector<Posting>(index.postings(TermId{1}).begin(), index.postings(TermId{1}).end()) ==
          std::vector<Posting>{{0, 2.0F}});
    CHECK(std::vector<Posting>(index.postings(TermId{2}).begin(), index.postings(TermId{2}).end()) ==
          std::vector<Posting>{{0, 1.0F}, {1, 3.0F}});
    CHECK(index.document_frequency(TermId{1}) == 1);
    CHECK(index.document_frequency(TermId{2}) == 2);
    CHECK(index.activation_probability(TermId{2}) == 1.0);
    CHECK(index.activation_probability(TermId{0}) == 0.0);
    CHECK(index.doc(0).external_id == "A");
    CHECK(index.doc(1).ordinal == 1);
    CHECK(index.average_raw_length() == 4.0);
}

TEST_CASE("build with document_k = 1 keeps each document's best term", "[index]")
{
    auto index = build_index(two_docs(), 1);
    CHECK(index.postings(TermId{1}).size() == 1);
    REQUIRE(index.postings(TermId{2}).size() == 1);
    CHECK(index.postings(TermId{2})[0] == Posting{1, 3.0F});
    CHECK(index.doc(0).term_count == 1);
    CHECK(index.doc(0).raw_length == 5);
}

TEST_CASE("empty corpus builds an empty index", "[index]")
{
    auto index = build_index(std::vector<CorpusDocument>{});
    CHECK(index.doc_count() == 0);
    CHECK(index.vocab_size() == 0);
    CHECK(index.total_postings() == 0);
    auto stats = index_stats(index);
    CHECK(stats.doc_count == 0);
    CHECK(stats.total_postings == 0);
    CHECK(stats.mean_term_count == 0.0);
    CHECK(stats.mean_postings_per_term == 0.0);
    CHECK(stats.max_term_count == 0);
    for (auto bin : stats.activation_histogram) {
        CHECK(bin == 0);
    }
}

TEST_CASE("build rejects duplicate ids and unknown terms", "[index]")
{
    auto docs = two_docs();
    docs.push_back({"A", SparseVector{}, 0});
    CHECK_THROWS_MATCHES(build_index(docs), Error,
                         Catch::Matchers::Predicate<Error>([](Error const& e) {
                             return e.code() == ErrorCode::DuplicateDocId;
                         }));
    CHECK_THROWS_MATCHES(build_index(two_docs(), Vocabulary::numeric(2)), Error,
                         Catch::Matchers::Predicate<Error>([](Error const& e) {
                             return e.code() == ErrorCode::TermOutOfRange;
                         }));
}

TEST_CASE("index_stats on the two-document index", "[index]")
{
    auto stats = index_stats(build_index(two_docs()));
    CHECK(stats.doc_count == 2);
    CHECK(stats.vocab_size == 3);
    CHECK(stats.total_postings == 3);
    CHECK(stats.mean_term_count == 1.5);
    CHECK(stats.mean_postings_per_term == 1.0);
    CHECK(stats.max_term_count == 2);
    // p_D = 0, 0.5, 1.0
    CHECK(stats.activation_histogram[0] == 1);
    CHECK(stats.activation_histogram[5] == 1);
    CHECK(stats.activation_histogram[9] == 1);
}

TEST_CASE("index_stats matches a recount of the raw corpus", "[index][property]")
{
    oracle::Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto corpus = oracle::random_corpus(rng, 1 + rng.below(80), 40, 15);
        std::size_t dk = rng.below(3) == 0 ? 0 : 1 + rng.below(10);
        auto index = build_index(corpus, Vocabulary::numeric(40), dk);
        auto stats = index_stats(index);

        std::size_t total = 0;
        std::size_t max_terms = 0;
        std::vector<std::size_t> df(40, 0);
        for (auto const& doc : corpus) {
            auto v = dk ? top_k_truncate(doc.vector, dk) : doc.vector;
            total += v.size();
            max_terms = std::max(max_terms, v.size());
            for (auto const& e : v) {
                ++df[e.term.value];
            }
        }
        CHECK(stats.total_postings == total);
        CHECK(stats.max_term_count == max_terms);
        CHECK(stats.mean_term_count == Catch::Approx(double(total) / double(corpus.size())));
        if (dk) {
            CHECK(stats.max_term_count <= dk);
        }
        std::size_t hist_total = 0;
        for (std::uint32_t t = 0; t < 40; ++t) {
            CHECK(index.document_frequency(TermId{t}) == df[t]);
            auto p = index.activation_probability(TermId{t});
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
        for (auto bin : stats.activation_histogram) {
            hist_total += bin;
        }
        CHECK(hist_total == 40);
    }
}

TEST_CASE("prune_index equals building with the same document_k", "[index][property]")
{
    oracle::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto corpus = oracle::random_corpus(rng, 1 + rng.below(60), 50, 20);
        auto full = build_index(corpus, Vocabulary::numeric(50));
        std::size_t k = 1 + rng.below(20);
        CHECK(prune_index(full, k) == build_index(corpus, Vocabulary::numeric(50), k));

        std::size_t max_terms = 0;
        for (auto const& doc : full.docs()) {
            max_terms = std::max<std::size_t>(max_terms, doc.term_count);
        }
        CHECK(prune_index(full, std::max<std::size_t>(max_terms, 1)) == full);

        bool any_longer = false;
        for (auto const& doc : full.docs()) {
            any_longer = any_longer || doc.term_count > k;
        }
        if (any_longer) {
            CHECK(prune_index(full, k).total_postings() < full.total_postings());
        } else {
            CHECK(prune_index(full, k).total_postings() == full.total_postings());
        }

        // monotonicity: k1 <= k2 keeps a subset of postings
        std::size_t k1 = 1 + rng.below(10);
        std::size_t k2 = k1 + rng.below(10);
        auto small = posting_set(prune_index(full, k1));
        auto large = posting_set(prune_index(full, k2));
        CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
    CHECK_THROWS_AS(prune_index(build_index(two_docs()), 0), Error);
}

TEST_CASE("identical corpus order gives byte-identical saved indexes", "[index]")
{
    oracle::Rng rng_a(9);
    oracle::Rng rng_b(9);
    auto a = build_index(oracle::random_corpus(rng_a, 100, 60, 12), 5);
    auto b = build_index(oracle::random_corpus(rng_b, 100, 60, 12), 5);
    CHECK(serialize_index(a) == serialize_index(b));
}

TEST_CASE("weights are stored as 32-bit floats", "[index]")
{
    std::vector<CorpusDocument> docs{{"x", from_pairs({{TermId{0}, 0.1}}), 1}};
    auto index = build_index(docs);
    CHECK(index.postings(TermId{0})[0].impact == 0.1F);
    auto vectors = index.document_vectors();
    CHECK(vectors[0].weight(TermId{0}) == static_cast<double>(0.1F));
}

TEST_CASE("the validating constructor rejects inconsistent parts", "[index]")
{
    auto throws_violation = [](auto&& fn) {
        try {
            fn();
        } catch (Error const& e) {
            return e.code() == ErrorCode::InvariantViolation;
        }
        return false;
    };
    CHECK(throws_violation([] {
        return ImpactIndex(Vocabulary::numeric(1), {{"a", 0, 1, 1}}, {{{0, 1.0F}, {0, 2.0F}}});
    }));
    CHECK(throws_violation([] { return ImpactIndex(Vocabulary::numeric(1), {{"a", 0, 2, 1}}, {{{0, 1.0F}}}); }));
    CHECK(throws_violation([] { return ImpactIndex(Vocabulary::numeric(1), {{"a", 1, 1, 1}}, {{{0, 1.0F}}}); }));
    CHECK(throws_violation([] { return ImpactIndex(Vocabulary::numeric(2), {{"a", 0, 1, 1}}, {{{0, 1.0F}}}); }));
    CHECK(throws_violation([] { return ImpactIndex(Vocabulary::numeric(1), {{"a", 0, 1, 1}}, {{{0, -1.0F}}}); }));
}
