#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "impactir/error.hpp"
#include "impactir/index.hpp"
#include "impactir/metrics.hpp"
#include "oracles.hpp"

using namespace impactir;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

QueryRun ranked(std::initializer_list<std::string> ids)
{
    QueryRun run;
    double score = 10.0;
    for (auto const& id : ids) {
        run.ranking.push_back({id, score});
        score -= 1.0;
    }
    return run;
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (Error const& e) {
        return e.code();
    }
    return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("judgments deduplicate", "[metrics]")
{
    Judgments j;
    j.add("q", "a");
    j.add("q", "a");
    j.add("q", "b");
    REQUIRE(j.relevant("q") != nullptr);
    CHECK(*j.relevant("q") == std::vector<std::string>{"a", "b"});
    CHECK(j.relevant("x") == nullptr);
    CHECK(j.size() == 1);
}

TEST_CASE("mrr", "[metrics]")
{
    Judgments j;
    j.add("q1", "r");
    j.add("q2", "r");
    j.add("q3", "r");
    RunResults run;
    run["q1"] = ranked({"a", "b", "r"});
    run["q2"] = ranked({"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "r"});
    // q3 missing
    CHECK_THAT(mrr_at_k(run, j, 10), WithinAbs((1.0 / 3.0) / 3.0, 1e-15));
    CHECK_THAT(mrr_at_k(run, j, 11), WithinAbs((1.0 / 3.0 + 1.0 / 11.0) / 3.0, 1e-15));

    RunResults perfect;
    for (auto const& q : {"q1", "q2", "q3"}) {
        perfect[q] = ranked({"r", "x"});
    }
    CHECK(mrr_at_k(perfect, j) == 1.0);
    CHECK(code_of([&] { (void)mrr_at_k(run, Judgments{}); }) == ErrorCode::NoJudgedQueries);
}

TEST_CASE("cosine", "[metrics]")
{
    std::vector<double> a{1.0, 2.0, 3.0};
    std::vector<double> neg{-1.0, -2.0, -3.0};
    std::vector<double> x{1.0, 0.0};
    std::vector<double> y{0.0, 1.0};
    std::vector<double> zero{0.0, 0.0};
    CHECK_THAT(cosine(a, a), WithinAbs(1.0, 1e-15));
    CHECK(cosine(x, y) == 0.0);
    CHECK_THAT(cosine(a, neg), WithinAbs(-1.0, 1e-15));
    CHECK(code_of([&] { (void)cosine(x, zero); }) == ErrorCode::ZeroVector);
    CHECK(code_of([&] { (void)cosine(x, a); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("semantic similarity score", "[metrics]")
{
    EmbeddingStore store;
    store.add("r1", {1.0, 0.0});
    store.add("r2", {1.0, 1.0});
    store.add("g1", {0.0, 1.0});
    store.add("g2", {1.0, 2.0});

    Judgments j;
    j.add("q", "g1");
    j.add("q", "g2");
    RunResults run;
    run["q"] = ranked({"r1", "r2"});
    CHECK_THAT(sss_at_k(run, j, store), WithinRel(0.6979484467752358, 1e-12));

    RunResults self;
    self["q"] = ranked({"g1", "g2"});
    CHECK_THAT(sss_at_k(self, j, store), WithinAbs(1.0, 1e-15));

    Judgments only_g1;
    only_g1.add("q", "g1");
    RunResults orth;
    orth["q"] = ranked({"r1"});
    CHECK(sss_at_k(orth, only_g1, store) == 0.0);

    // nothing retrieved contributes 0
    RunResults empty;
    empty["q"] = QueryRun{};
    CHECK(sss_at_k(empty, j, store) == 0.0);

    // mean aggregation
    double r1 = (0.0 + 1.0 / std::sqrt(5.0)) / 2.0;
    double r2 = (1.0 / std::sqrt(2.0) + 3.0 / std::sqrt(10.0)) / 2.0;
    CHECK_THAT(sss_at_k(run, j, store, 10, SssAggregation::Mean), WithinRel((r1 + r2) / 2.0, 1e-12));

    // cut at k
    CHECK_THAT(sss_at_k(run, j, store, 1), WithinRel(1.0 / std::sqrt(5.0), 1e-12));

    RunResults missing;
    missing["q"] = ranked({"nope"});
    bool named = false;
    try {
        (void)sss_at_k(missing, j, store);
    } catch (Error const& e) {
        named = e.code() == ErrorCode::MissingEmbedding && std::string(e.what()).find("nope") != std::string::npos;
    }
    CHECK(named);
}

TEST_CASE("embedding store validation", "[metrics]")
{
    EmbeddingStore store;
    store.add("a", {1.0, 2.0});
    CHECK(code_of([&] { store.add("b", {1.0}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { store.add("c", {0.0, 0.0}); }) == ErrorCode::ZeroVector);
    CHECK(code_of([&] { (void)store.at("zz"); }) == ErrorCode::MissingEmbedding);
}

TEST_CASE("flops estimate", "[metrics]")
{
    std::vector<CorpusDocument> docs{
        {"a", from_pairs({{TermId{0}, 1.0}, {TermId{1}, 1.0}}), 2},
        {"b", from_pairs({{TermId{0}, 2.0}}), 1},
    };
    auto index = build_index(docs, Vocabulary::numeric(4));
    std::vector<SparseVector> always{from_pairs({{TermId{0}, 0.3}})};
    CHECK(flops_estimate(index, always) == 1.0);
    std::vector<SparseVector> disjoint{from_pairs({{TermId{2}, 1.0}, {TermId{3}, 1.0}})};
    CHECK(flops_estimate(index, disjoint) == 0.0);
    std::vector<SparseVector> outside{from_pairs({{TermId{99}, 1.0}})};
    CHECK(flops_estimate(index, outside) == 0.0);
    CHECK(code_of([&] { (void)flops_estimate(index, std::vector<SparseVector>{}); }) == ErrorCode::EmptyQuerySet);

    oracle::Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto corpus = oracle::random_corpus(rng, 1 + rng.below(40), 30, 10);
        auto idx = build_index(corpus, Vocabulary::numeric(30));
        std::vector<SparseVector> queries;
        std::vector<SparseVector> scaled;
        std::vector<oracle::TermMap> qmaps;
        for (std::size_t i = 0, n = 1 + rng.below(10); i < n; ++i) {
            queries.push_back(oracle::random_vector(rng, 30, 8));
            qmaps.push_back(oracle::to_map(queries.back()));
            std::vector<std::pair<TermId, double>> pairs;
            for (auto const& e : queries.back()) {
                pairs.emplace_back(e.term, e.weight * 7.5);
            }
            scaled.push_back(from_pairs(pairs));
        }
        std::vector<oracle::TermMap> dmaps;
        for (auto const& d : corpus) {
            dmaps.push_back(oracle::to_map(d.vector));
        }
        double value = flops_estimate(idx, queries);
        CHECK_THAT(value, WithinAbs(oracle::exhaustive_flops(dmaps, qmaps), 1e-12));
        CHECK(flops_estimate(idx, scaled) == value);
        CHECK(flops_estimate(prune_index(idx, 3), queries) <= value);
    }
}

TEST_CASE("latency statistics", "[metrics]")
{
    std::vector<double> one{2.0};
    auto s = latency_stats(one);
    CHECK(s.mean == 2.0);
    CHECK(s.p50 == 2.0);
    CHECK(s.p95 == 2.0);
    CHECK(s.max == 2.0);
    std::vector<double> four{4.0, 1.0, 3.0, 2.0};
    auto f = latency_stats(four);
    CHECK(f.mean == 2.5);
    CHECK(f.p50 == 2.0);
    CHECK(f.p95 == 4.0);
    CHECK(f.max == 4.0);
    CHECK(code_of([] { (void)latency_stats(std::vector<double>{}); }) == ErrorCode::EmptySamples);

    oracle::Rng rng(9);
    std::vector<double> samples;
    for (int i = 0; i < 1000; ++i) {
        samples.push_back(rng.uniform(0.0, 1.0));
    }
    auto sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    auto st = latency_stats(samples);
    CHECK(st.p50 == sorted[499]);  // ceil(0.5 * 1000) = 500th
    CHECK(st.p95 == sorted[949]);
    CHECK(st.max == sorted.back());
    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    CHECK_THAT(st.mean, WithinRel(sum / 1000.0, 1e-12));
}
