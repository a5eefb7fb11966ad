#include <catch_amalgamated.hpp>

#include "impactir/error.hpp"
#include "impactir/sparse_vector.hpp"
#include "oracles.hpp"

using namespace impactir;

namespace {

SparseVector vec(std::initializer_list<std::pair<TermId, double>> pairs) { return from_pairs(pairs); }

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (Error const& e) {
        return e.code();
    }
    FAIL("expected impactir::Error");
    return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("from_pairs sorts and drops zeros", "[sparse]")
{
    auto v = vec({{TermId{3}, 0.5}, {TermId{1}, 1.0}});
    REQUIRE(v.size() == 2);
    CHECK(v.entries()[0] == SparseEntry{TermId{1}, 1.0});
    CHECK(v.entries()[1] == SparseEntry{TermId{3}, 0.5});

    auto z = vec({{TermId{1}, 1.0}, {TermId{2}, 0.0}});
    REQUIRE(z.size() == 1);
    CHECK(z.entries()[0] == SparseEntry{TermId{1}, 1.0});
    CHECK(z.weight(TermId{2}) == 0.0);
    CHECK_FALSE(z.contains(TermId{2}));
}

TEST_CASE("from_pairs rejects bad input", "[sparse]")
{
    CHECK(code_of([] { (void)vec({{TermId{1}, 1.0}, {TermId{1}, 2.0}}); }) == ErrorCode::DuplicateTerm);
    CHECK(code_of([] { (void)vec({{TermId{1}, -0.1}}); }) == ErrorCode::NegativeWeight);
    CHECK(code_of([] { (void)vec({{TermId{1}, std::nan("")}}); }) == ErrorCode::NonFinite);
    CHECK(code_of([] { (void)vec({{TermId{1}, INFINITY}}); }) == ErrorCode::NonFinite);
    // a duplicate is an error even when one copy is zero
    CHECK(code_of([] { (void)vec({{TermId{1}, 0.0}, {TermId{1}, 2.0}}); }) == ErrorCode::DuplicateTerm);
}

TEST_CASE("dot product", "[sparse]")
{
    auto a = vec({{TermId{1}, 1.0}, {TermId{2}, 2.0}});
    auto b = vec({{TermId{2}, 3.0}, {TermId{3}, 4.0}});
    CHECK(dot(a, b) == 6.0);
    CHECK(dot(vec({{TermId{1}, 1.0}}), vec({{TermId{2}, 1.0}})) == 0.0);
    CHECK(dot(vec({{TermId{1}, 1.0}}), vec({{TermId{1}, 1.0}})) == 1.0);
    CHECK(dot(a, SparseVector{}) == 0.0);
}

TEST_CASE("top_k_truncate", "[sparse]")
{
    auto v = vec({{TermId{1}, 0.5}, {TermId{2}, 0.9}, {TermId{3}, 0.9}});
    CHECK(top_k_truncate(v, 2) == vec({{TermId{2}, 0.9}, {TermId{3}, 0.9}}));
    CHECK(top_k_truncate(v, 1) == vec({{TermId{2}, 0.9}}));
    CHECK(top_k_truncate(vec({{TermId{1}, 0.5}}), 10) == vec({{TermId{1}, 0.5}}));
    CHECK_THROWS_AS(top_k_truncate(v, 0), Error);
}

TEST_CASE("sparse vector properties", "[sparse][property]")
{
    oracle::Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        auto a = oracle::random_vector(rng, 60, 25);
        auto b = oracle::random_vector(rng, 60, 25);
        CHECK(dot(a, b) == dot(b, a));
        CHECK(dot(a, b) == oracle::map_dot(oracle::to_map(a), oracle::to_map(b)));
        CHECK(dot(a, from_pairs({})) == 0.0);

        CHECK(top_k_truncate(a, std::max<std::size_t>(a.size(), 1)) == a);
        if (a.empty()) {
            continue;
        }
        auto k = 1 + rng.below(a.size());
        auto t = top_k_truncate(a, k);
        REQUIRE(t.size() == k);
        double min_kept = INFINITY;
        for (auto const& e : t) {
            REQUIRE(a.contains(e.term));
            CHECK(a.weight(e.term) == e.weight);
            min_kept = std::min(min_kept, e.weight);
        }
        for (auto const& e : a) {
            if (!t.contains(e.term)) {
                CHECK(e.weight <= min_kept);
                // among equal weights the smaller term id is kept
                if (e.weight == min_kept) {
                    for (auto const& kept : t) {
                        if (kept.weight == min_kept) {
                            CHECK(kept.term < e.term);
                        }
                    }
                }
            }
        }
    }
}
