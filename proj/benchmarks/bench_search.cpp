#include <benchmark/benchmark.h>

#include "impactir/index.hpp"
#include "impactir/retrieval.hpp"
#include "impactir/harness/synthetic.hpp"

using namespace impactir;
using namespace impactir::harness;

namespace {

struct Fixture {
    ImpactIndex index;
    std::vector<SparseVector> queries;
};

Fixture const& fixture()
{
    static Fixture const f = [] {
        SyntheticParams params;
        params.seed = 7;
        params.doc_count = 20000;
        params.vocab_size = 20000;
        params.query_count = 200;
        auto data = generate_synthetic(params);

        Vocabulary vocab;
        std::vector<CorpusDocument> docs;
        for (auto const& rec : data.docs) {
            std::vector<std::pair<TermId, double>> pairs;
            for (auto const& [term, weight] : rec.terms) {
                pairs.emplace_back(vocab.intern(term), weight);
            }
            docs.push_back({rec.id, from_pairs(pairs), static_cast<std::uint32_t>(pairs.size())});
        }
        std::vector<SparseVector> queries;
        for (auto const& rec : data.queries) {
            queries.push_back(map_query_terms(rec.terms, vocab));
        }
        return Fixture{build_index(docs, std::move(vocab)), std::move(queries)};
    }();
    return f;
}

void run(benchmark::State& state, SearchParams params, ImpactIndex const& index)
{
    auto const& queries = fixture().queries;
    std::size_t i = 0;
    for (auto _ : state) {
        auto outcome = search(index, queries[i++ % queries.size()], params);
        benchmark::DoNotOptimize(outcome);
    }
}

// threshold in percent
void BM_Threshold(benchmark::State& state)
{
    SearchParams params;
    params.threshold = static_cast<double>(state.range(0)) / 100.0;
    run(state, params, fixture().index);
}
BENCHMARK(BM_Threshold)->Arg(0)->Arg(20)->Arg(40)->Arg(60)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_QueryK(benchmark::State& state)
{
    SearchParams params;
    params.query_k = static_cast<std::size_t>(state.range(0));
    run(state, params, fixture().index);
}
BENCHMARK(BM_QueryK)->Arg(0)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_DocumentK(benchmark::State& state)
{
    static auto const pruned = prune_index(fixture().index, 10);
    run(state, SearchParams{}, pruned);
}
BENCHMARK(BM_DocumentK)->Unit(benchmark::kMicrosecond);

void BM_Build(benchmark::State& state)
{
    auto vectors = fixture().index.document_vectors();
    std::vector<CorpusDocument> docs;
    for (std::size_t d = 0; d < vectors.size(); ++d) {
        docs.push_back({fixture().index.doc(static_cast<std::uint32_t>(d)).external_id, vectors[d], 0});
    }
    for (auto _ : state) {
        auto index = build_index(docs, fixture().index.vocabulary(), static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(index);
    }
}
BENCHMARK(BM_Build)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
