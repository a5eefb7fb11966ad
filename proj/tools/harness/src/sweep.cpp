#include "impactir/harness/sweep.hpp"

#include <ostream>

#include "impactir/error.hpp"
#include "impactir/formats.hpp"
#include "impactir/harness/parallel.hpp"

namespace impactir::harness {

SparseVector query_vector(NamedQuery const& query, ImpactIndex const& index)
{
    return query.text ? bm25_query_vector(query.tokens, index) : query.vector;
}

void SweepSpec::validate() const
{
    if (document_k.empty() || query_k.empty() || thresholds.empty()) {
        throw Error(ErrorCode::InvalidArgument, "sweep grid lists must be non-empty");
    }
    for (auto t : thresholds) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "sweep thresholds must lie in [0, 1]");
        }
    }
    if (top_n == 0 || eval_k == 0 || repetitions == 0) {
        throw Error(ErrorCode::InvalidArgument, "top_n, eval_k and repetitions must be >= 1");
    }
}

RunResults run_queries(ImpactIndex const& index,
                       std::span<NamedQuery const> queries,
                       SearchParams const& params,
                       std::size_t repetitions,
                       std::size_t workers)
{
    std::vector<QueryRun> runs(queries.size());
    parallel_for(queries.size(), workers, [&](std::size_t i) {
        auto vector = query_vector(queries[i], index);
        auto& run = runs[i];
        try {
            SearchParams timed = params;
            timed.count_all_candidates = false;
            SearchOutcome outcome;
            double total = 0.0;
            for (std::size_t r = 0; r < repetitions; ++r) {
                outcome = search(index, vector, timed);
                total += outcome.stats.seconds;
            }
            run.latency_seconds = total / static_cast<double>(repetitions);
            run.candidates_post_filter = outcome.stats.candidates_post_filter;
            if (outcome.stats.candidates_pre_filter) {
                run.candidates_pre_filter = *outcome.stats.candidates_pre_filter;
            } else {
                // untimed: the full disjunctive count is instrumentation only
                SearchParams counting = params;
                counting.count_all_candidates = true;
                run.candidates_pre_filter = *search(index, vector, counting).stats.candidates_pre_filter;
            }
            for (auto const& hit : outcome.results) {
                run.ranking.push_back({hit.external_id, hit.score});
            }
        } catch (Error const& e) {
            if (e.code() != ErrorCode::EmptyQuery) {
                throw;
            }
        }
    });
    RunResults results;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        results.insert_or_assign(queries[i].id, std::move(runs[i]));
    }
    return results;
}

std::vector<SweepRow> run_sweep(SweepInputs const& inputs, SweepSpec const& spec, std::size_t workers)
{
    spec.validate();
    std::vector<SweepRow> rows;
    for (auto dk : spec.document_k) {
        std::optional<ImpactIndex> pruned;
        if (dk > 0) {
            pruned = prune_index(inputs.index, dk);
        }
        ImpactIndex const& index = pruned ? *pruned : inputs.index;
        for (auto qk : spec.query_k) {
            std::vector<SparseVector> selected;
            selected.reserve(inputs.queries.size());
            for (auto const& q : inputs.queries) {
                selected.push_back(select_query_terms(query_vector(q, index), qk));
            }
            double flops = inputs.queries.empty() ? 0.0 : flops_estimate(index, selected);

            for (auto threshold : spec.thresholds) {
                SearchParams params;
                params.top_n = spec.top_n;
                params.query_k = qk;
                params.threshold = threshold;
                auto run = run_queries(index, inputs.queries, params, spec.repetitions, workers);

                SweepRow row;
                row.document_k = dk;
                row.query_k = qk;
                row.threshold = threshold;
                row.flops = flops;
                // sums in query-id order keep the row independent of scheduling
                double latency = 0.0;
                double pre = 0.0;
                double post = 0.0;
                for (auto const& [id, q] : run) {
                    latency += q.latency_seconds;
                    pre += static_cast<double>(q.candidates_pre_filter);
                    post += static_cast<double>(q.candidates_post_filter);
                }
                if (!run.empty()) {
                    auto n = static_cast<double>(run.size());
                    row.latency_mean_s = latency / n;
                    row.candidates_pre_filter_mean = pre / n;
                    row.candidates_post_filter_mean = post / n;
                }
                row.mrr = mrr_at_k(run, inputs.judgments, spec.eval_k);
                if (inputs.embeddings != nullptr) {
                    row.sss = sss_at_k(run, inputs.judgments, *inputs.embeddings, spec.eval_k);
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<std::string> const& sweep_csv_columns()
{
    static std::vector<std::string> const columns{
        "document_k",     "query_k", "threshold",      "latency_mean_s",           "mrr_at_k",
        "sss_at_k",       "flops_estimate", "candidates_pre_filter_mean", "candidates_post_filter_mean"};
    return columns;
}

std::vector<std::string> const& sweep_latency_columns()
{
    static std::vector<std::string> const columns{"latency_mean_s"};
    return columns;
}

void write_sweep_csv(std::ostream& out, std::span<SweepRow const> rows)
{
    auto const& columns = sweep_csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (auto const& r : rows) {
        out << r.document_k << ',' << r.query_k << ',' << format_double(r.threshold) << ','
            << format_double(r.latency_mean_s) << ',' << format_double(r.mrr) << ','
            << (r.sss ? format_double(*r.sss) : std::string()) << ',' << format_double(r.flops) << ','
            << format_double(r.candidates_pre_filter_mean) << ',' << format_double(r.candidates_post_filter_mean)
            << '\n';
    }
}

}  // namespace impactir::harness
