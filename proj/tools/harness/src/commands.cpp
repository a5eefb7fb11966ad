#include "impactir/harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "impactir/error.hpp"
#include "impactir/formats.hpp"
#include "impactir/index_io.hpp"
#include "impactir/losses.hpp"
#include "impactir/harness/parallel.hpp"
#include "impactir/harness/random.hpp"

namespace impactir::harness {

InputMode parse_input_mode(std::string const& name)
{
    if (name == "vector") {
        return InputMode::Vector;
    }
    if (name == "text") {
        return InputMode::Text;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown mode '" + name + "' (expected vector or text)");
}

ImpactIndex build_from_corpus(std::filesystem::path const& corpus, InputMode mode, std::size_t document_k, Bm25Params bm25)
{
    auto in = open_input(corpus);
    auto source = corpus.string();
    if (mode == InputMode::Text) {
        auto docs = read_text_records(in, source);
        auto vectors = bm25_vectorize_corpus(docs, bm25);
        return build_index(vectors.docs, std::move(vectors.vocab), document_k);
    }
    auto parsed = read_vector_corpus(in, source);
    return build_index(parsed.docs, std::move(parsed.vocab), document_k);
}

std::vector<NamedQuery> read_queries(std::filesystem::path const& path, InputMode mode, Vocabulary const& vocab)
{
    auto in = open_input(path);
    std::vector<NamedQuery> queries;
    if (mode == InputMode::Text) {
        for (auto& record : read_text_records(in, path.string())) {
            queries.push_back({std::move(record.external_id), {}, std::move(record.tokens), true});
        }
        return queries;
    }
    for (auto const& record : read_vector_records(in, path.string())) {
        try {
            queries.push_back({record.id, map_query_terms(record.terms, vocab), {}, false});
        } catch (Error const& e) {
            throw Error(ErrorCode::ParseError, path.string() + ": query " + record.id + ": " + e.what());
        }
    }
    return queries;
}

void print_index_stats(std::ostream& out, IndexStats const& stats)
{
    out << "doc_count=" << stats.doc_count << '\n'
        << "vocab_size=" << stats.vocab_size << '\n'
        << "total_postings=" << stats.total_postings << '\n'
        << "mean_postings_per_term=" << format_double(stats.mean_postings_per_term) << '\n'
        << "mean_term_count=" << format_double(stats.mean_term_count) << '\n'
        << "max_term_count=" << stats.max_term_count << '\n'
        << "activation_histogram=";
    for (std::size_t i = 0; i < stats.activation_histogram.size(); ++i) {
        out << (i ? "," : "") << stats.activation_histogram[i];
    }
    out << '\n';
}

IndexStats cmd_build(BuildCommand const& cmd, std::ostream& log)
{
    auto index = build_from_corpus(cmd.corpus, cmd.mode, cmd.document_k, cmd.bm25);
    save_index(index, cmd.output);
    auto stats = index_stats(index);
    print_index_stats(log, stats);
    return stats;
}

RunResults cmd_search(SearchCommand const& cmd, std::ostream& out, std::ostream& warn)
{
    cmd.params.validate();
    auto index = load_index(cmd.index);
    auto queries = read_queries(cmd.queries, cmd.mode, index.vocabulary());

    struct Slot {
        SearchOutcome outcome;
        std::optional<std::string> warning;
    };
    std::vector<Slot> slots(queries.size());
    parallel_for(queries.size(), cmd.workers, [&](std::size_t i) {
        try {
            slots[i].outcome = search(index, query_vector(queries[i], index), cmd.params);
        } catch (Error const& e) {
            if (e.code() != ErrorCode::EmptyQuery) {
                throw;
            }
            slots[i].warning = e.what();
        }
    });

    RunResults run;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        auto const& slot = slots[i];
        auto& q = run[queries[i].id];
        if (slot.warning) {
            warn << "warning: query " << queries[i].id << ": " << *slot.warning << '\n';
            continue;
        }
        write_results(out, queries[i].id, slot.outcome.results);
        q.latency_seconds = slot.outcome.stats.seconds;
        q.candidates_post_filter = slot.outcome.stats.candidates_post_filter;
        q.candidates_pre_filter = slot.outcome.stats.candidates_pre_filter.value_or(0);
        for (auto const& hit : slot.outcome.results) {
            q.ranking.push_back({hit.external_id, hit.score});
        }
    }
    return run;
}

EvalReport cmd_eval(EvalCommand const& cmd, std::ostream& out)
{
    RunResults run;
    {
        auto in = open_input(cmd.results);
        run = read_results(in, cmd.results.string());
    }
    Judgments judgments;
    {
        auto in = open_input(cmd.judgments);
        judgments = read_judgments(in, cmd.judgments.string());
    }
    EvalReport report;
    report.k = cmd.k;
    report.judged_queries = judgments.size();
    report.mrr = mrr_at_k(run, judgments, cmd.k);
    if (cmd.embeddings) {
        auto in = open_input(*cmd.embeddings);
        auto store = read_embeddings(in, cmd.embeddings->string());
        report.sss = sss_at_k(run, judgments, store, cmd.k, cmd.aggregation);
    }

    auto k = std::to_string(cmd.k);
    out << "judged_queries=" << report.judged_queries << '\n';
    out << "mrr@" << k << '=' << format_double(report.mrr) << '\n';
    if (report.sss) {
        out << "sss@" << k << '=' << format_double(*report.sss) << '\n';
    }
    if (cmd.csv) {
        auto csv = open_output(*cmd.csv);
        csv << "metric,k,value\n";
        csv << "judged_queries,," << report.judged_queries << '\n';
        csv << "mrr," << k << ',' << format_double(report.mrr) << '\n';
        if (report.sss) {
            csv << "sss," << k << ',' << format_double(*report.sss) << '\n';
        }
    }
    return report;
}

std::vector<SweepRow> cmd_sweep(SweepCommand const& cmd, std::ostream& log)
{
    cmd.spec.validate();
    auto index = build_from_corpus(cmd.corpus, cmd.mode, 0);
    auto queries = read_queries(cmd.queries, cmd.mode, index.vocabulary());
    Judgments judgments;
    {
        auto in = open_input(cmd.judgments);
        judgments = read_judgments(in, cmd.judgments.string());
    }
    std::optional<EmbeddingStore> store;
    if (cmd.embeddings) {
        auto in = open_input(*cmd.embeddings);
        store = read_embeddings(in, cmd.embeddings->string());
    }
    log << "sweep: " << index.doc_count() << " docs, " << queries.size() << " queries, "
        << cmd.spec.document_k.size() * cmd.spec.query_k.size() * cmd.spec.thresholds.size() << " cells\n";

    SweepInputs inputs{index, queries, judgments, store ? &*store : nullptr};
    auto rows = run_sweep(inputs, cmd.spec, cmd.workers);
    auto out = open_output(cmd.output);
    write_sweep_csv(out, rows);
    return rows;
}

double cmd_flops(FlopsCommand const& cmd, std::ostream& out)
{
    auto index = load_index(cmd.index);
    auto queries = read_queries(cmd.queries, cmd.mode, index.vocabulary());
    std::vector<SparseVector> vectors;
    vectors.reserve(queries.size());
    for (auto const& q : queries) {
        vectors.push_back(select_query_terms(query_vector(q, index), cmd.query_k));
    }
    auto flops = flops_estimate(index, vectors);
    out << "queries=" << vectors.size() << '\n' << "flops_estimate=" << format_double(flops) << '\n';
    return flops;
}

namespace {

using losses::Matrix;

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double hi)
{
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = rng.uniform(0.0, hi);
    }
    return m;
}

/// Max over entries of |analytic - numeric| / max(|analytic|, |numeric|, 1e-4),
/// the numeric side from central differences.
template <typename Loss>
double gradient_error(Matrix x, Matrix const& analytic, Loss&& loss)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double const saved = x.data()[i];
        x.data()[i] = saved + selftest_fd_step;
        double const up = loss(x);
        x.data()[i] = saved - selftest_fd_step;
        double const down = loss(x);
        x.data()[i] = saved;
        double const numeric = (up - down) / (2.0 * selftest_fd_step);
        double const a = analytic.data()[i];
        double const scale = std::max({std::abs(a), std::abs(numeric), 1e-4});
        worst = std::max(worst, std::abs(a - numeric) / scale);
    }
    return worst;
}

double naive_flops(Matrix const& q, Matrix const& d)
{
    double total = 0.0;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        double mq = 0.0;
        double md = 0.0;
        for (Eigen::Index i = 0; i < q.rows(); ++i) {
            mq += q(i, j);
        }
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
            md += d(i, j);
        }
        total += (mq / static_cast<double>(q.rows())) * (md / static_cast<double>(d.rows()));
    }
    return total;
}

}  // namespace

SelftestReport cmd_losses_selftest(SelftestCommand const& cmd, std::ostream& out)
{
    if (cmd.batch_size == 0 || cmd.vocab_size == 0 || cmd.instances == 0) {
        throw Error(ErrorCode::InvalidArgument, "batch size, vocab size and instances must be >= 1");
    }
    Rng rng(cmd.seed);
    SelftestReport report;
    for (std::size_t n = 0; n < cmd.instances; ++n) {
        losses::Batch batch(random_matrix(rng, cmd.batch_size, cmd.vocab_size, 5.0),
                            random_matrix(rng, cmd.batch_size, cmd.vocab_size, 5.0));
        Matrix scores = random_matrix(rng, cmd.batch_size, cmd.batch_size, 5.0);

        report.in_batch_grad_error = std::max(
            report.in_batch_grad_error,
            gradient_error(scores, losses::in_batch_loss_grad(scores), [](Matrix const& s) {
                return losses::in_batch_loss(s);
            }));
        report.flops_grad_error = std::max(
            report.flops_grad_error,
            gradient_error(batch.queries(), losses::flops_loss_grad(batch.queries()), [](Matrix const& r) {
                return losses::flops_loss(r);
            }));
        auto [gq, gd] = losses::joint_flops_grad(batch.queries(), batch.documents());
        report.joint_flops_grad_error =
            std::max({report.joint_flops_grad_error,
                      gradient_error(batch.queries(), gq,
                                     [&](Matrix const& q) { return losses::joint_flops_loss(q, batch.documents()); }),
                      gradient_error(batch.documents(), gd,
                                     [&](Matrix const& d) { return losses::joint_flops_loss(batch.queries(), d); })});

        auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
        report.value_error = std::max({report.value_error,
                                       rel(losses::flops_loss(batch.queries()), naive_flops(batch.queries(), batch.queries())),
                                       rel(losses::joint_flops_loss(batch.queries(), batch.documents()),
                                           naive_flops(batch.queries(), batch.documents()))});
    }
    Matrix uniform = Matrix::Constant(static_cast<Eigen::Index>(cmd.batch_size),
                                      static_cast<Eigen::Index>(cmd.batch_size), 3.25);
    report.uniform_loss = losses::in_batch_loss(uniform);
    report.uniform_expected = std::log(static_cast<double>(cmd.batch_size));

    bool const grads_ok = report.in_batch_grad_error < selftest_gradient_tolerance &&
                          report.flops_grad_error < selftest_gradient_tolerance &&
                          report.joint_flops_grad_error < selftest_gradient_tolerance;
    bool const values_ok = report.value_error < selftest_value_tolerance &&
                           std::abs(report.uniform_loss - report.uniform_expected) < 1e-9;
    report.passed = grads_ok && values_ok;

    auto line = [&](char const* name, double err, double tol) {
        out << name << " max_error=" << format_double(err) << " tolerance=" << format_double(tol) << ' '
            << (err < tol ? "PASS" : "FAIL") << '\n';
    };
    out << "seed=" << cmd.seed << " batch=" << cmd.batch_size << " vocab=" << cmd.vocab_size
        << " instances=" << cmd.instances << '\n';
    line("in_batch_grad", report.in_batch_grad_error, selftest_gradient_tolerance);
    line("flops_grad", report.flops_grad_error, selftest_gradient_tolerance);
    line("joint_flops_grad", report.joint_flops_grad_error, selftest_gradient_tolerance);
    line("flops_values", report.value_error, selftest_value_tolerance);
    out << "uniform_in_batch_loss=" << format_double(report.uniform_loss)
        << " ln_N=" << format_double(report.uniform_expected) << ' '
        << (std::abs(report.uniform_loss - report.uniform_expected) < 1e-9 ? "PASS" : "FAIL") << '\n';
    out << (report.passed ? "selftest PASS" : "selftest FAIL") << '\n';
    return report;
}

SyntheticPaths cmd_gen_synthetic(SyntheticParams const& params, std::filesystem::path const& directory, std::ostream& log)
{
    auto data = generate_synthetic(params);
    auto paths = write_synthetic(data, directory);
    log << "wrote " << data.docs.size() << " docs, " << data.queries.size() << " queries to "
        << directory.string() << '\n';
    return paths;
}

}  // namespace impactir::harness
