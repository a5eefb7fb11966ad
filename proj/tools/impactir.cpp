#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "impactir/error.hpp"
#include "impactir/harness/commands.hpp"

using namespace impactir;
using namespace impactir::harness;

namespace {

void add_mode_option(CLI::App* cmd, std::string& mode)
{
    cmd->add_option("--mode", mode, "Input format: vector (term:weight) or text (BM25)")
        ->check(CLI::IsMember({"vector", "text"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sparse impact-index retrieval with static and query-time pruning."};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value config file; command-line flags take precedence");

    std::uint64_t seed = 42;
    std::size_t workers = 1;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--workers", workers, "Worker threads for query evaluation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // build
    BuildCommand build;
    std::string build_mode = "vector";
    auto* build_cmd = app.add_subcommand("build", "Build an impact index from a corpus file");
    build_cmd->add_option("corpus", build.corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    build_cmd->add_option("-o,--output", build.output, "Index file to write")->required();
    build_cmd->add_option("--document-k", build.document_k, "Keep the k highest-impact terms per document (0 = all)")
        ->capture_default_str();
    build_cmd->add_option("--k1", build.bm25.k1, "BM25 k1 (text mode)")->capture_default_str();
    build_cmd->add_option("--b", build.bm25.b, "BM25 b (text mode)")->capture_default_str();
    add_mode_option(build_cmd, build_mode);

    // search
    SearchCommand search_opts;
    std::string search_mode = "vector";
    std::string search_output;
    auto* search_cmd = app.add_subcommand("search", "Run a query file against an index");
    search_cmd->add_option("index", search_opts.index, "Index file")->required()->check(CLI::ExistingFile);
    search_cmd->add_option("queries", search_opts.queries, "Query file")->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--top-n", search_opts.params.top_n, "Results per query")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search_cmd->add_option("--query-k", search_opts.params.query_k, "Keep the k highest-weight query terms (0 = all)")
        ->capture_default_str();
    search_cmd->add_option("--threshold", search_opts.params.threshold, "Fraction of query terms a document must match")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    search_cmd->add_option("-o,--output", search_output, "Results file (default: stdout)");
    add_mode_option(search_cmd, search_mode);

    // eval
    EvalCommand eval;
    std::string eval_embeddings;
    std::string eval_csv;
    std::string aggregation = "max";
    auto* eval_cmd = app.add_subcommand("eval", "Score a results file with MRR@k and SSS@k");
    eval_cmd->add_option("results", eval.results, "Results file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("judgments", eval.judgments, "Judgments file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--embeddings", eval_embeddings, "Embeddings file; enables SSS@k")->check(CLI::ExistingFile);
    eval_cmd->add_option("-k", eval.k, "Cutoff")->check(CLI::PositiveNumber)->capture_default_str();
    eval_cmd->add_option("--sss-aggregation", aggregation, "Combine ground-truth similarities by max or mean")
        ->check(CLI::IsMember({"max", "mean"}))
        ->capture_default_str();
    eval_cmd->add_option("--csv", eval_csv, "Also write the report as CSV");

    // sweep
    SweepCommand sweep;
    std::string sweep_mode = "vector";
    std::string sweep_embeddings;
    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a document_k x query_k x threshold grid");
    sweep_cmd->add_option("corpus", sweep.corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("queries", sweep.queries, "Query file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("judgments", sweep.judgments, "Judgments file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--embeddings", sweep_embeddings, "Embeddings file; enables SSS@k")->check(CLI::ExistingFile);
    sweep_cmd->add_option("-o,--output", sweep.output, "CSV file to write")->required();
    sweep_cmd->add_option("--document-k", sweep.spec.document_k, "document_k values (0 = no pruning)")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--query-k", sweep.spec.query_k, "query_k values (0 = no pruning)")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--thresholds", sweep.spec.thresholds, "Term thresholds in [0, 1]")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--top-n", sweep.spec.top_n, "Results per query")->capture_default_str();
    sweep_cmd->add_option("-k", sweep.spec.eval_k, "Metric cutoff")->capture_default_str();
    sweep_cmd->add_option("--repetitions", sweep.spec.repetitions, "Timed repetitions per query and cell")
        ->capture_default_str();
    add_mode_option(sweep_cmd, sweep_mode);

    // flops
    FlopsCommand flops;
    std::string flops_mode = "vector";
    auto* flops_cmd = app.add_subcommand("flops", "Estimate shared activations per query-document pair");
    flops_cmd->add_option("index", flops.index, "Index file")->required()->check(CLI::ExistingFile);
    flops_cmd->add_option("queries", flops.queries, "Query file")->required()->check(CLI::ExistingFile);
    flops_cmd->add_option("--query-k", flops.query_k, "Keep the k highest-weight query terms (0 = all)")
        ->capture_default_str();
    add_mode_option(flops_cmd, flops_mode);

    // losses-selftest
    SelftestCommand selftest;
    auto* selftest_cmd = app.add_subcommand("losses-selftest", "Check loss values and gradients numerically");
    selftest_cmd->add_option("--batch", selftest.batch_size, "Batch size N")->check(CLI::PositiveNumber)->capture_default_str();
    selftest_cmd->add_option("--vocab", selftest.vocab_size, "Vocabulary size V")->check(CLI::PositiveNumber)->capture_default_str();
    selftest_cmd->add_option("--instances", selftest.instances, "Random instances")->check(CLI::PositiveNumber)->capture_default_str();

    // gen-synthetic
    SyntheticParams synth;
    std::string synth_dir;
    auto* synth_cmd = app.add_subcommand("gen-synthetic", "Write a seeded synthetic corpus, queries, judgments and embeddings");
    synth_cmd->add_option("-o,--output-dir", synth_dir, "Output directory")->required();
    synth_cmd->add_option("--docs", synth.doc_count, "Documents")->capture_default_str();
    synth_cmd->add_option("--vocab", synth.vocab_size, "Vocabulary size")->capture_default_str();
    synth_cmd->add_option("--queries", synth.query_count, "Queries")->capture_default_str();
    synth_cmd->add_option("--topics", synth.topic_count, "Topics")->capture_default_str();
    synth_cmd->add_option("--terms-per-topic", synth.terms_per_topic, "Vocabulary subset per topic")->capture_default_str();
    synth_cmd->add_option("--topic-share", synth.topic_term_share, "Share of document terms drawn from the topic")
        ->capture_default_str();
    synth_cmd->add_option("--background-weight", synth.background_weight, "Weight scale of background terms")
        ->capture_default_str();
    synth_cmd->add_option("--zipf", synth.zipf_exponent, "Zipf exponent")->capture_default_str();
    synth_cmd->add_option("--min-doc-terms", synth.min_doc_terms, "Minimum terms per document")->capture_default_str();
    synth_cmd->add_option("--max-doc-terms", synth.max_doc_terms, "Maximum terms per document")->capture_default_str();
    synth_cmd->add_option("--min-query-terms", synth.min_query_doc_terms, "Minimum terms copied from the relevant document")
        ->capture_default_str();
    synth_cmd->add_option("--max-query-terms", synth.max_query_doc_terms, "Maximum terms copied from the relevant document")
        ->capture_default_str();
    synth_cmd->add_option("--min-expansion", synth.min_query_expansion_terms, "Minimum topic expansion terms per query")
        ->capture_default_str();
    synth_cmd->add_option("--max-expansion", synth.max_query_expansion_terms, "Maximum topic expansion terms per query")
        ->capture_default_str();
    synth_cmd->add_option("--embedding-dim", synth.embedding_dim, "Embedding dimension")->capture_default_str();
    synth_cmd->add_option("--embedding-noise", synth.embedding_noise, "Embedding noise scale")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*build_cmd) {
            build.mode = parse_input_mode(build_mode);
            cmd_build(build, std::cout);
        } else if (*search_cmd) {
            search_opts.mode = parse_input_mode(search_mode);
            search_opts.workers = workers;
            if (search_output.empty()) {
                cmd_search(search_opts, std::cout, std::cerr);
            } else {
                std::ofstream out(search_output);
                if (!out) {
                    throw Error(ErrorCode::Io, "cannot open " + search_output + " for writing");
                }
                cmd_search(search_opts, out, std::cerr);
            }
        } else if (*eval_cmd) {
            if (!eval_embeddings.empty()) {
                eval.embeddings = eval_embeddings;
            }
            if (!eval_csv.empty()) {
                eval.csv = eval_csv;
            }
            eval.aggregation = aggregation == "mean" ? SssAggregation::Mean : SssAggregation::Max;
            cmd_eval(eval, std::cout);
        } else if (*sweep_cmd) {
            sweep.mode = parse_input_mode(sweep_mode);
            sweep.workers = workers;
            if (!sweep_embeddings.empty()) {
                sweep.embeddings = sweep_embeddings;
            }
            cmd_sweep(sweep, std::cerr);
        } else if (*flops_cmd) {
            flops.mode = parse_input_mode(flops_mode);
            cmd_flops(flops, std::cout);
        } else if (*selftest_cmd) {
            selftest.seed = seed;
            if (!cmd_losses_selftest(selftest, std::cout).passed) {
                return exit_code(ErrorCode::InvariantViolation);
            }
        } else if (*synth_cmd) {
            synth.seed = seed;
            cmd_gen_synthetic(synth, synth_dir, std::cerr);
        }
    } catch (Error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (std::exception const& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_code(ErrorCode::InvariantViolation);
    }
    return EXIT_SUCCESS;
}
