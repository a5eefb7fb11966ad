#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "impactir/bm25.hpp"
#include "impactir/index.hpp"
#include "impactir/metrics.hpp"
#include "impactir/retrieval.hpp"
#include "impactir/harness/sweep.hpp"
#include "impactir/harness/synthetic.hpp"

namespace impactir::harness {

// Library side of the `impactir` subcommands. Each returns its result and
// writes human-readable output to the given streams; errors surface as
// `impactir::Error`.

enum class InputMode { Vector, Text };

[[nodiscard]] InputMode parse_input_mode(std::string const& name);

/// Corpus file -> index, honouring the input mode (text mode applies BM25).
[[nodiscard]] ImpactIndex build_from_corpus(std::filesystem::path const& corpus,
                                            InputMode mode,
                                            std::size_t document_k,
                                            Bm25Params bm25 = {});

[[nodiscard]] std::vector<NamedQuery> read_queries(std::filesystem::path const& path,
                                                   InputMode mode,
                                                   Vocabulary const& vocab);

void print_index_stats(std::ostream& out, IndexStats const& stats);

struct BuildCommand {
    std::filesystem::path corpus;
    InputMode mode = InputMode::Vector;
    std::size_t document_k = 0;
    std::filesystem::path output;
    Bm25Params bm25;
};

IndexStats cmd_build(BuildCommand const& cmd, std::ostream& log);

struct SearchCommand {
    std::filesystem::path index;
    std::filesystem::path queries;
    InputMode mode = InputMode::Vector;
    SearchParams params;
    std::size_t workers = 1;
};

/// Writes result lines to `out` in query-file order; queries that end up
/// empty produce a warning on `warn` and no result lines.
RunResults cmd_search(SearchCommand const& cmd, std::ostream& out, std::ostream& warn);

struct EvalCommand {
    std::filesystem::path results;
    std::filesystem::path judgments;
    std::optional<std::filesystem::path> embeddings;
    std::size_t k = 10;
    SssAggregation aggregation = SssAggregation::Max;
    std::optional<std::filesystem::path> csv;
};

struct EvalReport {
    std::size_t judged_queries = 0;
    std::size_t k = 10;
    double mrr = 0.0;
    std::optional<double> sss;
};

EvalReport cmd_eval(EvalCommand const& cmd, std::ostream& out);

struct SweepCommand {
    std::filesystem::path corpus;
    std::filesystem::path queries;
    std::filesystem::path judgments;
    std::optional<std::filesystem::path> embeddings;
    InputMode mode = InputMode::Vector;
    SweepSpec spec;
    std::filesystem::path output;
    std::size_t workers = 1;
};

std::vector<SweepRow> cmd_sweep(SweepCommand const& cmd, std::ostream& log);

struct FlopsCommand {
    std::filesystem::path index;
    std::filesystem::path queries;
    InputMode mode = InputMode::Vector;
    std::size_t query_k = 0;
};

double cmd_flops(FlopsCommand const& cmd, std::ostream& out);

struct SelftestCommand {
    std::uint64_t seed = 42;
    std::size_t batch_size = 8;
    std::size_t vocab_size = 16;
    std::size_t instances = 50;
};

struct SelftestReport {
    double in_batch_grad_error = 0.0;
    double flops_grad_error = 0.0;
    double joint_flops_grad_error = 0.0;
    double value_error = 0.0;
    double uniform_loss = 0.0;
    double uniform_expected = 0.0;
    bool passed = false;
};

/// Tolerances the self-test holds the loss kernel to.
inline constexpr double selftest_gradient_tolerance = 1e-5;
inline constexpr double selftest_value_tolerance = 1e-12;
inline constexpr double selftest_fd_step = 1e-5;

SelftestReport cmd_losses_selftest(SelftestCommand const& cmd, std::ostream& out);

SyntheticPaths cmd_gen_synthetic(SyntheticParams const& params,
                                 std::filesystem::path const& directory,
                                 std::ostream& log);

}  // namespace impactir::harness
