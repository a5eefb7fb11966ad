#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impactir/bm25.hpp"
#include "impactir/index.hpp"
#include "impactir/metrics.hpp"
#include "impactir/retrieval.hpp"
#include "impactir/vocabulary.hpp"

namespace impactir {

// Newline-delimited text formats. Every reader reports malformed input as
// `Error(ParseError)` with "<source>:<line>: ..." in the message; blank lines
// are skipped.
//
//   vector corpus / queries   id \t term:weight term:weight ...
//   text corpus / queries     id \t whitespace separated tokens
//   judgments                 query_id \t doc_id
//   embeddings                doc_id \t x1 x2 ... xE
//   search results            query_id \t rank \t doc_id \t score \t matched_terms

using WeightedTerms = std::vector<std::pair<std::string, double>>;

struct VectorRecord {
    std::string id;
    WeightedTerms terms;
};

/// A vector corpus with its vocabulary interned in first-appearance order.
struct ParsedCorpus {
    Vocabulary vocab;
    std::vector<CorpusDocument> docs;
};

[[nodiscard]] std::vector<VectorRecord> read_vector_records(std::istream& in, std::string_view source = "<input>");
[[nodiscard]] std::vector<TextDocument> read_text_records(std::istream& in, std::string_view source = "<input>");

/// raw_length of each document is its number of term:weight pairs.
[[nodiscard]] ParsedCorpus read_vector_corpus(std::istream& in, std::string_view source = "<input>");

[[nodiscard]] Judgments read_judgments(std::istream& in, std::string_view source = "<input>");
[[nodiscard]] EmbeddingStore read_embeddings(std::istream& in, std::string_view source = "<input>");

void write_vector_record(std::ostream& out, std::string_view id, WeightedTerms const& terms);
void write_results(std::ostream& out, std::string_view query_id, std::vector<SearchResult> const& results);
[[nodiscard]] RunResults read_results(std::istream& in, std::string_view source = "<input>");

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double value);
[[nodiscard]] std::string format_float(float value);

[[nodiscard]] std::ifstream open_input(std::filesystem::path const& path);
[[nodiscard]] std::ofstream open_output(std::filesystem::path const& path);

}  // namespace impactir
