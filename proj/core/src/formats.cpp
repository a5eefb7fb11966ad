#include "impactir/formats.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "impactir/error.hpp"

namespace impactir {

namespace {

class LineReader {
   public:
    LineReader(std::istream& in, std::string_view source) : m_in(in), m_source(source) {}

    /// Next non-blank line; false at end of input.
    bool next(std::string& line)
    {
        while (std::getline(m_in, line)) {
            ++m_line;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.find_first_not_of(" \t") != std::string::npos) {
                return true;
            }
        }
        if (m_in.bad()) {
            throw Error(ErrorCode::Io, std::string(m_source) + ": read failed");
        }
        return false;
    }

    [[noreturn]] void fail(std::string const& what) const
    {
        throw Error(ErrorCode::ParseError, std::string(m_source) + ":" + std::to_string(m_line) + ": " + what);
    }

   private:
    std::istream& m_in;
    std::string_view m_source;
    std::size_t m_line = 0;
};

std::vector<std::string_view> split_whitespace(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        auto start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

std::pair<std::string_view, std::string_view> split_tab(LineReader const& reader, std::string_view line)
{
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
        reader.fail("expected a TAB after the record id");
    }
    auto id = line.substr(0, tab);
    if (id.empty()) {
        reader.fail("empty record id");
    }
    return {id, line.substr(tab + 1)};
}

template <typename T>
bool parse_number(std::string_view text, T& value)
{
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc() && ptr == end;
}

double parse_real(LineReader const& reader, std::string_view text)
{
    double value = 0.0;
    if (!parse_number(text, value)) {
        reader.fail("invalid number '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) {
        reader.fail("non-finite number '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::vector<VectorRecord> read_vector_records(std::istream& in, std::string_view source)
{
    LineReader reader(in, source);
    std::vector<VectorRecord> records;
    std::string line;
    while (reader.next(line)) {
        auto [id, rest] = split_tab(reader, line);
        VectorRecord record{std::string(id), {}};
        for (auto pair : split_whitespace(rest)) {
            auto colon = pair.rfind(':');
            if (colon == std::string_view::npos || colon == 0) {
                reader.fail("expected term:weight, got '" + std::string(pair) + "'");
            }
            double weight = parse_real(reader, pair.substr(colon + 1));
            if (weight < 0.0) {
                reader.fail("negative weight in '" + std::string(pair) + "'");
            }
            record.terms.emplace_back(std::string(pair.substr(0, colon)), weight);
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<TextDocument> read_text_records(std::istream& in, std::string_view source)
{
    LineReader reader(in, source);
    std::vector<TextDocument> records;
    std::string line;
    while (reader.next(line)) {
        auto [id, rest] = split_tab(reader, line);
        TextDocument doc{std::string(id), {}};
        for (auto token : split_whitespace(rest)) {
            doc.tokens.emplace_back(token);
        }
        records.push_back(std::move(doc));
    }
    return records;
}

ParsedCorpus read_vector_corpus(std::istream& in, std::string_view source)
{
    LineReader reader(in, source);
    ParsedCorpus corpus;
    std::string line;
    std::vector<std::pair<TermId, double>> pairs;
    while (reader.next(line)) {
        auto [id, rest] = split_tab(reader, line);
        pairs.clear();
        for (auto pair : split_whitespace(rest)) {
            auto colon = pair.rfind(':');
            if (colon == std::string_view::npos || colon == 0) {
                reader.fail("expected term:weight, got '" + std::string(pair) + "'");
            }
            double weight = parse_real(reader, pair.substr(colon + 1));
            pairs.emplace_back(corpus.vocab.intern(pair.substr(0, colon)), weight);
        }
        try {
            corpus.docs.push_back({std::string(id), from_pairs(pairs), static_cast<std::uint32_t>(pairs.size())});
        } catch (Error const& e) {
            reader.fail(e.what());
        }
    }
    return corpus;
}

Judgments read_judgments(std::istream& in, std::string_view source)
{
    LineReader reader(in, source);
    Judgments judgments;
    std::string line;
    while (reader.next(line)) {
        auto [query_id, rest] = split_tab(reader, line);
        auto fields = split_whitespace(rest);
        if (fields.size() != 1) {
            reader.fail("expected query_id TAB doc_id");
        }
        judgments.add(std::string(query_id), std::string(fields[0]));
    }
    return judgments;
}

EmbeddingStore read_embeddings(std::istream& in, std::string_view source)
{
    LineReader reader(in, source);
    EmbeddingStore store;
    std::string line;
    while (reader.next(line)) {
        auto [doc_id, rest] = split_tab(reader, line);
        std::vector<double> values;
        for (auto field : split_whitespace(rest)) {
            values.push_back(parse_real(reader, field));
        }
        try {
            store.add(std::string(doc_id), std::move(values));
        } catch (Error const& e) {
            reader.fail(e.what());
        }
    }
    return store;
}

void write_vector_record(std::ostream& out, std::string_view id, WeightedTerms const& terms)
{
    out << id << '\t';
    bool first = true;
    for (auto const& [term, weight] : terms) {
        if (!first) {
            out << ' ';
        }
        first = false;
        out << term << ':' << format_double(weight);
    }
    out << '\n';
}

void write_results(std::ostream& out, std::string_view query_id, std::vector<SearchResult> const& results)
{
    std::size_t rank = 1;
    for (auto const& r : results) {
        out << query_id << '\t' << rank++ << '\t' << r.external_id << '\t' << format_double(r.score) << '\t'
            << r.matched_terms << '\n';
    }
}

RunResults read_results(std::istream& in, std::string_view source)
{
    LineReader reader(in, source);
    RunResults run;
    std::string line;
    while (reader.next(line)) {
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
            fields.push_back(rest.substr(0, tab));
            rest = rest.substr(tab + 1);
        }
        fields.push_back(rest);
        if (fields.size() != 5) {
            reader.fail("expected 5 TAB-separated fields");
        }
        std::size_t rank = 0;
        std::size_t matched = 0;
        if (!parse_number(fields[1], rank) || rank == 0) {
            reader.fail("invalid rank '" + std::string(fields[1]) + "'");
        }
        if (!parse_number(fields[4], matched)) {
            reader.fail("invalid matched_terms '" + std::string(fields[4]) + "'");
        }
        auto& ranking = run[std::string(fields[0])].ranking;
        if (rank != ranking.size() + 1) {
            reader.fail("ranks must be consecutive from 1 within a query");
        }
        ranking.push_back({std::string(fields[2]), parse_real(reader, fields[3])});
    }
    return run;
}

std::string format_double(double value)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string format_float(float value)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::ifstream open_input(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    }
    return out;
}

}  // namespace impactir
