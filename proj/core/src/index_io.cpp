#include "impactir/index_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include <boost/crc.hpp>

#include "impactir/error.hpp"

namespace impactir {

namespace {

constexpr std::array<std::uint8_t, 4> magic{'S', 'P', 'I', 'X'};

class Writer {
   public:
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void bytes(std::span<std::uint8_t const> b) { m_out.insert(m_out.end(), b.begin(), b.end()); }
    void str(std::string const& s)
    {
        if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
            throw Error(ErrorCode::InvalidArgument, "string too long for index format");
        }
        u32(static_cast<std::uint32_t>(s.size()));
        m_out.insert(m_out.end(), s.begin(), s.end());
    }
    std::vector<std::uint8_t>& buffer() { return m_out; }

   private:
    void put(std::uint64_t v, int width)
    {
        for (int i = 0; i < width; ++i) {
            m_out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    std::vector<std::uint8_t> m_out;
};

class Reader {
   public:
    explicit Reader(std::span<std::uint8_t const> in) : m_in(in) {}

    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    float f32() { return std::bit_cast<float>(u32()); }
    std::string str()
    {
        auto len = u32();
        need(len);
        std::string s(reinterpret_cast<char const*>(m_in.data() + m_pos), len);
        m_pos += len;
        return s;
    }
    [[nodiscard]] std::size_t position() const noexcept { return m_pos; }
    [[nodiscard]] std::size_t remaining() const noexcept { return m_in.size() - m_pos; }
    void need(std::uint64_t n) const
    {
        if (n > remaining()) {
            throw Error(ErrorCode::TruncatedFile,
                        "needed " + std::to_string(n) + " bytes at offset " + std::to_string(m_pos));
        }
    }

    void need_items(std::uint64_t count, std::uint64_t item_size) const
    {
        if (count > remaining() / item_size) {
            throw Error(ErrorCode::TruncatedFile,
                        std::to_string(count) + " entries do not fit at offset " + std::to_string(m_pos));
        }
    }

   private:
    std::uint64_t get(int width)
    {
        need(static_cast<std::uint64_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(m_in[m_pos + i]) << (8 * i);
        }
        m_pos += width;
        return v;
    }

    std::span<std::uint8_t const> m_in;
    std::size_t m_pos = 0;
};

}  // namespace

std::uint32_t crc32c(std::span<std::uint8_t const> bytes) noexcept
{
    boost::crc_optimal<32, 0x1EDC6F41, 0xFFFFFFFF, 0xFFFFFFFF, true, true> crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

std::vector<std::uint8_t> serialize_index(ImpactIndex const& index)
{
    Writer w;
    w.bytes(magic);
    w.u32(index_format_version);
    w.u64(index.doc_count());
    w.u64(index.vocab_size());
    for (auto const& term : index.vocabulary().terms()) {
        w.str(term);
    }
    for (auto const& doc : index.docs()) {
        w.str(doc.external_id);
        w.u32(doc.term_count);
        w.u32(doc.raw_length);
    }
    for (std::uint32_t t = 0; t < index.vocab_size(); ++t) {
        auto list = index.postings(TermId{t});
        w.u64(list.size());
        for (auto const& p : list) {
            w.u32(p.doc);
            w.f32(p.impact);
        }
    }
    w.u32(crc32c(w.buffer()));
    return std::move(w.buffer());
}

ImpactIndex deserialize_index(std::span<std::uint8_t const> bytes)
{
    if (bytes.size() >= magic.size() && !std::equal(magic.begin(), magic.end(), bytes.begin())) {
        throw Error(ErrorCode::BadMagic, "not an impact index file");
    }
    Reader r(bytes);
    (void)r.u32();
    auto version = r.u32();
    if (version != index_format_version) {
        throw Error(ErrorCode::UnsupportedVersion, "format version " + std::to_string(version));
    }
    auto doc_count = r.u64();
    auto vocab_size = r.u64();
    // a document or a term takes at least 12 bytes, which bounds allocations on garbage input
    r.need_items(doc_count, 12);
    r.need_items(vocab_size, 12);

    Vocabulary vocab;
    for (std::uint64_t t = 0; t < vocab_size; ++t) {
        try {
            vocab.add(r.str());
        } catch (Error const& e) {
            if (e.code() != ErrorCode::DuplicateTerm) {
                throw;
            }
            throw Error(ErrorCode::InvariantViolation, e.what());
        }
    }
    std::vector<DocRecord> docs;
    docs.reserve(doc_count);
    for (std::uint64_t d = 0; d < doc_count; ++d) {
        DocRecord doc;
        doc.external_id = r.str();
        doc.ordinal = static_cast<std::uint32_t>(d);
        doc.term_count = r.u32();
        doc.raw_length = r.u32();
        docs.push_back(std::move(doc));
    }
    std::vector<PostingList> postings(vocab_size);
    for (auto& list : postings) {
        auto n = r.u64();
        r.need_items(n, 8);
        list.resize(n);
        for (auto& p : list) {
            p.doc = r.u32();
            p.impact = r.f32();
        }
    }
    auto body_size = r.position();
    auto stored = r.u32();
    if (r.remaining() != 0 || stored != crc32c(bytes.first(body_size))) {
        throw Error(ErrorCode::ChecksumMismatch, "index checksum does not match contents");
    }
    return ImpactIndex(std::move(vocab), std::move(docs), std::move(postings));
}

void save_index(ImpactIndex const& index, std::filesystem::path const& destination)
{
    auto bytes = serialize_index(index);
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open " + destination.string() + " for writing");
    }
    out.write(reinterpret_cast<char const*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing " + destination.string());
    }
}

ImpactIndex load_index(std::filesystem::path const& source)
{
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + source.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_index(bytes);
}

}  // namespace impactir
