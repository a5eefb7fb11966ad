#include <catch_amalgamated.hpp>

#include <filesystem>

#include "impactir/error.hpp"
#include "impactir/index_io.hpp"
#include "oracles.hpp"

using namespace impactir;

namespace {

ImpactIndex two_doc_index()
{
    std::vector<CorpusDocument> docs{
        {"A", from_pairs({{TermId{1}, 2.0}, {TermId{2}, 1.0}}), 5},
        {"B", from_pairs({{TermId{2}, 3.0}}), 3},
    };
    return build_index(docs);
}

ErrorCode load_error(std::vector<std::uint8_t> const& bytes)
{
    try {
        (void)deserialize_index(bytes);
    } catch (Error const& e) {
        return e.code();
    }
    return ErrorCode::InvariantViolation;
}

void put_u32(std::vector<std::uint8_t>& bytes, std::size_t at, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) {
        bytes[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
}

}  // namespace

TEST_CASE("crc32c known answer", "[io]")
{
    std::string const check = "123456789";
    CHECK(crc32c({reinterpret_cast<std::uint8_t const*>(check.data()), check.size()}) == 0xE3069283U);
}

TEST_CASE("two-document index layout", "[io]")
{
    auto bytes = serialize_index(two_doc_index());
    // header 24 + vocab 3*(4+1) + docs 2*(4+1+8) + postings (8+0)+(8+8)+(8+16) + crc 4
    CHECK(bytes.size() == 24 + 15 + 26 + 48 + 4);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SPIX");
    CHECK(bytes[4] == 1);
    CHECK(bytes[8] == 2);   // doc_count
    CHECK(bytes[16] == 3);  // vocab_size
    CHECK(deserialize_index(bytes) == two_doc_index());
}

TEST_CASE("save and load through a file", "[io]")
{
    auto path = std::filesystem::temp_directory_path() / "impactir_test_io.spix";
    save_index(two_doc_index(), path);
    CHECK(load_index(path) == two_doc_index());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_index(path), Error);
}

TEST_CASE("corrupted files raise their designated errors", "[io]")
{
    auto good = serialize_index(two_doc_index());

    auto bad_magic = good;
    bad_magic[0] = 'X';
    CHECK(load_error(bad_magic) == ErrorCode::BadMagic);

    auto bad_version = good;
    put_u32(bad_version, 4, 7);
    CHECK(load_error(bad_version) == ErrorCode::UnsupportedVersion);

    auto truncated = good;
    truncated.resize(good.size() - 10);  // inside the postings section
    CHECK(load_error(truncated) == ErrorCode::TruncatedFile);
    CHECK(load_error({}) == ErrorCode::TruncatedFile);
    CHECK(load_error({'S', 'P'}) == ErrorCode::TruncatedFile);

    auto flipped = good;
    flipped[good.size() - 6] ^= 0x01;  // last impact byte
    CHECK(load_error(flipped) == ErrorCode::ChecksumMismatch);

    auto trailing = good;
    trailing.push_back(0);
    CHECK(load_error(trailing) == ErrorCode::ChecksumMismatch);

    // a length field claiming more entries than the file can hold
    auto huge = good;
    put_u32(huge, 8, 0xFFFFFFFFU);
    put_u32(huge, 12, 0xFFFFFFFFU);
    CHECK(load_error(huge) == ErrorCode::TruncatedFile);
}

TEST_CASE("random indexes round-trip exactly", "[io][property]")
{
    oracle::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto corpus = oracle::random_corpus(rng, rng.below(50), 30, 12);
        auto index = build_index(corpus, Vocabulary::numeric(30), rng.below(4) == 0 ? 3 : 0);
        auto bytes = serialize_index(index);
        auto loaded = deserialize_index(bytes);
        CHECK(loaded == index);
        CHECK(serialize_index(loaded) == bytes);
    }
}
