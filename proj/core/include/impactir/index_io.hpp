#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "impactir/index.hpp"

namespace impactir {

// On-disk layout, little-endian:
//
//   "SPIX" | u32 version | u64 doc_count | u64 vocab_size
//   vocab:    vocab_size x (u32 len, bytes)                 in TermId order
//   docs:     doc_count x (u32 len, bytes, u32 term_count, u32 raw_length)
//   postings: vocab_size x (u64 n, n x (u32 doc, f32 impact))
//   u32 CRC32C of everything above

inline constexpr std::uint32_t index_format_version = 1;

[[nodiscard]] std::vector<std::uint8_t> serialize_index(ImpactIndex const& index);

/// Throws `Error` with BadMagic, UnsupportedVersion, TruncatedFile or
/// ChecksumMismatch for malformed input.
[[nodiscard]] ImpactIndex deserialize_index(std::span<std::uint8_t const> bytes);

void save_index(ImpactIndex const& index, std::filesystem::path const& destination);
[[nodiscard]] ImpactIndex load_index(std::filesystem::path const& source);

/// CRC32C (Castagnoli) as used for the index trailer.
[[nodiscard]] std::uint32_t crc32c(std::span<std::uint8_t const> bytes) noexcept;

}  // namespace impactir
