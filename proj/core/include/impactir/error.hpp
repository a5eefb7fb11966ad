#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace impactir {

enum class ErrorCode {
    // sparse vectors
    DuplicateTerm,
    NegativeWeight,
    NonFinite,
    // index construction and persistence
    DuplicateDocId,
    TermOutOfRange,
    BadMagic,
    UnsupportedVersion,
    TruncatedFile,
    ChecksumMismatch,
    // retrieval
    EmptyQuery,
    // losses
    NonSquare,
    DimensionMismatch,
    // metrics
    NoJudgedQueries,
    ZeroVector,
    MissingEmbedding,
    EmptyQuerySet,
    EmptySamples,
    // plumbing
    ParseError,
    Io,
    InvalidArgument,
    InvariantViolation,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code for an error: 1 usage, 2 data, 3 internal invariant.
[[nodiscard]] int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& message);

    [[nodiscard]] ErrorCode code() const noexcept { return m_code; }

   private:
    ErrorCode m_code;
};

}  // namespace impactir
