#include "impactir/error.hpp"

namespace impactir {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DuplicateTerm: return "DuplicateTerm";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DuplicateDocId: return "DuplicateDocId";
    case ErrorCode::TermOutOfRange: return "TermOutOfRange";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoJudgedQueries: return "NoJudgedQueries";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::EmptyQuerySet: return "EmptyQuerySet";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

int exit_code(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return 1;
    case ErrorCode::InvariantViolation: return 3;
    default: return 2;
    }
}

Error::Error(ErrorCode code, std::string const& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), m_code(code)
{}

}  // namespace impactir
