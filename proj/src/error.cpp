#include "rnaudit/error.hpp"

namespace rnaudit {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kUnknownEndpoint: return "UnknownEndpoint";
    case Errc::kSelfLoop: return "SelfLoop";
    case Errc::kDuplicateRank: return "DuplicateRank";
    case Errc::kDuplicateItemId: return "DuplicateItemId";
    case Errc::kUnknownItem: return "UnknownItem";
    case Errc::kEmptyItems: return "EmptyItems";
    case Errc::kMalformedLine: return "MalformedLine";
    case Errc::kEmptyGenres: return "EmptyGenres";
    case Errc::kMalformedRow: return "MalformedRow";
    case Errc::kNonPositiveRank: return "NonPositiveRank";
    case Errc::kEmptyGenreSet: return "EmptyGenreSet";
    case Errc::kMissingCentrality: return "MissingCentrality";
    case Errc::kDegenerateBinning: return "DegenerateBinning";
    case Errc::kZeroExposure: return "ZeroExposure";
    case Errc::kUnitMismatch: return "UnitMismatch";
    case Errc::kInfeasibleConfig: return "InfeasibleConfig";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace rnaudit
