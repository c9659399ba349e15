#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rnaudit {

enum class Errc {
  kUnknownEndpoint,
  kSelfLoop,
  kDuplicateRank,
  kDuplicateItemId,
  kUnknownItem,
  kEmptyItems,
  kMalformedLine,
  kEmptyGenres,
  kMalformedRow,
  kNonPositiveRank,
  kEmptyGenreSet,
  kMissingCentrality,
  kDegenerateBinning,
  kZeroExposure,
  kUnitMismatch,
  kInfeasibleConfig,
  kInvalidArgument,
  kIo,
};

std::string_view errc_name(Errc code);

/// Single exception type for every recoverable failure in the library.
/// The code identifies the failure class, what() carries the detail.
class AuditError : public std::runtime_error {
 public:
  AuditError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rnaudit
