#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levelcontract {

enum class ErrorCode {
  DisconnectedGraph,
  UnknownLevel,
  UnknownVertex,
  InvalidInput,
  MarkedPoleAbove,
  OddSignatureSum,
  MissingResidue,
  UnexpectedResidue,
  SimplePoleZeroResidue,
  LongEdgeCrossing,
  NotContractible,
  InternalInvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

// Library-wide exception. `where` names the offending entity (vertex, edge,
// marking or level) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string where, const std::string& message)
      : std::runtime_error(message), code_(code), where_(std::move(where)) {}

  ErrorCode code() const { return code_; }
  const std::string& where() const { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace levelcontract
