#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reltutte {

enum class Errc {
  UnknownEdge,
  DuplicateEdgeId,
  ContractLoop,
  NotACutpoint,
  BadReattachChoice,
  LoopTwoSum,
  NotRegular,
  MixedColors,
  ColorClash,
  ImproperLabeling,
  InvalidContractingSet,
  NotLinearInZ,
  MissingKey,
  NoPointedEdge,
  PointedIsLoopOrBridge,
  InvalidPointedGraph,
  InstanceInvalid,
  TypeMismatch,
  InvalidPartition,
  ParseError,
  TwoPointedEdges,
  PointedZeroConflict,
  InternalInvariant,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception carrying a machine-checkable error code. Every failure raised by
/// the library is an Error; the message is for humans, the code is for tests
/// and for mapping to CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace reltutte
