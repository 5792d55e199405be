#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace kcenter {

enum class ErrorCode {
  AsymmetricMatrix,
  NegativeDistance,
  NonzeroDiagonal,
  TriangleViolation,
  DimensionMismatch,
  UnknownPointId,
  KTooLarge,
  InstanceTooLarge,
  MemoryExceeded,
  RoundLimitExceeded,
  InvalidParams,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  Error(ErrorCode code, const std::string& what, std::array<std::uint32_t, 3> triple)
      : Error(code, what) {
    triple_ = triple;
  }

  ErrorCode code() const { return code_; }

  // Set for TriangleViolation: the offending (p, q, r).
  const std::optional<std::array<std::uint32_t, 3>>& triple() const { return triple_; }

 private:
  ErrorCode code_;
  std::optional<std::array<std::uint32_t, 3>> triple_;
};

}  // namespace kcenter
