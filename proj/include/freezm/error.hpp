#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freezm {

enum class ErrorKind {
  ModulusMismatch,
  NotDivisible,
  DimensionMismatch,
  ZeroVector,
  BadIndex,
  NotComplement,
  PreconditionFailed,
  Degenerate,
  NormalizationFailed,
  SearchExhausted,
  ParityObstruction,
  AugmentationObstruction,
  OddModulus,
  OutOfTable,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotComplement: return "NotComplement";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NormalizationFailed: return "NormalizationFailed";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::ParityObstruction: return "ParityObstruction";
    case ErrorKind::AugmentationObstruction: return "AugmentationObstruction";
    case ErrorKind::OddModulus: return "OddModulus";
    case ErrorKind::OutOfTable: return "OutOfTable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace freezm
