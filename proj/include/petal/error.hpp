#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace petal {

// Every domain failure carries one of these kinds; the CLI prints the name.
enum class ErrorKind {
  Empty,
  EvenLength,
  NotAPermutation,
  IndexOutOfRange,
  MalformedGrid,
  MalformedDiagram,
  MultiComponentClosure,
  DegenerateGeometry,
  StateSpaceTooLarge,
  TooManyCrossings,
  OverflowDetected,
  NonDivisible,
  MissingData,
  CorruptRecord,
  NotFound,
  BudgetExceeded,
  NonGenericDirection,
  ParseError,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::EvenLength: return "EvenLength";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MalformedGrid: return "MalformedGrid";
    case ErrorKind::MalformedDiagram: return "MalformedDiagram";
    case ErrorKind::MultiComponentClosure: return "MultiComponentClosure";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorKind::TooManyCrossings: return "TooManyCrossings";
    case ErrorKind::OverflowDetected: return "OverflowDetected";
    case ErrorKind::NonDivisible: return "NonDivisible";
    case ErrorKind::MissingData: return "MissingData";
    case ErrorKind::CorruptRecord: return "CorruptRecord";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonGenericDirection: return "NonGenericDirection";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace petal
