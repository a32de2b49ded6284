#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

// Every failure the engine can report. Each carries a stable kind tag so
// callers (tests, the CLI) can dispatch without parsing messages.
enum class ErrorKind {
  DuplicateName,
  UnknownSort,
  UnknownName,
  TypeMismatch,
  NotPermutationTerm,
  BoundaryMismatch,
  NotMonogamous,
  CyclicGraph,
  UnknownTheory,
  StaleMatch,
  MixedGenerators,
  NoSuchRule,
  NoSuchMatch,
  UnassignedGenerator,
  UnsupportedStructure,
  MissingCompactStructure,
  SyntaxError,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownSort: return "UnknownSort";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotPermutationTerm: return "NotPermutationTerm";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::NotMonogamous: return "NotMonogamous";
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::UnknownTheory: return "UnknownTheory";
    case ErrorKind::StaleMatch: return "StaleMatch";
    case ErrorKind::MixedGenerators: return "MixedGenerators";
    case ErrorKind::NoSuchRule: return "NoSuchRule";
    case ErrorKind::NoSuchMatch: return "NoSuchMatch";
    case ErrorKind::UnassignedGenerator: return "UnassignedGenerator";
    case ErrorKind::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorKind::MissingCompactStructure: return "MissingCompactStructure";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::Internal: return "Internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace sdc
