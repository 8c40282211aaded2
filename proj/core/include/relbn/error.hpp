#pragma once

#include <stdexcept>
#include <string>

namespace relbn {

// Every error the library raises carries one of these categories so callers
// (and the CLI exit-code mapping) can react without parsing message text.
enum class ErrorKind {
  Schema,              // unknown attribute / value, conflicting domains, malformed scheme
  UndefinedFrequency,  // frequency requested on an empty relation
  UndefinedConditional,// conditional requested on a zero-count configuration
  UnsupportedDependency, // operation defined for FDs only (or similar kind mismatch)
  Coverage,            // a dependency is not contained in any provided relation scheme
  CyclicDependencies,  // the directed graph induced by the dependencies has a cycle
  Configuration,       // invalid option values (annealing schedule, tolerances, ...)
  Decomposition,       // clique set not acyclic / not a valid tree input
  SizeLimit,           // input exceeds a hard combinatorial limit (e.g. >6 SOP variables)
  Capacity,            // enumeration would exceed a configurable cap
  NoData,              // a learning map with no seen cell, or an empty input where data is required
  Scope,               // a query target is not covered by any clique
  IncompatibleEvidence,// constraint puts mass on a zero-probability configuration
  Convergence,         // propagation failed to calibrate within the sweep budget
  Io,                  // file not readable / malformed line
  Usage,               // bad command-line usage
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace relbn
