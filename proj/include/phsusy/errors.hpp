#pragma once

#include <stdexcept>
#include <string>

namespace phsusy {

// Invalid model parameters (alpha == beta outside the Hermitian-limit mode,
// or a non-positive real-spectrum discriminant).
class ValidityError : public std::runtime_error {
public:
  explicit ValidityError(const std::string& what) : std::runtime_error(what) {}
};

// The metric ansatz has no real solution at this z (arctanh argument >= 1).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A denominator vanished exactly (isolated parameter surface).
class DegenerateError : public std::runtime_error {
public:
  explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

// Two independent evaluation routes of the same quantity disagreed beyond
// tolerance; signals a transcription or branch defect, never auto-corrected.
class ConsistencyError : public std::runtime_error {
public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Bad CLI usage or config file contents.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phsusy
