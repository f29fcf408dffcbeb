#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nullkan {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad ids, carrier mismatches, failed preconditions.
class InputError : public Error {
public:
  using Error::Error;
};

/// An exhaustive search ran out of its configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// A combinatorial size guard (object bound, carrier bound, candidate space) was hit.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

/// A pointwise Kan extension needed a (co)limit that does not exist.
class MissingUniversal : public Error {
public:
  MissingUniversal(std::string kind, std::string object)
      : Error(kind + "(" + object + ")"), kind_(std::move(kind)), object_(std::move(object)) {}
  const std::string& kind() const { return kind_; }
  const std::string& object() const { return object_; }

private:
  std::string kind_;
  std::string object_;
};

struct Violation {
  std::string rule;
  std::string witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Accumulates violated laws with concrete witnesses. An empty report means "valid".
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }

  void add(std::string rule, std::string witness) {
    violations.push_back({std::move(rule), std::move(witness)});
  }

  void note(std::string text) { notes.push_back(std::move(text)); }

  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations)
      violations.push_back({prefix.empty() ? v.rule : prefix + ": " + v.rule, v.witness});
    for (const auto& n : other.notes)
      notes.push_back(prefix.empty() ? n : prefix + ": " + n);
  }

  bool has_rule(const std::string& rule) const {
    for (const auto& v : violations)
      if (v.rule == rule)
        return true;
    return false;
  }
};

} // namespace nullkan
