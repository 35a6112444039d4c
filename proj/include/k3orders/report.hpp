#pragma once

#include <string>
#include <vector>

#include "k3orders/json_io.hpp"

namespace k3orders {

enum class CheckStatus { Pass, Fail, Skip };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

/// Outcome of running every stage of a scenario: one line per check plus a
/// structured `data` object holding the computed values (bases, groups,
/// certificates, orders).  Serialization is deterministic: object keys are
/// sorted and integers are exact.
struct Report {
  std::string scenario;
  std::vector<Check> checks;
  Json data = Json::object();

  void pass(std::string name, std::string detail = "");
  void fail(std::string name, std::string detail);
  void skip(std::string name, std::string because);

  bool passed() const;
  std::size_t fail_count() const;

  Json to_json() const;
  /// quiet=true prints a single "<scenario>: PASS|FAIL" line.
  std::string to_text(bool quiet = false) const;
};

}  // namespace k3orders
