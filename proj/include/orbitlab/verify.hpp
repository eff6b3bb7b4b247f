#pragma once

// Cross-module identity suites over the bundled corpus.

#include <string>
#include <vector>

#include "orbitlab/budget.hpp"

namespace orbitlab::verify {

struct Check {
  std::string suite;
  std::string subject;
  std::string property;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  bool ok() const;
  std::size_t failures() const;
  /// {"checks": [...], "passed": n, "failed": m}
  std::string to_json() const;
  std::string table() const;
};

struct Options {
  std::vector<std::string> only;  // empty = every suite
  /// Adds a copy of u4_F2 with one corrupted structure constant to the corpus.
  bool inject_fault = false;
};

/// ffield, grouptab, nilalg, algroup, orbits, characters, mq, zeta
const std::vector<std::string>& suite_names();

Report run(const Options& opts, const Budgets& budgets = {});

}  // namespace orbitlab::verify
