#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace geocast::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  // Non-blocking criteria are diagnostics: they report, never fail.
  bool blocking = true;
  std::vector<std::string> details;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240615;
  bool verbose = false;
};

std::vector<int> criterion_ids();

// Throws std::invalid_argument for an unknown id.
CriterionResult run_criterion(int id, const Options& options = {});

// One "[PASS]/[FAIL]/[INFO] C<id> ..." line, followed by details when
// verbose or failing.
void print_result(std::ostream& out, const CriterionResult& result, bool verbose);

// Runs every criterion, printing as it goes. Returns true if all blocking
// criteria passed.
bool run_all(std::ostream& out, const Options& options = {});

}  // namespace geocast::acceptance
