#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kostlan {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::vector<Check> checks;
  std::vector<std::string> info;
};

struct AcceptanceOptions {
  bool quick = false;
  int threads = 1;
  std::uint64_t seed = 20240611;
  /// Empty runs every criterion.
  std::vector<int> only;
};

using ResultSink = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const ResultSink& sink = {});

/// "PASS  3  title  (1.2 s)" followed by indented check and info lines.
std::string format_result(const CriterionResult& r);

}  // namespace kostlan
