#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kostlan/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  kostlan::AcceptanceOptions opts;
  app.add_flag("--quick", opts.quick, "reduced sample sizes");
  app.add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", opts.seed, "master seed");
  app.add_option("--only", opts.only, "criterion ids to run");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  const auto results = kostlan::run_acceptance(opts, [&](const kostlan::CriterionResult& r) {
    std::cout << kostlan::format_result(r) << std::flush;
    failed += r.passed ? 0 : 1;
  });
  std::cout << (results.size() - failed) << " of " << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
