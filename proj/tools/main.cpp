#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kostlan/commands.hpp"
#include "kostlan/config.hpp"
#include "kostlan/error.hpp"
#include "kostlan/manifest.hpp"

namespace {

struct Args {
  std::optional<std::string> config;
  kostlan::FlagOverrides flags;
  bool echo = false;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--config", a.config, "key = value configuration file");
  sub->add_option("--seed", a.flags.seed, "master seed");
  sub->add_option("--n", a.flags.n, "polynomial degree / number of points");
  sub->add_option("--samples", a.flags.samples, "Monte Carlo sample count");
  sub->add_option("--out", a.flags.out, "output directory");
  sub->add_option("--threads", a.flags.threads, "worker threads");
  sub->add_flag("--quick", a.flags.quick, "reduced problem sizes");
  sub->add_flag("--echo-config", a.echo, "print the resolved configuration first");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logarithmic energy of elliptic polynomial roots"};
  app.set_version_flag("--version", std::string(kostlan::version()));
  app.require_subcommand(1);

  Args args;
  const char* help[] = {"sample one polynomial and dump its roots",
                        "Monte Carlo energy statistics",
                        "limiting variance constants",
                        "two-point densities and clustering fit",
                        "root-seeded gradient descent",
                        "run the acceptance suite"};
  int i = 0;
  for (auto name : kostlan::kSubcommands) add_common(app.add_subcommand(std::string(name), help[i++]), args);

  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    const auto cfg = kostlan::parse_config(name, args.config, args.flags, [](const char* k) {
      return std::getenv(k);
    });
    if (args.echo) std::cout << cfg.echo();
    return kostlan::run_subcommand(cfg, std::cout, std::cerr);
  } catch (const kostlan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
