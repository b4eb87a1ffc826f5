#pragma once

#include <iosfwd>

#include "kostlan/config.hpp"

namespace kostlan {

/// Runs one subcommand, writing its artifacts and a manifest under cfg.out.
/// Returns the process exit status.
int run_subcommand(const AppConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace kostlan
