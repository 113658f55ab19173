// Named reproduction targets: each one builds the configurations behind a
// published figure or table and runs them into out/<case>/.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "penalfr/io/config.hpp"

namespace penalfr::io {

struct ReproTarget {
  std::string id;
  std::string what;
  std::string cost;  // rough single-core runtime
};

const std::vector<ReproTarget>& repro_targets();

/// The named run configurations of a target (empty for targets that are
/// analyses rather than plain runs, e.g. fig7 and fig8). Throws ConfigError
/// for an unknown id.
std::vector<std::pair<std::string, RunConfig>> repro_cases(const std::string& id);

/// Throws ConfigError for an unknown id; otherwise as run_config.
void run_repro(const std::string& id, const std::filesystem::path& out, std::ostream* log);

}  // namespace penalfr::io
