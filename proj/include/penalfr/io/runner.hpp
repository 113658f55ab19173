// Executes one RunConfig and writes its outputs.
//
// Every run writes config.json (the resolved configuration) into the output
// directory, then:
//   eigen-semi / eigen-full  spectrum.csv, physical.csv, critical.csv (searches)
//   advect                   solution.csv, summary.csv, snapshots.csv, or
//                            sweep.csv when a sweep is configured
//   ns2d                     probes.csv, forces.csv, surface_cp.csv,
//                            field_<step>.csv, field_final.csv,
//                            checkpoint_<step>.bin, summary.csv
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>

#include "penalfr/io/config.hpp"

namespace penalfr::io {

/// A run stopped on a non-finite or inadmissible state.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path out;  // empty: the config's output_dir
  std::optional<std::filesystem::path> resume;      // ns2d checkpoint
  std::optional<std::filesystem::path> sweep_file;  // advect sweep override
  std::ostream* log = nullptr;
};

/// Throws ConfigError, CheckpointError, NumericalFailure, or std::runtime_error
/// for I/O problems.
void run_config(const RunConfig& cfg, const RunOptions& options);

/// checkpoint_00001234.bin
std::string checkpoint_name(long long step);

}  // namespace penalfr::io
