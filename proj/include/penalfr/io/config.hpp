// Run configuration: one JSON document per run.
//
//   {
//     "schema_version": 1,
//     "mode": "eigen-semi" | "eigen-full" | "advect" | "ns2d",
//     "output_dir": "out",
//     "<section>": { ... }
//   }
//
// The section is "eigen" for both eigen modes, otherwise named after the
// mode. Every key is optional except schema_version and mode; omitted keys
// take the defaults below. Unknown keys are errors.
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "penalfr/advect1d.hpp"
#include "penalfr/eigensolution.hpp"
#include "penalfr/ns2d/simulation.hpp"

namespace penalfr::io {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { eigen_semi, eigen_full, advect, ns2d };
std::string to_string(Mode m);

struct SfdConfig {
  double chi_f = 0.0;
  double delta = 100.0;
  friend bool operator==(const SfdConfig&, const SfdConfig&) = default;
};

struct CriticalConfig {
  eigensolution::Scheme scheme = eigensolution::Scheme::combined;
  eigensolution::Coupling coupling = eigensolution::Coupling::tied;
  double delta = 100.0;
  double lo_ratio = 0.2;
  double hi_ratio = 2.0;
  double tol_ratio = 1e-3;
  friend bool operator==(const CriticalConfig&, const CriticalConfig&) = default;
};

struct EigenConfig {
  int N = 40;
  int P = 3;
  double c = 1.0;
  double lambda = 1.0;
  int slab_elements = 1;
  bool immersed = true;
  std::optional<double> eta = 1e-3;
  std::optional<SfdConfig> sfd;
  int k_samples = 64;
  double k_max = 3.141592653589793;
  double dt = 1e-3;                         // eigen-full only
  std::optional<CriticalConfig> critical;  // eigen-full only
  friend bool operator==(const EigenConfig&, const EigenConfig&) = default;

  eigensolution::AnalysisCase analysis_case() const;
};

struct AdvectSweepConfig {
  std::vector<std::optional<double>> eta;    // null entries: penalization off
  std::vector<std::optional<double>> chi_f;  // null entries: SFD off
  std::vector<double> delta{100.0};
  double dt_safety = 0.5;
  int timing_repeats = 3;
  friend bool operator==(const AdvectSweepConfig&, const AdvectSweepConfig&) = default;

  std::vector<advect::SweepPoint> points() const;
};

struct AdvectConfig {
  int N = 40;
  int P = 3;
  double c = 1.0;
  double lambda = 1.0;
  int slab_elements = 1;
  double k_nondim = 0.3223;
  double dt = 1e-5;
  double t_final = 1.1;
  std::optional<double> eta = 1e-3;
  std::optional<SfdConfig> sfd;
  int snapshot_every = 0;
  std::optional<AdvectSweepConfig> sweep;
  friend bool operator==(const AdvectConfig&, const AdvectConfig&) = default;

  advect::AdvectionRun run() const;
};

struct AxisConfig {
  double core_lo = -1.0, core_hi = 1.0, domain_lo = -1.0, domain_hi = 1.0, h0 = 0.1;
  friend bool operator==(const AxisConfig&, const AxisConfig&) = default;
};

struct NsConfig {
  double gamma = 1.4;
  double Re = 100.0;
  double Pr = 0.72;
  double mach = 0.2;
  double alpha_deg = 0.0;
  bool inviscid = false;
  AxisConfig x{-1.0, 1.0, -30.0, 50.0, 0.03};
  AxisConfig y{-1.0, 1.0, -30.0, 30.0, 0.03};
  double stretch = 1.1;
  int target_nx = 184;
  int target_ny = 178;
  int order = 2;
  std::string geometry = "circle";
  double center_x = 0.0, center_y = 0.0;
  double size = 1.0;
  double l_ref = 1.0;
  std::optional<double> eta = 4e-4;  // null: penalization off
  std::optional<SfdConfig> sfd;
  std::string scheme = "lserk";
  double dt = 4e-4;
  double t_final = 200.0;
  std::vector<std::array<double, 2>> probes{{0.36, 0.23}, {0.75, 0.23}};
  std::string force_method = "penalization";
  int record_every = 1;
  int checkpoint_every = 0;  // steps, 0 = only at the end
  int snapshot_every = 0;    // steps, 0 = only at the end
  friend bool operator==(const NsConfig&, const NsConfig&) = default;

  ns::NsCase ns_case() const;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  Mode mode = Mode::advect;
  std::string output_dir = "out";
  EigenConfig eigen;
  AdvectConfig advect;
  NsConfig ns2d;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError: syntax errors carry "line L, column C"; semantic errors
/// name the offending key path.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Stand-alone sweep file: an object with the keys of "advect.sweep".
/// Missing lists fall back to the single values of `base`.
AdvectSweepConfig parse_sweep(const std::string& text, const AdvectConfig& base);
AdvectSweepConfig load_sweep(const std::filesystem::path& path, const AdvectConfig& base);

/// Pretty-printed JSON with every default resolved. Only the section used by
/// the mode is emitted.
std::string emit_config(const RunConfig& cfg);

}  // namespace penalfr::io
