// penalfr: command-line front end.
//
//   penalfr eigen semi|full --config FILE [--out DIR]
//   penalfr advect --config FILE [--sweep FILE] [--out DIR]
//   penalfr ns2d --config FILE [--out DIR] [--resume CHECKPOINT]
//   penalfr repro ID [--out DIR]      (penalfr repro --list)
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical failure,
// 1 anything else.
#include <omp.h>

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "penalfr/io/checkpoint.hpp"
#include "penalfr/io/repro.hpp"
#include "penalfr/io/runner.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

using penalfr::io::Mode;

penalfr::io::RunConfig load_for(const std::string& path, Mode wanted) {
  auto cfg = penalfr::io::load_config(path);
  const bool both_eigen = (cfg.mode == Mode::eigen_semi || cfg.mode == Mode::eigen_full) &&
                          (wanted == Mode::eigen_semi || wanted == Mode::eigen_full);
  if (cfg.mode != wanted && !both_eigen) {
    throw penalfr::io::ConfigError("config: mode '" + penalfr::io::to_string(cfg.mode) +
                                   "' does not match the subcommand (" + penalfr::io::to_string(wanted) + ")");
  }
  cfg.mode = wanted;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order flux reconstruction with penalization and selective frequency damping"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  std::string out;
  app.add_option("--threads", threads, "OpenMP threads for the 2D solver (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "output directory (default: the config's output_dir)");

  std::string config, sweep, resume, repro_id, eigen_kind;
  bool list = false;

  auto* eigen = app.add_subcommand("eigen", "eigensolution analysis of penalized advection");
  eigen->add_option("kind", eigen_kind, "semi or full")->required()->check(CLI::IsMember({"semi", "full"}));
  eigen->add_option("--config", config, "JSON run configuration")->required();

  auto* advect = app.add_subcommand("advect", "1D advection through a penalized slab");
  advect->add_option("--config", config, "JSON run configuration")->required();
  advect->add_option("--sweep", sweep, "JSON sweep definition (keys of advect.sweep)");

  auto* ns2d = app.add_subcommand("ns2d", "2D compressible Navier-Stokes with an immersed body");
  ns2d->add_option("--config", config, "JSON run configuration")->required();
  ns2d->add_option("--resume", resume, "checkpoint file to continue from");

  auto* repro = app.add_subcommand("repro", "rerun the configurations behind a published figure or table");
  repro->add_option("id", repro_id, "target id, see --list");
  repro->add_flag("--list", list, "list the targets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*repro) {
      if (list || repro_id.empty()) {
        for (const auto& t : penalfr::io::repro_targets()) {
          std::cout << t.id << "\t" << t.cost << "\t" << t.what << "\n";
        }
        return repro_id.empty() && !list ? kConfigError : 0;
      }
      penalfr::io::run_repro(repro_id, out.empty() ? "repro/" + repro_id : out, &std::cerr);
      return 0;
    }

    penalfr::io::RunOptions o;
    o.out = out;
    o.log = &std::cerr;
    penalfr::io::RunConfig cfg;
    if (*eigen) {
      cfg = load_for(config, eigen_kind == "semi" ? Mode::eigen_semi : Mode::eigen_full);
    } else if (*advect) {
      cfg = load_for(config, Mode::advect);
      if (!sweep.empty()) o.sweep_file = sweep;
    } else {
      cfg = load_for(config, Mode::ns2d);
      if (!resume.empty()) o.resume = resume;
    }
    penalfr::io::run_config(cfg, o);
    return 0;
  } catch (const penalfr::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const penalfr::io::CheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const penalfr::io::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
