#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "penalfr/io/checkpoint.hpp"
#include "penalfr/io/config.hpp"
#include "penalfr/io/csv.hpp"
#include "penalfr/io/outputs.hpp"
#include "penalfr/io/runner.hpp"

using namespace penalfr;
using namespace penalfr::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("penalfr_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int cli(const std::string& args) {
  const std::string cmd = std::string(PENALFR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// A cylinder small enough for a handful of steps in a unit test.
const char* kSmallNs = R"({
  "schema_version": 1,
  "mode": "ns2d",
  "ns2d": {
    "mesh": {"x": {"core": [-0.6, 0.6], "domain": [-3, 5], "h0": 0.1},
             "y": {"core": [-0.6, 0.6], "domain": [-3, 3], "h0": 0.1},
             "stretch": 1.3, "target_nx": 0, "target_ny": 0},
    "order": 1,
    "eta": 1e-3,
    "sfd": {"chi_f": 1000, "delta": 100},
    "dt": 1e-3,
    "t_final": 0.01,
    "probes": [[0.0, 0.0], [1.5, 0.3]],
    "checkpoint_every": 5
  }
})";

}  // namespace

TEST_CASE("config: minimal document takes every default") {
  const auto c = parse_config(R"({"schema_version": 1, "mode": "advect"})");
  CHECK(c.mode == Mode::advect);
  CHECK(c.advect == AdvectConfig{});
  CHECK(c.output_dir == "out");
  CHECK(c.advect.k_nondim == 0.3223);
  CHECK(c.ns2d.dt == 4e-4);
}

TEST_CASE("config: emit and parse round-trip") {
  auto c = parse_config(kSmallNs);
  CHECK(c.ns2d.order == 1);
  REQUIRE(c.ns2d.sfd.has_value());
  CHECK(c.ns2d.sfd->chi_f == 1000.0);
  CHECK(parse_config(emit_config(c)) == c);

  auto a = parse_config(R"({"schema_version": 1, "mode": "advect",
    "advect": {"eta": null, "sfd": {"chi_f": 1e5, "delta": 0.1},
               "sweep": {"eta": [null, 1e-3], "chi_f": [null], "delta": [1, 10]}}})");
  CHECK_FALSE(a.advect.eta.has_value());
  REQUIRE(a.advect.sweep.has_value());
  CHECK(a.advect.sweep->points().size() == 4);
  CHECK(parse_config(emit_config(a)) == a);

  auto e = parse_config(R"({"schema_version": 1, "mode": "eigen-full",
    "eigen": {"dt": 1e-4, "critical": {"scheme": "penalization"}}})");
  CHECK(parse_config(emit_config(e)) == e);
}

TEST_CASE("config: errors name the problem") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("").find("empty document") != std::string::npos);
  CHECK(message("{\"schema_version\": 1,\n\"mode\": \"advect\"\n\"advect\": {}}").find("line 3") != std::string::npos);
  CHECK(message(R"({"schema_version": 1, "mode": "advect", "advect": {"N": 40, "bogus": 1}})").find("advect.bogus") !=
        std::string::npos);
  CHECK(message(R"({"schema_version": 2, "mode": "advect"})").find("schema_version") != std::string::npos);
  CHECK(message(R"({"mode": "advect"})").find("schema_version") != std::string::npos);
  CHECK(message(R"({"schema_version": 1, "mode": "fly"})").find("mode") != std::string::npos);
  CHECK(message(R"({"schema_version": 1, "mode": "advect", "advect": {"dt": "small"}})").find("advect.dt") !=
        std::string::npos);
}

TEST_CASE("sweep file falls back to the base values") {
  AdvectConfig base;
  base.eta = 1e-4;
  const auto s = parse_sweep(R"({"delta": [1, 100]})", base);
  REQUIRE(s.eta.size() == 1);
  CHECK(s.eta[0] == 1e-4);
  CHECK(s.delta == std::vector<double>{1.0, 100.0});
  CHECK_THROWS_AS(parse_sweep(R"({"deltas": [1]})", base), ConfigError);
}

TEST_CASE("csv: header-only tables, quoting and exact doubles") {
  CsvTable t;
  t.header = {"a", "b"};
  CHECK(to_csv_string(t) == "a,b\n");
  t.add_row({1.0 / 3.0, std::string("x,\"y\"")});
  t.add_row({-0.0, 42LL});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  const std::string text = to_csv_string(t);
  CHECK(text.find("\"x,\"\"y\"\"\"") != std::string::npos);
  const auto back = parse_csv(text);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0][1] == "x,\"y\"");
  CHECK(std::stod(back.rows[0][0]) == 1.0 / 3.0);
  CHECK(back.rows[1][1] == "42");

  for (double v : {0.1, 1e-300, 6.02214076e23, std::nextafter(1.0, 2.0), -2.5e-7}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv stream keeps the first rows when reopened") {
  const auto dir = scratch("stream");
  const auto path = dir / "s.csv";
  {
    CsvStream s(path, {"step", "v"});
    for (long long i = 0; i < 5; ++i) s.row({i, 0.5 * i});
  }
  {
    CsvStream s(path, {"step", "v"}, 3);
    s.row({99LL, 1.0});
  }
  const auto t = read_csv(path);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[2][0] == "2");
  CHECK(t.rows[3][0] == "99");
}

TEST_CASE("eigen tables have the documented columns") {
  eigensolution::AnalysisCase c;
  c.penalization = mask::Penalization::with_eta(1e-3);
  const auto s = eigensolution::semi_discrete_sweep(c, eigensolution::default_wavenumbers(4));
  const auto spec = spectrum_table(s);
  CHECK(spec.header == std::vector<std::string>{"k_nondim", "mode_id", "class", "dispersion", "dissipation"});
  CHECK(spec.rows.size() == 4 * s.eigenvalues[0].size());
  int physical = 0;
  for (const auto& r : spec.rows) physical += std::get<std::string>(r[2]) == "physical";
  CHECK(physical == 4);
  const auto phys = physical_table(s);
  CHECK(phys.header == std::vector<std::string>{"k_nondim", "dispersion", "dissipation", "projection", "ambiguous"});
  CHECK(phys.rows.size() == 4);
}

TEST_CASE("checkpoint round trip and corruption detection") {
  const auto dir = scratch("ckpt");
  Checkpoint cp;
  cp.mesh_hash = 0xdeadbeef;
  cp.step = 1234;
  cp.t = 0.4936;
  cp.field = FlowField(3, 4);
  for (std::size_t i = 0; i < cp.field.raw().size(); ++i) cp.field.raw()[i] = std::sin(1.0 + i) * 1e3;
  cp.sfd_state.q = {0.1, std::numeric_limits<double>::denorm_min()};
  cp.sfd_state.q_bar = {-0.3, 7.0};
  const auto path = dir / checkpoint_name(1234);
  CHECK(path.filename() == "checkpoint_00001234.bin");
  save_checkpoint(path, cp);

  const auto back = load_checkpoint(path, 0xdeadbeef);
  CHECK(back.step == 1234);
  CHECK(back.t == 0.4936);
  CHECK(back.field == cp.field);
  CHECK(back.sfd_state.q == cp.sfd_state.q);
  CHECK(back.sfd_state.q_bar == cp.sfd_state.q_bar);
  CHECK_THROWS_AS(load_checkpoint(path, 0x12345678), CheckpointError);

  std::string bytes = slurp(path);
  bytes[60] ^= 0x01;
  spit(dir / "bad.bin", bytes);
  CHECK_THROWS_AS(load_checkpoint(dir / "bad.bin"), CheckpointError);
  spit(dir / "short.bin", slurp(path).substr(0, 40));
  CHECK_THROWS_AS(load_checkpoint(dir / "short.bin"), CheckpointError);
  CHECK_THROWS_AS(load_checkpoint(dir / "missing.bin"), CheckpointError);
}

TEST_CASE("split run through a checkpoint is bitwise identical to a straight run") {
  const auto cfg = parse_config(kSmallNs);
  const auto straight = scratch("straight");
  const auto split = scratch("split");
  RunOptions o;
  o.out = straight;
  run_config(cfg, o);
  CHECK(fs::exists(straight / "checkpoint_00000005.bin"));
  CHECK(fs::exists(straight / "checkpoint_00000010.bin"));

  // Resume from the mid-run checkpoint into a fresh directory seeded with the
  // first half of the outputs.
  o.out = split;
  for (const char* f : {"probes.csv", "forces.csv"}) fs::copy_file(straight / f, split / f);
  o.resume = straight / "checkpoint_00000005.bin";
  run_config(cfg, o);

  const auto a = load_checkpoint(straight / "checkpoint_00000010.bin");
  const auto b = load_checkpoint(split / "checkpoint_00000010.bin");
  CHECK(a.field == b.field);
  CHECK(a.sfd_state.q == b.sfd_state.q);
  CHECK(a.sfd_state.q_bar == b.sfd_state.q_bar);
  CHECK(slurp(straight / "checkpoint_00000010.bin") == slurp(split / "checkpoint_00000010.bin"));
  CHECK(slurp(straight / "probes.csv") == slurp(split / "probes.csv"));
  CHECK(slurp(straight / "forces.csv") == slurp(split / "forces.csv"));
  CHECK(slurp(straight / "field_final.csv") == slurp(split / "field_final.csv"));
  CHECK(read_csv(straight / "probes.csv").rows.size() == 10);
  CHECK(read_csv(straight / "probes.csv").header == probe_header(2));
}

TEST_CASE("resume rejects a checkpoint from another mesh") {
  auto cfg = parse_config(kSmallNs);
  const auto dir = scratch("other");
  RunOptions o;
  o.out = dir;
  run_config(cfg, o);
  cfg.ns2d.order = 2;
  o.resume = dir / "checkpoint_00000005.bin";
  CHECK_THROWS_AS(run_config(cfg, o), CheckpointError);
}

TEST_CASE("advect run writes its tables") {
  auto cfg = parse_config(R"({"schema_version": 1, "mode": "advect", "advect": {"t_final": 0.001, "dt": 1e-4}})");
  const auto dir = scratch("advect");
  RunOptions o;
  o.out = dir;
  run_config(cfg, o);
  for (const char* f : {"config.json", "solution.csv", "summary.csv"}) CHECK(fs::exists(dir / f));
  CHECK(parse_config(slurp(dir / "config.json")) == cfg);
  CHECK(read_csv(dir / "solution.csv").rows.size() == 160);
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch("cli");
  spit(dir / "ok.json", R"({"schema_version": 1, "mode": "advect", "advect": {"t_final": 0.001, "dt": 1e-4}})");
  spit(dir / "syntax.json", "{\"schema_version\": 1,\n\"mode\": \"advect\"\n}}");
  spit(dir / "blow.json", R"({"schema_version": 1, "mode": "advect", "advect": {"t_final": 1.0, "dt": 1e-2, "eta": 1e-5}})");
  const std::string d = dir.string();
  CHECK(cli("advect --config " + d + "/ok.json --out " + d + "/o1") == 0);
  CHECK(fs::exists(dir / "o1" / "solution.csv"));
  CHECK(cli("advect --config " + d + "/syntax.json") == 2);
  CHECK(cli("advect --config " + d + "/missing.json") == 2);
  CHECK(cli("ns2d --config " + d + "/ok.json") == 2);
  CHECK(cli("advect") == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("advect --config " + d + "/blow.json --out " + d + "/o2") == 3);
  CHECK(cli("repro --list") == 0);
  CHECK(cli("repro nosuchfigure --out " + d + "/o3") == 2);
}
