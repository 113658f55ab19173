#include "penalfr/io/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace penalfr::io {

using json = nlohmann::ordered_json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::eigen_semi: return "eigen-semi";
    case Mode::eigen_full: return "eigen-full";
    case Mode::advect: return "advect";
    case Mode::ns2d: return "ns2d";
  }
  return "unknown";
}

namespace {

Mode mode_from(const std::string& s) {
  if (s == "eigen-semi") return Mode::eigen_semi;
  if (s == "eigen-full") return Mode::eigen_full;
  if (s == "advect") return Mode::advect;
  if (s == "ns2d") return Mode::ns2d;
  throw ConfigError("config: 'mode' must be one of eigen-semi, eigen-full, advect, ns2d (got '" + s + "')");
}

// Strict view of one JSON object: typed getters that track the keys they
// consume, and finish() to reject leftovers.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError("config: '" + display() + "' must be an object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }

  double num(const std::string& k, double def) {
    if (!take(k)) return def;
    return as_num(j_.at(k), key(k));
  }
  int integer(const std::string& k, int def) {
    if (!take(k)) return def;
    return as_int(j_.at(k), key(k));
  }
  bool boolean(const std::string& k, bool def) {
    if (!take(k)) return def;
    const auto& v = j_.at(k);
    if (!v.is_boolean()) throw ConfigError("config: '" + key(k) + "' must be true or false");
    return v.get<bool>();
  }
  std::string str(const std::string& k, const std::string& def) {
    if (!take(k)) return def;
    const auto& v = j_.at(k);
    if (!v.is_string()) throw ConfigError("config: '" + key(k) + "' must be a string");
    return v.get<std::string>();
  }
  std::optional<double> opt_num(const std::string& k, std::optional<double> def) {
    if (!take(k)) return def;
    const auto& v = j_.at(k);
    if (v.is_null()) return std::nullopt;
    return as_num(v, key(k));
  }
  const json* sub(const std::string& k) {
    if (!take(k)) return nullptr;
    return &j_.at(k);
  }
  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("config: unknown key '" + key(it.key()) + "'");
    }
  }

  static double as_num(const json& v, const std::string& name) {
    if (!v.is_number()) throw ConfigError("config: '" + name + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("config: '" + name + "' must be finite");
    return d;
  }
  static int as_int(const json& v, const std::string& name) {
    if (!v.is_number_integer()) throw ConfigError("config: '" + name + "' must be an integer");
    return v.get<int>();
  }

 private:
  bool take(const std::string& k) {
    if (!j_.contains(k)) return false;
    used_.insert(k);
    return true;
  }
  std::string display() const { return path_.empty() ? "<root>" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError("config: " + msg);
}

std::optional<SfdConfig> read_sfd(Obj& o, const std::optional<SfdConfig>& def) {
  const json* s = o.sub("sfd");
  if (!s) return def;
  if (s->is_null()) return std::nullopt;
  Obj so(*s, o.key("sfd"));
  SfdConfig c;
  c.chi_f = so.num("chi_f", c.chi_f);
  c.delta = so.num("delta", c.delta);
  so.finish();
  require(c.chi_f >= 0.0, "'" + so.key("chi_f") + "' must be >= 0");
  require(c.delta > 0.0, "'" + so.key("delta") + "' must be > 0");
  return c;
}

json write_sfd(const std::optional<SfdConfig>& s) {
  if (!s) return nullptr;
  return json{{"chi_f", s->chi_f}, {"delta", s->delta}};
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void check_positive(Obj& o, const std::string& k, double v) {
  require(v > 0.0, "'" + o.key(k) + "' must be > 0");
}

std::string scheme_name(eigensolution::Scheme s) {
  switch (s) {
    case eigensolution::Scheme::penalization_only: return "penalization";
    case eigensolution::Scheme::sfd_only: return "sfd";
    case eigensolution::Scheme::combined: return "combined";
  }
  return "combined";
}

EigenConfig read_eigen(const json* j, Mode mode) {
  EigenConfig c;
  if (!j) return c;
  Obj o(*j, "eigen");
  c.N = o.integer("N", c.N);
  c.P = o.integer("P", c.P);
  c.c = o.num("c", c.c);
  c.lambda = o.num("lambda", c.lambda);
  c.slab_elements = o.integer("slab_elements", c.slab_elements);
  c.immersed = o.boolean("immersed", c.immersed);
  c.eta = o.opt_num("eta", c.eta);
  c.sfd = read_sfd(o, c.sfd);
  c.k_samples = o.integer("k_samples", c.k_samples);
  c.k_max = o.num("k_max", c.k_max);
  if (mode == Mode::eigen_full) {
    c.dt = o.num("dt", c.dt);
    check_positive(o, "dt", c.dt);
    if (const json* cj = o.sub("critical"); cj && !cj->is_null()) {
      Obj co(*cj, "eigen.critical");
      CriticalConfig cc;
      const std::string s = co.str("scheme", scheme_name(cc.scheme));
      if (s == "penalization") cc.scheme = eigensolution::Scheme::penalization_only;
      else if (s == "sfd") cc.scheme = eigensolution::Scheme::sfd_only;
      else if (s == "combined") cc.scheme = eigensolution::Scheme::combined;
      else throw ConfigError("config: 'eigen.critical.scheme' must be penalization, sfd or combined");
      const std::string cp = co.str("coupling", cc.coupling == eigensolution::Coupling::tied ? "tied" : "guideline");
      if (cp == "tied") cc.coupling = eigensolution::Coupling::tied;
      else if (cp == "guideline") cc.coupling = eigensolution::Coupling::guideline;
      else throw ConfigError("config: 'eigen.critical.coupling' must be tied or guideline");
      cc.delta = co.num("delta", cc.delta);
      cc.lo_ratio = co.num("lo_ratio", cc.lo_ratio);
      cc.hi_ratio = co.num("hi_ratio", cc.hi_ratio);
      cc.tol_ratio = co.num("tol_ratio", cc.tol_ratio);
      co.finish();
      require(cc.lo_ratio > 0.0 && cc.hi_ratio > cc.lo_ratio, "'eigen.critical' needs 0 < lo_ratio < hi_ratio");
      require(cc.tol_ratio > 0.0, "'eigen.critical.tol_ratio' must be > 0");
      c.critical = cc;
    }
  }
  o.finish();
  require(c.N >= 2, "'eigen.N' must be >= 2");
  require(c.P >= 0 && c.P <= fr::kPracticalMaxOrder, "'eigen.P' must be in [0, 10]");
  check_positive(o, "c", c.c);
  require(c.lambda >= 0.0 && c.lambda <= 1.0, "'eigen.lambda' must be in [0, 1]");
  require(c.slab_elements >= 1 && c.slab_elements < c.N, "'eigen.slab_elements' must be in [1, N)");
  require(!c.eta || *c.eta > 0.0, "'eigen.eta' must be > 0 or null");
  require(c.k_samples >= 3, "'eigen.k_samples' must be >= 3");
  check_positive(o, "k_max", c.k_max);
  return c;
}

json write_eigen(const EigenConfig& c, Mode mode) {
  json j{{"N", c.N},
         {"P", c.P},
         {"c", c.c},
         {"lambda", c.lambda},
         {"slab_elements", c.slab_elements},
         {"immersed", c.immersed},
         {"eta", opt(c.eta)},
         {"sfd", write_sfd(c.sfd)},
         {"k_samples", c.k_samples},
         {"k_max", c.k_max}};
  if (mode == Mode::eigen_full) {
    j["dt"] = c.dt;
    if (c.critical) {
      const auto& cc = *c.critical;
      j["critical"] = json{{"scheme", scheme_name(cc.scheme)},
                           {"coupling", cc.coupling == eigensolution::Coupling::tied ? "tied" : "guideline"},
                           {"delta", cc.delta},
                           {"lo_ratio", cc.lo_ratio},
                           {"hi_ratio", cc.hi_ratio},
                           {"tol_ratio", cc.tol_ratio}};
    } else {
      j["critical"] = nullptr;
    }
  }
  return j;
}

std::vector<std::optional<double>> read_opt_list(const json& v, const std::string& name) {
  if (!v.is_array()) throw ConfigError("config: '" + name + "' must be an array");
  std::vector<std::optional<double>> out;
  for (const auto& e : v) {
    if (e.is_null()) {
      out.push_back(std::nullopt);
    } else {
      const double d = Obj::as_num(e, name);
      if (!(d > 0.0)) throw ConfigError("config: '" + name + "' entries must be > 0 or null");
      out.push_back(d);
    }
  }
  return out;
}

AdvectSweepConfig read_sweep(const json& j, const std::string& path, const AdvectConfig& c) {
  Obj so(j, path);
  AdvectSweepConfig s;
  s.eta = {c.eta};
  s.chi_f = {c.sfd ? std::optional<double>(c.sfd->chi_f) : std::nullopt};
  if (const json* v = so.sub("eta")) s.eta = read_opt_list(*v, path + ".eta");
  if (const json* v = so.sub("chi_f")) s.chi_f = read_opt_list(*v, path + ".chi_f");
  if (const json* v = so.sub("delta")) {
    s.delta.clear();
    for (const auto& d : read_opt_list(*v, path + ".delta")) {
      if (!d) throw ConfigError("config: '" + path + ".delta' entries must be numbers");
      s.delta.push_back(*d);
    }
  }
  s.dt_safety = so.num("dt_safety", s.dt_safety);
  s.timing_repeats = so.integer("timing_repeats", s.timing_repeats);
  so.finish();
  require(!s.eta.empty() && !s.chi_f.empty() && !s.delta.empty(), "'" + path + "' lists must be non-empty");
  require(s.dt_safety > 0.0 && s.dt_safety <= 1.0, "'" + path + ".dt_safety' must be in (0, 1]");
  require(s.timing_repeats >= 1, "'" + path + ".timing_repeats' must be >= 1");
  return s;
}

AdvectConfig read_advect(const json* j) {
  AdvectConfig c;
  if (!j) return c;
  Obj o(*j, "advect");
  c.N = o.integer("N", c.N);
  c.P = o.integer("P", c.P);
  c.c = o.num("c", c.c);
  c.lambda = o.num("lambda", c.lambda);
  c.slab_elements = o.integer("slab_elements", c.slab_elements);
  c.k_nondim = o.num("k_nondim", c.k_nondim);
  c.dt = o.num("dt", c.dt);
  c.t_final = o.num("t_final", c.t_final);
  c.eta = o.opt_num("eta", c.eta);
  c.sfd = read_sfd(o, c.sfd);
  c.snapshot_every = o.integer("snapshot_every", c.snapshot_every);
  if (const json* sj = o.sub("sweep"); sj && !sj->is_null()) c.sweep = read_sweep(*sj, "advect.sweep", c);
  o.finish();
  require(c.N >= 2, "'advect.N' must be >= 2");
  require(c.P >= 0 && c.P <= fr::kPracticalMaxOrder, "'advect.P' must be in [0, 10]");
  check_positive(o, "c", c.c);
  require(c.lambda >= 0.0 && c.lambda <= 1.0, "'advect.lambda' must be in [0, 1]");
  require(c.slab_elements >= 0 && c.slab_elements < c.N, "'advect.slab_elements' must be in [0, N)");
  check_positive(o, "k_nondim", c.k_nondim);
  check_positive(o, "dt", c.dt);
  require(c.t_final >= 0.0, "'advect.t_final' must be >= 0");
  require(!c.eta || *c.eta > 0.0, "'advect.eta' must be > 0 or null");
  require(c.snapshot_every >= 0, "'advect.snapshot_every' must be >= 0");
  return c;
}

json write_opt_list(const std::vector<std::optional<double>>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(opt(e));
  return a;
}

json write_advect(const AdvectConfig& c) {
  json j{{"N", c.N},
         {"P", c.P},
         {"c", c.c},
         {"lambda", c.lambda},
         {"slab_elements", c.slab_elements},
         {"k_nondim", c.k_nondim},
         {"dt", c.dt},
         {"t_final", c.t_final},
         {"eta", opt(c.eta)},
         {"sfd", write_sfd(c.sfd)},
         {"snapshot_every", c.snapshot_every}};
  if (c.sweep) {
    j["sweep"] = json{{"eta", write_opt_list(c.sweep->eta)},
                      {"chi_f", write_opt_list(c.sweep->chi_f)},
                      {"delta", c.sweep->delta},
                      {"dt_safety", c.sweep->dt_safety},
                      {"timing_repeats", c.sweep->timing_repeats}};
  } else {
    j["sweep"] = nullptr;
  }
  return j;
}

AxisConfig read_axis(const json& j, const std::string& path, const AxisConfig& def) {
  Obj o(j, path);
  AxisConfig a = def;
  auto pair = [&](const std::string& k, double& lo, double& hi) {
    if (const json* v = o.sub(k)) {
      if (!v->is_array() || v->size() != 2) throw ConfigError("config: '" + o.key(k) + "' must be [lo, hi]");
      lo = Obj::as_num((*v)[0], o.key(k));
      hi = Obj::as_num((*v)[1], o.key(k));
    }
  };
  pair("core", a.core_lo, a.core_hi);
  pair("domain", a.domain_lo, a.domain_hi);
  a.h0 = o.num("h0", a.h0);
  o.finish();
  require(a.core_hi > a.core_lo, "'" + o.key("core") + "' must satisfy lo < hi");
  require(a.domain_lo <= a.core_lo && a.domain_hi >= a.core_hi, "'" + o.key("domain") + "' must contain the core");
  require(a.h0 > 0.0, "'" + o.key("h0") + "' must be > 0");
  return a;
}

json write_axis(const AxisConfig& a) {
  return json{{"core", {a.core_lo, a.core_hi}}, {"domain", {a.domain_lo, a.domain_hi}}, {"h0", a.h0}};
}

NsConfig read_ns(const json* j) {
  NsConfig c;
  if (!j) return c;
  Obj o(*j, "ns2d");
  if (const json* g = o.sub("gas")) {
    Obj go(*g, "ns2d.gas");
    c.gamma = go.num("gamma", c.gamma);
    c.Re = go.num("Re", c.Re);
    c.Pr = go.num("Pr", c.Pr);
    c.mach = go.num("mach", c.mach);
    c.alpha_deg = go.num("alpha_deg", c.alpha_deg);
    c.inviscid = go.boolean("inviscid", c.inviscid);
    go.finish();
  }
  if (const json* m = o.sub("mesh")) {
    Obj mo(*m, "ns2d.mesh");
    if (const json* x = mo.sub("x")) c.x = read_axis(*x, "ns2d.mesh.x", c.x);
    if (const json* y = mo.sub("y")) c.y = read_axis(*y, "ns2d.mesh.y", c.y);
    c.stretch = mo.num("stretch", c.stretch);
    c.target_nx = mo.integer("target_nx", c.target_nx);
    c.target_ny = mo.integer("target_ny", c.target_ny);
    mo.finish();
    require(c.stretch >= 1.0, "'ns2d.mesh.stretch' must be >= 1");
    require(c.target_nx >= 0 && c.target_ny >= 0, "'ns2d.mesh.target_nx/target_ny' must be >= 0");
  }
  c.order = o.integer("order", c.order);
  if (const json* b = o.sub("body")) {
    Obj bo(*b, "ns2d.body");
    c.geometry = bo.str("geometry", c.geometry);
    if (const json* v = bo.sub("center")) {
      if (!v->is_array() || v->size() != 2) throw ConfigError("config: 'ns2d.body.center' must be [x, y]");
      c.center_x = Obj::as_num((*v)[0], "ns2d.body.center");
      c.center_y = Obj::as_num((*v)[1], "ns2d.body.center");
    }
    c.size = bo.num("size", c.size);
    bo.finish();
    require(c.geometry == "circle" || c.geometry == "naca0012", "'ns2d.body.geometry' must be circle or naca0012");
    require(c.size > 0.0, "'ns2d.body.size' must be > 0");
  }
  c.l_ref = o.num("l_ref", c.l_ref);
  c.eta = o.opt_num("eta", c.eta);
  c.sfd = read_sfd(o, c.sfd);
  c.scheme = o.str("scheme", c.scheme);
  c.dt = o.num("dt", c.dt);
  c.t_final = o.num("t_final", c.t_final);
  if (const json* p = o.sub("probes")) {
    if (!p->is_array()) throw ConfigError("config: 'ns2d.probes' must be an array of [x, y]");
    c.probes.clear();
    for (const auto& e : *p) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("config: 'ns2d.probes' entries must be [x, y]");
      c.probes.push_back({Obj::as_num(e[0], "ns2d.probes"), Obj::as_num(e[1], "ns2d.probes")});
    }
  }
  c.force_method = o.str("force_method", c.force_method);
  c.record_every = o.integer("record_every", c.record_every);
  c.checkpoint_every = o.integer("checkpoint_every", c.checkpoint_every);
  c.snapshot_every = o.integer("snapshot_every", c.snapshot_every);
  o.finish();
  require(c.gamma > 1.0, "'ns2d.gas.gamma' must be > 1");
  require(c.inviscid || c.Re > 0.0, "'ns2d.gas.Re' must be > 0");
  require(c.Pr > 0.0, "'ns2d.gas.Pr' must be > 0");
  require(c.mach > 0.0, "'ns2d.gas.mach' must be > 0");
  require(c.order >= 0 && c.order <= 7, "'ns2d.order' must be in [0, 7]");
  require(c.l_ref > 0.0, "'ns2d.l_ref' must be > 0");
  require(!c.eta || *c.eta > 0.0, "'ns2d.eta' must be > 0 or null");
  require(c.scheme == "rk3" || c.scheme == "lserk", "'ns2d.scheme' must be rk3 or lserk");
  require(c.dt > 0.0, "'ns2d.dt' must be > 0");
  require(c.t_final >= 0.0, "'ns2d.t_final' must be >= 0");
  require(c.force_method == "penalization" || c.force_method == "control_volume",
          "'ns2d.force_method' must be penalization or control_volume");
  require(c.record_every >= 1, "'ns2d.record_every' must be >= 1");
  require(c.checkpoint_every >= 0, "'ns2d.checkpoint_every' must be >= 0");
  require(c.snapshot_every >= 0, "'ns2d.snapshot_every' must be >= 0");
  return c;
}

json write_ns(const NsConfig& c) {
  json probes = json::array();
  for (const auto& p : c.probes) probes.push_back({p[0], p[1]});
  return json{{"gas",
               {{"gamma", c.gamma},
                {"Re", c.Re},
                {"Pr", c.Pr},
                {"mach", c.mach},
                {"alpha_deg", c.alpha_deg},
                {"inviscid", c.inviscid}}},
              {"mesh",
               {{"x", write_axis(c.x)},
                {"y", write_axis(c.y)},
                {"stretch", c.stretch},
                {"target_nx", c.target_nx},
                {"target_ny", c.target_ny}}},
              {"order", c.order},
              {"body", {{"geometry", c.geometry}, {"center", {c.center_x, c.center_y}}, {"size", c.size}}},
              {"l_ref", c.l_ref},
              {"eta", opt(c.eta)},
              {"sfd", write_sfd(c.sfd)},
              {"scheme", c.scheme},
              {"dt", c.dt},
              {"t_final", c.t_final},
              {"probes", probes},
              {"force_method", c.force_method},
              {"record_every", c.record_every},
              {"checkpoint_every", c.checkpoint_every},
              {"snapshot_every", c.snapshot_every}};
}

std::string section_of(Mode m) {
  switch (m) {
    case Mode::eigen_semi:
    case Mode::eigen_full: return "eigen";
    case Mode::advect: return "advect";
    case Mode::ns2d: return "ns2d";
  }
  return "";
}

}  // namespace

eigensolution::AnalysisCase EigenConfig::analysis_case() const {
  eigensolution::AnalysisCase a;
  a.setup.N = N;
  a.setup.P = P;
  a.setup.c = c;
  a.setup.lambda = lambda;
  a.setup.slab_elements = slab_elements;
  a.immersed = immersed;
  if (eta) a.penalization = mask::Penalization::with_eta(*eta);
  if (sfd) a.sfd = sfd::SfdParams::with(sfd->chi_f, sfd->delta);
  return a;
}

std::vector<advect::SweepPoint> AdvectSweepConfig::points() const {
  std::vector<advect::SweepPoint> out;
  for (const auto& e : eta) {
    for (const auto& x : chi_f) {
      for (double d : delta) out.push_back({e, x, d});
    }
  }
  return out;
}

advect::AdvectionRun AdvectConfig::run() const {
  advect::AdvectionRun r;
  r.N = N;
  r.P = P;
  r.c = c;
  r.lambda = lambda;
  r.slab_elements = slab_elements;
  r.k_nondim = k_nondim;
  r.dt = dt;
  r.t_final = t_final;
  if (eta) r.pen = mask::Penalization::with_eta(*eta);
  if (sfd) r.sfd = sfd::SfdParams::with(sfd->chi_f, sfd->delta);
  r.snapshot_every = snapshot_every;
  return r;
}

ns::NsCase NsConfig::ns_case() const {
  ns::NsCase c;
  c.gas.gamma = gamma;
  c.gas.Re = Re;
  c.gas.Pr = Pr;
  c.gas.Mach = mach;
  c.gas.alpha_deg = alpha_deg;
  c.gas.inviscid = inviscid;
  c.mesh.x = {x.core_lo, x.core_hi, x.domain_lo, x.domain_hi, x.h0};
  c.mesh.y = {y.core_lo, y.core_hi, y.domain_lo, y.domain_hi, y.h0};
  c.mesh.stretch = stretch;
  c.mesh.target_nx = target_nx;
  c.mesh.target_ny = target_ny;
  c.order = order;
  c.body.geometry = mask::geometry_from_string(geometry);
  c.body.center = {center_x, center_y};
  c.body.size = size;
  c.l_ref = l_ref;
  if (eta) c.pen = mask::Penalization::with_eta(*eta);
  if (sfd) c.sfd = sfd::SfdParams::with(sfd->chi_f, sfd->delta);
  c.scheme = scheme == "rk3" ? ns::TimeScheme::rk3 : ns::TimeScheme::lserk;
  c.dt = dt;
  c.t_final = t_final;
  c.probes = probes;
  c.force_method = force_method == "control_volume" ? ns::ForceMethod::control_volume : ns::ForceMethod::penalization;
  c.record_every = record_every;
  return c;
}

RunConfig parse_config(const std::string& text) {
  bool blank = true;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
  }
  if (blank) throw ConfigError("config: empty document; required keys: schema_version, mode");

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column pair.
    const std::size_t off = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < off; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ConfigError("config: line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object with keys schema_version, mode");

  std::vector<std::string> missing;
  if (!j.contains("schema_version")) missing.push_back("schema_version");
  if (!j.contains("mode")) missing.push_back("mode");
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("config: missing required keys: " + list);
  }

  Obj o(j, "");
  RunConfig cfg;
  cfg.schema_version = o.integer("schema_version", kSchemaVersion);
  if (cfg.schema_version != kSchemaVersion) {
    throw ConfigError("config: 'schema_version' " + std::to_string(cfg.schema_version) + " is not supported (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  cfg.mode = mode_from(o.str("mode", ""));
  cfg.output_dir = o.str("output_dir", cfg.output_dir);
  const std::string section = section_of(cfg.mode);
  const json* body = o.sub(section);
  switch (cfg.mode) {
    case Mode::eigen_semi:
    case Mode::eigen_full: cfg.eigen = read_eigen(body, cfg.mode); break;
    case Mode::advect: cfg.advect = read_advect(body); break;
    case Mode::ns2d: cfg.ns2d = read_ns(body); break;
  }
  for (const char* other : {"eigen", "advect", "ns2d"}) {
    if (other != section && j.contains(other)) {
      throw ConfigError("config: section '" + std::string(other) + "' is not used by mode " + to_string(cfg.mode));
    }
  }
  o.finish();
  return cfg;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

AdvectSweepConfig parse_sweep(const std::string& text, const AdvectConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("sweep: top level must be an object");
  return read_sweep(j, "sweep", base);
}

AdvectSweepConfig load_sweep(const std::filesystem::path& path, const AdvectConfig& base) {
  return parse_sweep(slurp(path), base);
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(slurp(path));
}

std::string emit_config(const RunConfig& cfg) {
  json j{{"schema_version", cfg.schema_version}, {"mode", to_string(cfg.mode)}, {"output_dir", cfg.output_dir}};
  switch (cfg.mode) {
    case Mode::eigen_semi:
    case Mode::eigen_full: j["eigen"] = write_eigen(cfg.eigen, cfg.mode); break;
    case Mode::advect: j["advect"] = write_advect(cfg.advect); break;
    case Mode::ns2d: j["ns2d"] = write_ns(cfg.ns2d); break;
  }
  return j.dump(2) + "\n";
}

}  // namespace penalfr::io
