// curvlat: scenario-driven front end. Every subcommand reads an optional
// JSON config (--config), applies command-line overrides, validates the
// whole configuration, computes, and only then writes its outputs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "curvlat/curvature.hpp"
#include "curvlat/dispersion.hpp"
#include "curvlat/errors.hpp"
#include "curvlat/evolution.hpp"
#include "curvlat/geodesic.hpp"
#include "curvlat/io.hpp"
#include "curvlat/kernels.hpp"
#include "curvlat/lanczos.hpp"
#include "curvlat/sinusoidal_band.hpp"
#include "scenario.hpp"

using namespace curvlat;
using namespace curvlat::cli;

namespace {

constexpr int kConfigVersion = 1;

// Command-line flags that overwrite a config key when given.
class Overrides {
 public:
  void number(CLI::App* app, const std::string& flag, const std::string& pointer,
              const std::string& help) {
    auto& v = numbers_.emplace_back();
    CLI::Option* o = app->add_option(flag, v, help);
    apply_.push_back([o, &v, pointer](json& cfg) {
      if (o->count() > 0) cfg[json::json_pointer(pointer)] = v;
    });
  }
  void integer(CLI::App* app, const std::string& flag, const std::string& pointer,
               const std::string& help) {
    auto& v = integers_.emplace_back();
    CLI::Option* o = app->add_option(flag, v, help);
    apply_.push_back([o, &v, pointer](json& cfg) {
      if (o->count() > 0) cfg[json::json_pointer(pointer)] = v;
    });
  }
  void text(CLI::App* app, const std::string& flag, const std::string& pointer,
            const std::string& help) {
    auto& v = strings_.emplace_back();
    CLI::Option* o = app->add_option(flag, v, help);
    apply_.push_back([o, &v, pointer](json& cfg) {
      if (o->count() > 0) cfg[json::json_pointer(pointer)] = v;
    });
  }
  void flag_value(CLI::App* app, const std::string& flag, const std::string& pointer,
                  json value, const std::string& help) {
    CLI::Option* o = app->add_flag(flag, help);
    apply_.push_back([o, value, pointer](json& cfg) {
      if (o->count() > 0) cfg[json::json_pointer(pointer)] = value;
    });
  }
  void pair(CLI::App* app, const std::string& flag, const std::string& pointer,
            const std::string& help) {
    auto& v = pairs_.emplace_back();
    CLI::Option* o = app->add_option(flag, v, help)->expected(2);
    apply_.push_back([o, &v, pointer](json& cfg) {
      if (o->count() > 0) cfg[json::json_pointer(pointer)] = v;
    });
  }
  void apply(json& cfg) const {
    for (const auto& f : apply_) f(cfg);
  }

 private:
  std::deque<double> numbers_;
  std::deque<int> integers_;
  std::deque<std::string> strings_;
  std::deque<std::vector<double>> pairs_;
  std::vector<std::function<void(json&)>> apply_;
};

struct Command {
  std::string config_path;
  Overrides overrides;
};

json load_config(const Command& c) {
  json cfg = json::object();
  if (!c.config_path.empty()) {
    try {
      cfg = json::parse(io::read_file(c.config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("<root>", "expected an object");
    if (!cfg.contains("version")) throw ConfigError("version", "missing required key");
  } else {
    cfg["version"] = kConfigVersion;
  }
  c.overrides.apply(cfg);
  // A bare family (--a/--b) selects the general trap scenario.
  if (cfg.contains("scenario") && cfg["scenario"].is_object() &&
      !cfg["scenario"].contains("kind") &&
      (cfg["scenario"].contains("a") || cfg["scenario"].contains("b"))) {
    cfg["scenario"]["kind"] = "trap";
  }
  if (cfg.contains("scenario") && cfg["scenario"].is_object() &&
      cfg["scenario"].contains("model") && cfg["scenario"]["model"].is_object()) {
    json& model = cfg["scenario"]["model"];
    if (!cfg["scenario"].contains("kind")) cfg["scenario"]["kind"] = "supercell";
    // Bare --J1/--J2/--d select the dimerized chain.
    if (!model.contains("preset") && !model.contains("hoppings")) {
      model["preset"] = "dimerized-chain";
    }
  }
  if (!cfg.at("version").is_number_integer() || cfg.at("version").get<int>() != kConfigVersion) {
    throw ConfigError("version", "unsupported config version (expected 1)");
  }
  return cfg;
}

// Known root sections; each command parses the ones it uses.
void finish_root(Section& root, const json& cfg) {
  for (const char* k : {"version", "scenario", "grid", "onsite", "input", "output",
                        "dynamics", "spectrum", "bands", "tunneling", "geodesics"}) {
    if (cfg.contains(k)) root.raw(k);
  }
  root.finish();
}

struct Outputs {
  std::string path;
  std::string snapshots;
  std::string metric;
};

Outputs load_outputs(Section& root, bool required = true) {
  Outputs o;
  if (!root.has("output")) {
    if (required) throw ConfigError("output.path", "missing required key (use -o)");
    return o;
  }
  Section s = root.child("output");
  o.path = s.string("path", "");
  o.snapshots = s.string("snapshots", "");
  o.metric = s.string("metric", "");
  s.finish();
  if (required && o.path.empty()) {
    throw ConfigError("output.path", "missing required key (use -o)");
  }
  return o;
}

void emit(const std::string& path, const std::string& content, const std::string& summary) {
  io::write_file_atomic(path, content);
  std::printf("wrote %s: %s\n", path.c_str(), summary.c_str());
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Hopping model given as an input file (JSON, or CSV on the config grid).
HoppingModel load_hopping_file(Section& root, const std::string& path) {
  if (ends_with(path, ".csv")) {
    if (!root.has("grid")) throw ConfigError("grid", "CSV hopping input needs a grid section");
    const Grid2D grid = load_grid(root.child("grid"), 0);
    std::ifstream in(path);
    if (!in) throw ConfigError("input.hopping", "cannot read " + path);
    return io::hopping_from_csv(in, grid);
  }
  try {
    return io::hopping_from_json(json::parse(io::read_file(path)));
  } catch (const json::parse_error& e) {
    throw ConfigError("input.hopping", std::string("invalid JSON: ") + e.what());
  }
}

struct Inputs {
  std::string metric;
  std::string hopping;
};

Inputs load_inputs(Section& root) {
  Inputs in;
  if (!root.has("input")) return in;
  Section s = root.child("input");
  in.metric = s.string("metric", "");
  in.hopping = s.string("hopping", "");
  s.finish();
  if (!in.metric.empty() && !in.hopping.empty()) {
    throw ConfigError("input", "give either a metric or a hopping input, not both");
  }
  return in;
}

DiagonalMetric resolve_metric(Section& root) {
  const Inputs in = load_inputs(root);
  if (!in.metric.empty()) {
    try {
      return io::metric_from_json(json::parse(io::read_file(in.metric)));
    } catch (const json::parse_error& e) {
      throw ConfigError("input.metric", std::string("invalid JSON: ") + e.what());
    }
  }
  if (!in.hopping.empty()) {
    const HoppingModel h = load_hopping_file(root, in.hopping);
    try {
      return hopping_to_metric(h);
    } catch (const PreconditionError& e) {
      throw ConfigError("input.hopping", e.what());
    }
  }
  return load_scenario(root, 0.0, 0.0).metric();
}

void add_common(CLI::App* app, Command& c, bool lattice) {
  app->add_option("-c,--config", c.config_path, "JSON config file");
  c.overrides.text(app, "-o,--output", "/output/path", "Output file");
  c.overrides.text(app, "--scenario", "/scenario/kind", "Scenario kind");
  c.overrides.number(app, "--t", "/scenario/t", "Time for snapshot outputs");
  if (!lattice) return;
  c.overrides.number(app, "--a", "/scenario/a", "Family coefficient a");
  c.overrides.number(app, "--b", "/scenario/b", "Family coefficient b");
  c.overrides.number(app, "--J", "/scenario/J", "Hopping scale");
  c.overrides.number(app, "--alpha", "/scenario/alpha", "Beam profile alpha");
  c.overrides.number(app, "--A0", "/scenario/A0", "Beam lattice depth A0");
  c.overrides.integer(app, "--n", "/grid/n", "Sites per axis");
  c.overrides.integer(app, "--nx", "/grid/nx", "Sites along x");
  c.overrides.integer(app, "--ny", "/grid/ny", "Sites along y");
  c.overrides.number(app, "--l", "/grid/spacing", "Lattice spacing");
  c.overrides.flag_value(app, "--periodic", "/grid/boundary", "periodic", "Periodic boundaries");
  c.overrides.text(app, "--onsite", "/onsite", "On-site rule: laplacian or exact");
  c.overrides.text(app, "--metric", "/input/metric", "Input metric JSON");
  c.overrides.text(app, "--hopping", "/input/hopping", "Input hopping JSON or CSV");
}

// --- subcommands -----------------------------------------------------------

void run_curvature(const Command& c) {
  const json cfg = load_config(c);
  Section root(cfg, "");
  const Outputs out = load_outputs(root);
  const DiagonalMetric g = resolve_metric(root);
  finish_root(root, cfg);

  const SiteField k = curvature_map(g);
  double sum = 0.0;
  int count = 0;
  for (double v : k.values()) {
    if (std::isfinite(v)) {
      sum += v;
      ++count;
    }
  }
  emit(out.path, io::site_field_csv(g.grid, k),
       fmt("curvature on %dx%d sites, mean over %d finite sites %.6g", g.grid.nx(), g.grid.ny(),
           count, count ? sum / count : NAN));
}

void run_hopping(const Command& c) {
  const json cfg = load_config(c);
  Section root(cfg, "");
  const Outputs out = load_outputs(root);
  const Inputs in = load_inputs(root);
  HoppingModel h = [&] {
    if (!in.hopping.empty()) return load_hopping_file(root, in.hopping);
    if (!in.metric.empty()) {
      const OnsiteMode mode = load_onsite(root);
      try {
        return metric_to_hopping(io::metric_from_json(json::parse(io::read_file(in.metric))),
                                 mode);
      } catch (const json::parse_error& e) {
        throw ConfigError("input.metric", std::string("invalid JSON: ") + e.what());
      }
    }
    return load_scenario(root, 0.0, 0.0).hopping();
  }();
  std::optional<DiagonalMetric> metric;
  if (!out.metric.empty()) {
    try {
      metric = hopping_to_metric(h);
    } catch (const PreconditionError& e) {
      throw ConfigError("output.metric", e.what());
    }
  }
  finish_root(root, cfg);

  emit(out.path, io::hopping_to_json(h).dump() + "\n",
       fmt("hopping model on %dx%d sites%s", h.grid.nx(), h.grid.ny(),
           h.has_diagonals() ? " with diagonal links" : ""));
  if (metric) {
    emit(out.metric, io::metric_to_json(*metric).dump() + "\n", "reconstructed metric");
  }
}

void run_geodesics(const Command& c) {
  const json cfg = load_config(c);
  Section root(cfg, "");
  const Outputs out = load_outputs(root);
  Point source{0.0, 0.0};
  std::string method = "fast-marching";
  if (root.has("geodesics")) {
    Section s = root.child("geodesics");
    source = s.point("source", source);
    method = s.string("method", method);
    s.finish();
    if (method != "fast-marching" && method != "graph") {
      throw ConfigError("geodesics.method", "expected \"fast-marching\" or \"graph\"");
    }
  }
  const DiagonalMetric g = resolve_metric(root);
  finish_root(root, cfg);
  Site s;
  try {
    s = g.grid.nearest_site(source);
  } catch (const PreconditionError& e) {
    throw ConfigError("geodesics.source", e.what());
  }
  const SiteField d =
      method == "graph" ? graph_distance_map(g, s) : geodesic_distance_map(g, s);
  double far = 0.0;
  for (double v : d.values()) far = std::max(far, v);
  emit(out.path, io::site_field_csv(g.grid, d),
       fmt("%s distance from (%g, %g), max %.6g", method.c_str(), g.grid.x(s.i), g.grid.y(s.j),
           far));
}

void run_evolve(const Command& c) {
  const json cfg = load_config(c);
  Section root(cfg, "");
  const Outputs out = load_outputs(root);

  Section d = root.child("dynamics");
  const std::string equation = d.string("equation", "schrodinger");
  if (equation != "schrodinger" && equation != "wave") {
    throw ConfigError(d.key("equation"), "expected \"schrodinger\" or \"wave\"");
  }
  EvolutionOptions opt;
  opt.dt = require_positive(d.number("dt"), d.key("dt"));
  opt.steps = d.integer("steps");
  if (opt.steps < 0) throw ConfigError(d.key("steps"), "must be non-negative");
  opt.t0 = d.number("t0", 0.0);
  opt.record_every = d.integer("record_every", 1);
  opt.snapshot_every = d.integer("snapshot_every", 0);
  if (opt.record_every < 0 || opt.snapshot_every < 0) {
    throw ConfigError(d.key("record_every"), "must be non-negative");
  }
  const std::string solver = d.string("solver", "direct");
  if (solver != "direct" && solver != "iterative") {
    throw ConfigError(d.key("solver"), "expected \"direct\" or \"iterative\"");
  }
  opt.solver = solver == "direct" ? LinearSolver::direct : LinearSolver::iterative;
  opt.tolerance = require_positive(d.number("tolerance", opt.tolerance), d.key("tolerance"));
  opt.max_iterations = d.integer("max_iterations", opt.max_iterations);

  Section init = d.child("initial");
  const std::string type = init.string("type", "gaussian");
  const Point momentum = init.point("momentum", Point{0.0, 0.0});
  std::optional<Point> center;
  double width = 0.0;
  if (type == "gaussian") {
    center = init.point("center", Point{0.0, 0.0});
    width = init.number("width");
  } else if (type != "plane-wave") {
    throw ConfigError(init.key("type"), "expected \"gaussian\" or \"plane-wave\"");
  }
  init.finish();
  d.finish();

  const double t1 = opt.t0 + opt.steps * opt.dt;
  Scenario sc = load_scenario(root, opt.t0, t1);
  if (!sc.model) throw ConfigError("scenario.kind", "evolve needs a lattice scenario");
  finish_root(root, cfg);

  WaveState psi = [&] {
    try {
      return center ? gaussian_packet(*sc.grid, *center, width, momentum)
                    : plane_wave(*sc.grid, momentum);
    } catch (const PreconditionError& e) {
      throw ConfigError("dynamics.initial", e.what());
    }
  }();
  if (equation == "wave") {
    if (!sc.model->is_static()) {
      throw ConfigError("scenario.kind", "wave evolution needs a static scenario");
    }
    const LatticeOperator h = assemble_hamiltonian(sc.model->at(opt.t0));
    if (!(opt.dt < leapfrog_stability_limit(h))) {
      throw ConfigError("dynamics.dt",
                        fmt("exceeds the leapfrog stability limit %.6g", leapfrog_stability_limit(h)));
    }
  }
  const Trajectory tr = equation == "schrodinger"
                            ? evolve_schrodinger(std::move(psi), *sc.model, opt)
                            : evolve_wave(std::move(psi), assemble_hamiltonian(sc.model->at(opt.t0)), opt);
  const auto& last = tr.records.back();
  emit(out.path, io::trajectory_csv(tr),
       fmt("%zu records, final t = %.6g, norm %.12f, energy %.10g", tr.records.size(), last.t,
           last.obs.norm, last.energy));
  if (!out.snapshots.empty()) {
    emit(out.snapshots, io::snapshots_json(*sc.grid, tr).dump() + "\n",
         fmt("%zu snapshots", tr.snapshots.size()));
  }
}

void run_spectrum(const Command& c) {
  const json cfg = load_config(c);
  Section root(cfg, "");
  const Outputs out = load_outputs(root);
  EigenOptions opt;
  std::optional<int> k;
  if (root.has("spectrum")) {
    Section s = root.child("spectrum");
    if (s.has("k")) k = s.integer("k");
    const std::string method = s.string("method", "automatic");
    if (method == "automatic") {
      opt.method = EigenMethod::automatic;
    } else if (method == "dense") {
      opt.method = EigenMethod::dense;
    } else if (method == "lanczos") {
      opt.method = EigenMethod::lanczos;
    } else if (method == "shift-invert") {
      opt.method = EigenMethod::shift_invert;
    } else {
      throw ConfigError(s.key("method"),
                        "expected automatic, dense, lanczos or shift-invert");
    }
    if (s.has("shift")) opt.shift = s.number("shift");
    opt.tolerance = require_positive(s.number("tolerance", opt.tolerance), s.key("tolerance"));
    opt.seed = static_cast<std::uint64_t>(s.integer("seed", static_cast<int>(opt.seed)));
    s.finish();
  }
  const Scenario sc = load_scenario(root, 0.0, 0.0);
  finish_root(root, cfg);
  const LatticeOperator h = assemble_hamiltonian(sc.hopping());
  const int dim = static_cast<int>(h.dimension());
  const int count = k.value_or(dim < static_cast<int>(opt.dense_limit) ? dim : 10);
  if (count < 1 || count > dim) {
    throw ConfigError("spectrum.k", fmt("must be in [1, %d]", dim));
  }
  const EigenResult r = lowest_eigenpairs(h, count, opt);
  const double worst = *std::max_element(r.residuals.begin(), r.residuals.end());
  std::vector<double> values(r.values.data(), r.values.data() + r.values.size());
  emit(out.path, io::eigenvalues_csv(values),
       fmt("%d lowest eigenvalues, E0 = %.10g, max residual %.2e", count, values.front(), worst));
}

void run_bands(const Command& c) {
  json cfg = load_config(c);
  if (!cfg.contains("scenario")) {
    cfg["scenario"] = {{"kind", "supercell"}, {"model", {{"preset", "dimerized-chain"}}}};
  }
  Section root(cfg, "");
  const Outputs out = load_outputs(root);
  int points = 201;
  int points_y = 0;
  std::optional<double> window;
  int dirac_band = 0;
  if (root.has("bands")) {
    Section s = root.child("bands");
    points = s.integer("points", points);
    points_y = s.integer("points_y", 0);
    if (s.has("dirac_window")) {
      window = require_positive(s.number("dirac_window"), s.key("dirac_window"));
    }
    dirac_band = s.integer("dirac_band", 0);
    s.finish();
    if (points < 2) throw ConfigError("bands.points", "need at least 2 momenta");
  }
  const Scenario sc = load_scenario(root, 0.0, 0.0);
  if (!sc.supercell) throw ConfigError("scenario.kind", "bands needs a supercell scenario");
  finish_root(root, cfg);
  const SupercellModel& m = *sc.supercell;
  const double dx = std::hypot(m.a1.x, m.a1.y);
  const double dy = std::hypot(m.a2.x, m.a2.y);
  const auto momenta = m.dimension == 1
                           ? zone_line(points, dx)
                           : zone_grid(points, points_y > 1 ? points_y : points, dx, dy);
  const BandResult b = bloch_bands(m, momenta);
  std::optional<DiracFit> fit;
  if (window) {
    try {
      fit = dirac_fit(b, dirac_band, dx, *window);
    } catch (const PreconditionError& e) {
      throw ConfigError("bands.dirac_window", e.what());
    }
  }
  emit(out.path, io::bands_csv(b),
       fmt("%d bands on %zu momenta", b.band_count(), b.momenta.size()));
  if (fit) {
    std::printf("dirac fit: mc^2 = %.10g, c = %.10g, p* = %.10g, max rel error %.3g\n",
                fit->rest_energy, fit->c, fit->p_star, fit->max_relative_error);
  }
}

void run_tunneling(const Command& c) {
  const json cfg = load_config(c);
  Section root(cfg, "");
  const Outputs out = load_outputs(root);
  double lo = 0.0;
  double hi = 30.0;
  int count = 31;
  int band = 0;
  double fit_lo = 15.0;
  double fit_hi = 30.0;
  if (root.has("tunneling")) {
    Section s = root.child("tunneling");
    lo = s.number("V0_min", lo);
    hi = s.number("V0_max", hi);
    count = s.integer("count", count);
    band = s.integer("band_index", band);
    fit_lo = s.number("fit_min", fit_lo);
    fit_hi = s.number("fit_max", fit_hi);
    s.finish();
  }
  if (!(lo >= 0.0)) throw ConfigError("tunneling.V0_min", "must be >= 0");
  if (!(hi >= lo)) throw ConfigError("tunneling.V0_max", "must be >= V0_min");
  if (count < 1 || (count == 1 && hi != lo)) {
    throw ConfigError("tunneling.count", "must be >= 1 (and >= 2 for a range)");
  }
  if (band < 0) throw ConfigError("tunneling.band_index", "must be >= 0");
  finish_root(root, cfg);
  std::vector<double> v0;
  for (int k = 0; k < count; ++k) {
    v0.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  }
  const auto scan = tunneling_scan(v0, band);
  std::vector<SinusoidalBand> fit;
  for (const auto& b : scan) {
    if (b.V0 >= fit_lo && b.V0 <= fit_hi) fit.push_back(b);
  }
  std::string summary = fmt("%zu depths", scan.size());
  if (fit.size() >= 2) {
    summary += fmt(", slope of ln J vs sqrt(V0) over [%g, %g] = %.6f", fit_lo, fit_hi,
                   tunneling_log_slope(fit));
  }
  emit(out.path, io::tunneling_scan_csv(scan), summary);
}

}  // namespace

int main(int argc, char** argv) {
  kernels::configure_threads_from_env();
  CLI::App app{"Curved-space lattice simulator"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    bool lattice;
    void (*run)(const Command&);
  };
  const Entry entries[] = {
      {"curvature", "Gaussian curvature map of a metric", true, run_curvature},
      {"hopping", "Hopping model of a scenario or metric", true, run_hopping},
      {"geodesics", "Geodesic distance map from a source point", true, run_geodesics},
      {"evolve", "Time evolution of a wave packet", true, run_evolve},
      {"spectrum", "Lowest eigenvalues of the lattice Hamiltonian", true, run_spectrum},
      {"bands", "Bloch bands of a supercell model", false, run_bands},
      {"tunneling-law", "Band width scan of the sinusoidal lattice", false, run_tunneling},
  };
  std::deque<Command> commands;
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->set_help_flag("--help", "Print this help message and exit");
    Command& c = commands.emplace_back();
    add_common(sub, c, e.lattice);
    subs.emplace_back(sub, &e);
  }
  // Subcommand-specific overrides.
  {
    Command& evolve = commands[3];
    CLI::App* s = subs[3].first;
    evolve.overrides.number(s, "--h", "/scenario/h", "Metric-wave amplitude");
    evolve.overrides.number(s, "--dt", "/dynamics/dt", "Time step");
    evolve.overrides.integer(s, "--steps", "/dynamics/steps", "Number of steps");
    evolve.overrides.integer(s, "--record-every", "/dynamics/record_every", "Record interval");
    evolve.overrides.integer(s, "--snapshot-every", "/dynamics/snapshot_every",
                             "Snapshot interval");
    evolve.overrides.text(s, "--equation", "/dynamics/equation", "schrodinger or wave");
    evolve.overrides.text(s, "--solver", "/dynamics/solver", "direct or iterative");
    evolve.overrides.number(s, "--width", "/dynamics/initial/width", "Packet width");
    evolve.overrides.pair(s, "--center", "/dynamics/initial/center", "Packet centre x y");
    evolve.overrides.pair(s, "--momentum", "/dynamics/initial/momentum", "Momentum px py");
    evolve.overrides.text(s, "--snapshots", "/output/snapshots", "Snapshot JSON file");

    Command& geo = commands[2];
    geo.overrides.pair(subs[2].first, "--source", "/geodesics/source", "Source point x y");
    geo.overrides.text(subs[2].first, "--method", "/geodesics/method", "fast-marching or graph");

    Command& hop = commands[1];
    hop.overrides.text(subs[1].first, "--metric-output", "/output/metric",
                       "Also write the reconstructed metric JSON");

    Command& spectrum = commands[4];
    spectrum.overrides.integer(subs[4].first, "--k", "/spectrum/k", "Number of eigenvalues");
    spectrum.overrides.text(subs[4].first, "--method", "/spectrum/method",
                        "automatic, dense, lanczos or shift-invert");

    Command& bands = commands[5];
    CLI::App* b = subs[5].first;
    bands.overrides.number(b, "--J1", "/scenario/model/J1", "Intra-cell hopping");
    bands.overrides.number(b, "--J2", "/scenario/model/J2", "Inter-cell hopping");
    bands.overrides.number(b, "--d", "/scenario/model/d", "Cell length");
    bands.overrides.integer(b, "--points", "/bands/points", "Momenta per axis");
    bands.overrides.number(b, "--dirac-window", "/bands/dirac_window", "Dirac fit window");

    Command& tun = commands[6];
    CLI::App* t = subs[6].first;
    tun.overrides.number(t, "--v0-min", "/tunneling/V0_min", "Smallest depth");
    tun.overrides.number(t, "--v0-max", "/tunneling/V0_max", "Largest depth");
    tun.overrides.integer(t, "--count", "/tunneling/count", "Number of depths");
    tun.overrides.integer(t, "--band", "/tunneling/band_index", "Band index");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i].first->parsed()) continue;
    Command& c = commands[i];
    try {
      subs[i].second->run(c);
      return 0;
    } catch (const ConfigError& e) {
      std::fprintf(stderr, "config error at %s\n", e.what());
      return 2;
    } catch (const PreconditionError& e) {
      std::fprintf(stderr, "precondition violated: %s\n", e.what());
      return 2;
    } catch (const NumericalError& e) {
      std::fprintf(stderr, "numerical failure in %s: residual %.3e after %d iterations\n",
                   e.operation().c_str(), e.residual(), e.iterations());
      return 3;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
