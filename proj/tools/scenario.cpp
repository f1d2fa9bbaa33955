#include "scenario.hpp"

#include <cmath>

#include "curvlat/errors.hpp"

namespace curvlat::cli {

namespace {

template <typename Fn>
auto keyed(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const PreconditionError& e) {
    throw ConfigError(key, e.what());
  }
}

Schedule load_schedule(Section& s, const std::string& k, ScheduleKind kind,
                       const Schedule& fallback, std::optional<double> amplitude) {
  json j = s.has(k) ? s.raw(k) : io::schedule_to_json(fallback);
  if (amplitude) {
    if (!j.is_object()) throw ConfigError(s.key(k), "expected an object");
    const bool constant = j.value("shape", "") == "constant";
    j["parameters"][constant ? "value" : "amplitude"] = *amplitude;
  }
  return io::schedule_from_json(j, kind, s.key(k));
}

}  // namespace

OnsiteMode load_onsite(Section& root) {
  const std::string onsite = root.string("onsite", "laplacian");
  if (onsite != "laplacian" && onsite != "exact") {
    throw ConfigError(root.key("onsite"), "expected \"laplacian\" or \"exact\"");
  }
  return onsite == "exact" ? OnsiteMode::exact : OnsiteMode::laplacian;
}

Grid2D load_grid(Section g, int default_n) {
  const int n = g.integer("n", default_n);
  const int nx = g.integer("nx", n);
  const int ny = g.integer("ny", n);
  const double l = require_positive(g.number("spacing", 1.0), g.key("spacing"));
  const std::string b = g.string("boundary", "open");
  if (b != "open" && b != "periodic") {
    throw ConfigError(g.key("boundary"), "expected \"open\" or \"periodic\"");
  }
  const Boundary boundary = b == "periodic" ? Boundary::periodic : Boundary::open;
  std::optional<Point> origin;
  if (g.has("origin")) origin = g.point("origin");
  g.finish();
  return keyed(g.path(), [&] {
    return origin ? Grid2D(nx, ny, l, boundary, *origin)
                  : Grid2D::centered(nx, ny, l, boundary);
  });
}

SupercellModel load_supercell(Section m) {
  SupercellModel model;
  if (m.has("preset")) {
    const std::string preset = m.string("preset");
    const double d = require_positive(m.number("d", 1.0), m.key("d"));
    const double onsite = m.number("onsite", 0.0);
    if (preset == "chain") {
      model = simple_chain(m.number("J", 1.0), d, onsite);
    } else if (preset == "dimerized-chain") {
      model = dimerized_chain(m.number("J1", 1.0), m.number("J2", 0.8), d, onsite);
    } else {
      throw ConfigError(m.key("preset"), "expected \"chain\" or \"dimerized-chain\"");
    }
    m.finish();
    return model;
  }
  model.dimension = m.integer("dimension", 1);
  model.a1 = m.point("a1", Point{1.0, 0.0});
  model.a2 = m.point("a2", Point{0.0, 1.0});
  const json& onsite = m.raw("onsite");
  if (!onsite.is_array() || onsite.empty()) {
    throw ConfigError(m.key("onsite"), "expected a non-empty array");
  }
  for (std::size_t k = 0; k < onsite.size(); ++k) {
    if (!onsite[k].is_number()) {
      throw ConfigError(m.key("onsite") + "[" + std::to_string(k) + "]", "expected a number");
    }
    model.onsite.push_back(onsite[k].get<double>());
  }
  model.basis = static_cast<int>(model.onsite.size());
  const json& hops = m.raw("hoppings");
  if (!hops.is_array()) throw ConfigError(m.key("hoppings"), "expected an array");
  for (std::size_t k = 0; k < hops.size(); ++k) {
    Section h(hops[k], m.key("hoppings") + "[" + std::to_string(k) + "]");
    SupercellHop hop;
    const json& off = h.raw("offset");
    if (!off.is_array() || off.size() < 1 || off.size() > 2) {
      throw ConfigError(h.key("offset"), "expected [dx] or [dx, dy]");
    }
    for (std::size_t c = 0; c < off.size(); ++c) {
      if (!off[c].is_number_integer()) throw ConfigError(h.key("offset"), "expected integers");
      hop.cell_offset[c] = off[c].get<int>();
    }
    hop.from = h.integer("from");
    hop.to = h.integer("to");
    hop.amplitude = h.number("T");
    h.finish();
    model.hoppings.push_back(hop);
  }
  if (m.has("positions")) {
    const json& pos = m.raw("positions");
    if (!pos.is_array()) throw ConfigError(m.key("positions"), "expected an array");
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (!pos[k].is_array() || pos[k].size() != 2) {
        throw ConfigError(m.key("positions") + "[" + std::to_string(k) + "]", "expected [x, y]");
      }
      model.positions.push_back({pos[k][0].get<double>(), pos[k][1].get<double>()});
    }
  }
  m.finish();
  keyed(m.path(), [&] {
    model.validate();
    return 0;
  });
  return model;
}

Scenario load_scenario(Section& root, double t0, double t1) {
  Section s = root.child("scenario");
  Scenario sc;
  sc.kind = s.string("kind");
  sc.t = s.number("t", t0);
  const std::string& kind = sc.kind;

  if (kind == "supercell") {
    sc.supercell = load_supercell(s.child("model"));
    s.finish();
    return sc;
  }

  sc.onsite = load_onsite(root);

  const int default_n = 65;
  sc.grid = root.has("grid") ? load_grid(root.child("grid"), default_n)
                             : Grid2D::centered(default_n, default_n, 1.0);
  const Grid2D& grid = *sc.grid;
  const std::string key = s.key("kind");

  if (kind == "trap" || kind == "trap-sphere" || kind == "trap-hyperbolic" ||
      kind == "trap-asymptotically-flat" || kind == "trap-compact") {
    double a = 0.0;
    double b = 0.0;
    if (kind == "trap") {
      a = s.number("a");
      b = s.number("b");
    } else if (kind == "trap-sphere") {
      a = s.number("a", 1.0);
      if (!(a > 0.0)) throw ConfigError(s.key("a"), "trap-sphere needs a > 0");
      b = 0.25 * a * a;
    } else if (kind == "trap-hyperbolic") {
      a = s.number("a", -1.0);
      if (!(a < 0.0)) throw ConfigError(s.key("a"), "trap-hyperbolic needs a < 0");
      b = 0.25 * a * a;
    } else if (kind == "trap-asymptotically-flat") {
      a = s.number("a", 1.0);
      if (!(a > 0.0)) throw ConfigError(s.key("a"), "trap-asymptotically-flat needs a > 0");
    } else {
      b = s.number("b", 1.0);
      if (!(b > 0.0)) throw ConfigError(s.key("b"), "trap-compact needs b > 0");
    }
    sc.family = keyed(s.key("b"), [&] { return ConformalFamily(a, b); });
    sc.model = TimeDependentHopping(
        keyed(root.key("grid"), [&] { return trap_hopping(*sc.family, grid, sc.onsite); }));
  } else if (kind == "flat" || kind == "flat-with-diagonals") {
    const double J = require_positive(s.number("J", 1.0), s.key("J"));
    sc.model = TimeDependentHopping(uniform_hopping(grid, J, kind == "flat-with-diagonals"));
  } else if (kind == "flrw") {
    const double J0 = require_positive(s.number("J", 1.0), s.key("J"));
    const Schedule a = load_schedule(
        s, "scale_factor", ScheduleKind::scale_factor,
        Schedule::exponential(ScheduleKind::scale_factor, 1.0, 0.5), std::nullopt);
    const double lo = std::min({t0, t1, sc.t});
    const double hi = std::max({t0, t1, sc.t});
    sc.model = keyed(s.key("scale_factor"), [&] { return flrw_hopping(a, J0, grid, lo, hi); });
  } else if (kind == "metric-wave") {
    const double J = require_positive(s.number("J", 1.0), s.key("J"));
    std::optional<double> amp;
    if (s.has("h")) amp = s.number("h");
    const Schedule h = load_schedule(
        s, "profile", ScheduleKind::wave_profile,
        Schedule::gaussian_pulse(ScheduleKind::wave_profile, 0.01 * J, 6.0, 5.0), amp);
    sc.model = keyed(s.key("h"), [&] {
      metric_wave_hopping(J, h, grid, sc.t);  // validates sup|h| < J
      return metric_wave(J, h, grid);
    });
  } else if (kind == "beam") {
    const double J = require_positive(s.number("J", 1.0), s.key("J"));
    const double A0 = s.number("A0", 1.0);
    const double alpha = require_positive(s.number("alpha", 1.0), s.key("alpha"));
    sc.model = TimeDependentHopping(
        keyed(s.path(), [&] { return beam_hopping(J, A0, alpha, grid); }));
  } else {
    throw ConfigError(key,
                      "unknown scenario \"" + kind +
                          "\" (expected flat, flat-with-diagonals, trap, trap-sphere, "
                          "trap-hyperbolic, trap-asymptotically-flat, trap-compact, flrw, "
                          "metric-wave, beam, supercell)");
  }
  s.finish();
  return sc;
}

HoppingModel Scenario::hopping() const {
  if (!model) throw ConfigError("scenario.kind", "scenario has no lattice hopping model");
  return model->at(t);
}

DiagonalMetric Scenario::metric() const {
  if (family) return family_to_metric(*family, *grid);
  const HoppingModel h = hopping();
  if (h.has_diagonals()) {
    throw ConfigError("scenario.kind",
                      "scenario \"" + kind + "\" has diagonal links; no diagonal metric");
  }
  return hopping_to_metric(h);
}

}  // namespace curvlat::cli
