#include "curvlat/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "curvlat/errors.hpp"

namespace curvlat::io {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(join(path, key), "missing required key");
  }
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (j.is_null()) return std::nan("");
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

json array_of(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) {
    if (std::isfinite(x)) {
      a.push_back(x);
    } else {
      a.push_back(nullptr);
    }
  }
  return a;
}

Array2D<double> field_from_json(const json& j, int cols, int rows,
                                const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  const auto expected = static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows);
  if (j.size() != expected) {
    throw ConfigError(path, "expected " + std::to_string(expected) +
                                " values, found " + std::to_string(j.size()));
  }
  Array2D<double> f(cols, rows);
  for (std::size_t k = 0; k < expected; ++k) {
    f.values()[k] = number(j[k], path + "[" + std::to_string(k) + "]");
  }
  return f;
}

LinkField link_from_json(const json& j, const Grid2D& grid, LinkDir dir,
                         const std::string& path) {
  const auto [c, r] = link_extent(grid, dir);
  return field_from_json(j, c, r, path);
}

template <typename Fn>
auto as_config_error(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const PreconditionError& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_known_keys(const json& j, std::initializer_list<const char*> allowed,
                        const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

json grid_to_json(const Grid2D& grid) {
  return json{{"nx", grid.nx()},
              {"ny", grid.ny()},
              {"spacing", grid.spacing()},
              {"boundary", grid.periodic() ? "periodic" : "open"},
              {"origin", json::array({grid.origin().x, grid.origin().y})}};
}

Grid2D grid_from_json(const json& j, const std::string& path) {
  require_known_keys(j, {"nx", "ny", "spacing", "boundary", "origin"}, path);
  const int nx = integer(require(j, "nx", path), join(path, "nx"));
  const int ny = integer(require(j, "ny", path), join(path, "ny"));
  const double l = number(require(j, "spacing", path), join(path, "spacing"));
  Boundary b = Boundary::open;
  if (j.contains("boundary")) {
    const auto& s = j.at("boundary");
    if (s == "periodic") {
      b = Boundary::periodic;
    } else if (s != "open") {
      throw ConfigError(join(path, "boundary"), "expected \"open\" or \"periodic\"");
    }
  }
  if (!j.contains("origin")) {
    return as_config_error(path, [&] { return Grid2D::centered(nx, ny, l, b); });
  }
  const auto& o = j.at("origin");
  if (!o.is_array() || o.size() != 2) {
    throw ConfigError(join(path, "origin"), "expected [x, y]");
  }
  const Point origin{number(o[0], join(path, "origin[0]")),
                     number(o[1], join(path, "origin[1]"))};
  return as_config_error(path, [&] { return Grid2D(nx, ny, l, b, origin); });
}

json schedule_to_json(const Schedule& s) {
  json params = json::object();
  for (const auto& [name, value] : s.parameters()) params[name] = value;
  json j{{"kind", to_string(s.kind())},
         {"shape", to_string(s.shape())},
         {"parameters", params}};
  if (s.shape() == ScheduleShape::tabulated) {
    j["times"] = s.table_times();
    j["values"] = s.table_values();
  }
  return j;
}

Schedule schedule_from_json(const json& j, ScheduleKind kind, const std::string& path) {
  require_known_keys(j, {"kind", "shape", "parameters", "times", "values"}, path);
  if (j.contains("kind")) {
    try {
      if (schedule_kind_from_string(j.at("kind").get<std::string>()) != kind) {
        throw ConfigError(join(path, "kind"), "expected " + to_string(kind));
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(join(path, "kind"), e.what());
    } catch (const json::exception& e) {
      throw ConfigError(join(path, "kind"), "expected a string");
    }
  }
  const json& shape_j = require(j, "shape", path);
  if (!shape_j.is_string()) throw ConfigError(join(path, "shape"), "expected a string");
  ScheduleShape shape;
  try {
    shape = schedule_shape_from_string(shape_j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "shape"), e.what());
  }
  const std::string ppath = join(path, "parameters");
  const json params = j.contains("parameters") ? j.at("parameters") : json::object();
  auto param = [&](const char* name, std::optional<double> fallback = {}) {
    if (!params.contains(name)) {
      if (fallback) return *fallback;
      throw ConfigError(join(ppath, name), "missing required key");
    }
    return number(params.at(name), join(ppath, name));
  };
  return as_config_error(path, [&]() -> Schedule {
    switch (shape) {
      case ScheduleShape::constant:
        require_known_keys(params, {"value"}, ppath);
        return Schedule::constant(kind, param("value"));
      case ScheduleShape::exponential:
        require_known_keys(params, {"amplitude", "rate"}, ppath);
        return Schedule::exponential(kind, param("amplitude"), param("rate"));
      case ScheduleShape::power_law:
        require_known_keys(params, {"amplitude", "t_ref", "exponent"}, ppath);
        return Schedule::power_law(kind, param("amplitude"), param("t_ref"),
                                   param("exponent"));
      case ScheduleShape::gaussian_pulse:
        require_known_keys(params, {"amplitude", "width", "center"}, ppath);
        return Schedule::gaussian_pulse(kind, param("amplitude"), param("width"),
                                        param("center", 0.0));
      case ScheduleShape::sine:
        require_known_keys(params, {"amplitude", "wavenumber", "phase"}, ppath);
        return Schedule::sine(kind, param("amplitude"), param("wavenumber"),
                              param("phase", 0.0));
      case ScheduleShape::tabulated: {
        require_known_keys(params, {}, ppath);
        auto vec = [&](const char* key) {
          const json& a = require(j, key, path);
          if (!a.is_array()) throw ConfigError(join(path, key), "expected an array");
          std::vector<double> v;
          for (std::size_t k = 0; k < a.size(); ++k) {
            v.push_back(number(a[k], join(path, key) + "[" + std::to_string(k) + "]"));
          }
          return v;
        };
        return Schedule::tabulated(kind, vec("times"), vec("values"));
      }
    }
    throw ConfigError(join(path, "shape"), "unsupported shape");
  });
}

json metric_to_json(const DiagonalMetric& m) {
  return json{{"grid", grid_to_json(m.grid)},
              {"gxx_inv", array_of(m.gxx_inv.values())},
              {"gyy_inv", array_of(m.gyy_inv.values())},
              {"det_g", array_of(m.det_g.values())}};
}

DiagonalMetric metric_from_json(const json& j) {
  require_known_keys(j, {"version", "grid", "gxx_inv", "gyy_inv", "det_g"}, "");
  const Grid2D grid = grid_from_json(require(j, "grid", ""), "grid");
  LinkField gxx = link_from_json(require(j, "gxx_inv", ""), grid, LinkDir::x, "gxx_inv");
  LinkField gyy = link_from_json(require(j, "gyy_inv", ""), grid, LinkDir::y, "gyy_inv");
  DiagonalMetric m = as_config_error("gxx_inv", [&] {
    return DiagonalMetric::from_links(grid, std::move(gxx), std::move(gyy));
  });
  if (j.contains("det_g")) {
    m.det_g = field_from_json(j.at("det_g"), grid.nx(), grid.ny(), "det_g");
  }
  as_config_error("det_g", [&] {
    m.validate();
    return 0;
  });
  return m;
}

json hopping_to_json(const HoppingModel& h) {
  json j{{"grid", grid_to_json(h.grid)},
         {"T_x", array_of(h.t_x.values())},
         {"T_y", array_of(h.t_y.values())},
         {"V", array_of(h.onsite.values())}};
  if (h.t_diag_up) j["T_diag_up"] = array_of(h.t_diag_up->values());
  if (h.t_diag_down) j["T_diag_down"] = array_of(h.t_diag_down->values());
  if (h.schedule) j["schedule"] = schedule_to_json(*h.schedule);
  return j;
}

HoppingModel hopping_from_json(const json& j) {
  require_known_keys(j, {"version", "grid", "T_x", "T_y", "V", "T_diag_up",
                         "T_diag_down", "schedule"},
                     "");
  const Grid2D grid = grid_from_json(require(j, "grid", ""), "grid");
  HoppingModel h{grid,
                 link_from_json(require(j, "T_x", ""), grid, LinkDir::x, "T_x"),
                 link_from_json(require(j, "T_y", ""), grid, LinkDir::y, "T_y"),
                 field_from_json(require(j, "V", ""), grid.nx(), grid.ny(), "V"),
                 std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("T_diag_up") != j.contains("T_diag_down")) {
    throw ConfigError(j.contains("T_diag_up") ? "T_diag_down" : "T_diag_up",
                      "diagonal families must be given together");
  }
  if (j.contains("T_diag_up")) {
    h.t_diag_up = link_from_json(j.at("T_diag_up"), grid, LinkDir::diag_up, "T_diag_up");
    h.t_diag_down =
        link_from_json(j.at("T_diag_down"), grid, LinkDir::diag_down, "T_diag_down");
  }
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    if (!s.is_object() || !s.contains("kind") || !s.at("kind").is_string()) {
      throw ConfigError("schedule.kind", "missing or not a string");
    }
    ScheduleKind kind;
    try {
      kind = schedule_kind_from_string(s.at("kind").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("schedule.kind", e.what());
    }
    h.schedule = schedule_from_json(s, kind, "schedule");
  }
  as_config_error("T_x", [&] {
    h.validate();
    return 0;
  });
  return h;
}

HoppingModel hopping_from_csv(std::istream& in, const Grid2D& grid) {
  struct Slot {
    LinkDir dir;
    int i;
    int j;
  };
  // Map an unordered site pair to its link.
  std::map<std::pair<std::size_t, std::size_t>, Slot> links;
  for (LinkDir dir : {LinkDir::x, LinkDir::y, LinkDir::diag_up, LinkDir::diag_down}) {
    const auto [cols, rows] = link_extent(grid, dir);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto [a, b] = link_ends(grid, dir, c, r);
        const std::size_t na = grid.index(a);
        const std::size_t nb = grid.index(b);
        links.emplace(std::pair(std::min(na, nb), std::max(na, nb)), Slot{dir, c, r});
      }
    }
  }
  HoppingModel h{grid,
                 make_link_field(grid, LinkDir::x, std::nan("")),
                 make_link_field(grid, LinkDir::y, std::nan("")),
                 make_site_field(grid),
                 make_link_field(grid, LinkDir::diag_up, std::nan("")),
                 make_link_field(grid, LinkDir::diag_down, std::nan("")),
                 std::nullopt};
  auto field = [&](LinkDir d) -> LinkField& {
    switch (d) {
      case LinkDir::x: return h.t_x;
      case LinkDir::y: return h.t_y;
      case LinkDir::diag_up: return *h.t_diag_up;
      case LinkDir::diag_down: return *h.t_diag_down;
    }
    return h.t_x;
  };

  std::string line;
  int line_no = 0;
  bool any_diag = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long a = 0;
    long long b = 0;
    double t = 0.0;
    if (!(ls >> a >> b >> t)) {
      if (line_no == 1) continue;  // header
      throw ConfigError(where, "expected site_i, site_j, T");
    }
    const auto n = static_cast<long long>(grid.size());
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ConfigError(where, "site index out of range");
    }
    const auto na = static_cast<std::size_t>(a);
    const auto nb = static_cast<std::size_t>(b);
    const auto it = links.find({std::min(na, nb), std::max(na, nb)});
    if (it == links.end()) {
      throw ConfigError(where, "sites are not lattice neighbours");
    }
    const Slot s = it->second;
    double& slot = field(s.dir)(s.i, s.j);
    if (!std::isnan(slot)) throw ConfigError(where, "duplicate link");
    slot = t;
    any_diag |= s.dir == LinkDir::diag_up || s.dir == LinkDir::diag_down;
  }
  auto complete = [](const LinkField& f) {
    return std::none_of(f.values().begin(), f.values().end(),
                        [](double v) { return std::isnan(v); });
  };
  if (!complete(h.t_x) || !complete(h.t_y)) {
    throw ConfigError("csv", "missing nearest-neighbour links");
  }
  if (any_diag) {
    if (!complete(*h.t_diag_up) || !complete(*h.t_diag_down)) {
      throw ConfigError("csv", "incomplete diagonal links");
    }
  } else {
    h.t_diag_up.reset();
    h.t_diag_down.reset();
  }
  h.onsite = incident_hopping_sum(h);
  as_config_error("csv", [&] {
    h.validate();
    return 0;
  });
  return h;
}

std::string site_field_csv(const Grid2D& grid, const SiteField& field) {
  std::string out = "x,y,value\n";
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      out += format_number(grid.x(i)) + "," + format_number(grid.y(j)) + "," +
             format_number(field(i, j)) + "\n";
    }
  }
  return out;
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "t,norm,energy,mean_x,mean_y,width_x,width_y,quadrupole\n";
  for (const auto& r : t.records) {
    out += format_number(r.t) + "," + format_number(r.obs.norm) + "," +
           format_number(r.energy) + "," + format_number(r.obs.mean_x) + "," +
           format_number(r.obs.mean_y) + "," + format_number(r.obs.width_x) + "," +
           format_number(r.obs.width_y) + "," + format_number(r.obs.quadrupole) +
           "\n";
  }
  return out;
}

json snapshots_json(const Grid2D& grid, const Trajectory& t) {
  json snaps = json::array();
  for (const auto& s : t.snapshots) {
    json re = json::array();
    json im = json::array();
    for (const auto& z : s.amplitude) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    snaps.push_back(json{{"t", s.t}, {"re", re}, {"im", im}});
  }
  return json{{"grid", grid_to_json(grid)}, {"snapshots", snaps}};
}

std::string bands_csv(const BandResult& b) {
  std::string out = b.dimension == 1 ? "p,band_index,E\n" : "p_x,p_y,band_index,E\n";
  for (std::size_t k = 0; k < b.momenta.size(); ++k) {
    std::string p = format_number(b.momenta[k].x);
    if (b.dimension == 2) p += "," + format_number(b.momenta[k].y);
    for (int s = 0; s < b.band_count(); ++s) {
      out += p + "," + std::to_string(s) + "," +
             format_number(b.energies(static_cast<Eigen::Index>(k), s)) + "\n";
    }
  }
  return out;
}

std::string tunneling_scan_csv(std::span<const SinusoidalBand> scan) {
  std::string out = "V0_over_ER,E_min,E_max,J_over_ER\n";
  for (const auto& b : scan) {
    out += format_number(b.V0) + "," + format_number(b.E_min) + "," +
           format_number(b.E_max) + "," + format_number(b.J) + "\n";
  }
  return out;
}

std::string eigenvalues_csv(std::span<const double> values) {
  std::string out = "index,E\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += std::to_string(k) + "," + format_number(values[k]) + "\n";
  }
  return out;
}

}  // namespace curvlat::io
