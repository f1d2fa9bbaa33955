#include "config.hpp"

#include <cmath>

#include "curvlat/errors.hpp"

namespace curvlat::cli {

Section::Section(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) {
    throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }
}

std::string Section::key(const std::string& k) const {
  return path_.empty() ? k : path_ + "." + k;
}

const json& Section::raw(const std::string& k) {
  if (!has(k)) throw ConfigError(key(k), "missing required key");
  used_.insert(k);
  return j_->at(k);
}

double Section::number(const std::string& k, std::optional<double> fallback) {
  if (!has(k)) {
    if (fallback) return *fallback;
    throw ConfigError(key(k), "missing required key");
  }
  const json& v = raw(k);
  if (!v.is_number()) throw ConfigError(key(k), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key(k), "expected a finite number");
  return d;
}

int Section::integer(const std::string& k, std::optional<int> fallback) {
  if (!has(k)) {
    if (fallback) return *fallback;
    throw ConfigError(key(k), "missing required key");
  }
  const json& v = raw(k);
  if (!v.is_number_integer()) throw ConfigError(key(k), "expected an integer");
  return v.get<int>();
}

std::string Section::string(const std::string& k, std::optional<std::string> fallback) {
  if (!has(k)) {
    if (fallback) return *fallback;
    throw ConfigError(key(k), "missing required key");
  }
  const json& v = raw(k);
  if (!v.is_string()) throw ConfigError(key(k), "expected a string");
  return v.get<std::string>();
}

bool Section::boolean(const std::string& k, bool fallback) {
  if (!has(k)) return fallback;
  const json& v = raw(k);
  if (!v.is_boolean()) throw ConfigError(key(k), "expected true or false");
  return v.get<bool>();
}

Point Section::point(const std::string& k, std::optional<Point> fallback) {
  if (!has(k)) {
    if (fallback) return *fallback;
    throw ConfigError(key(k), "missing required key");
  }
  const json& v = raw(k);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(key(k), "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Section Section::child(const std::string& k) { return Section(raw(k), key(k)); }

void Section::finish() const {
  for (const auto& [k, v] : j_->items()) {
    if (!used_.contains(k)) throw ConfigError(key(k), "unknown key");
  }
}

double require_positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
  return v;
}

}  // namespace curvlat::cli
