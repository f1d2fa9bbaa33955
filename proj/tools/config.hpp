#pragma once

#include <optional>
#include <set>
#include <string>

#include "curvlat/io.hpp"

namespace curvlat::cli {

using json = nlohmann::json;

/// View of one JSON object in a config. Every key read is recorded, and
/// finish() rejects whatever was never read, naming its full key path.
class Section {
 public:
  Section(const json& j, std::string path);

  const std::string& path() const { return path_; }
  std::string key(const std::string& k) const;
  bool has(const std::string& k) const { return j_->contains(k); }

  double number(const std::string& k, std::optional<double> fallback = {});
  int integer(const std::string& k, std::optional<int> fallback = {});
  std::string string(const std::string& k, std::optional<std::string> fallback = {});
  bool boolean(const std::string& k, bool fallback);
  Point point(const std::string& k, std::optional<Point> fallback = {});
  /// Marks the key consumed and returns it unparsed.
  const json& raw(const std::string& k);
  Section child(const std::string& k);

  void finish() const;

 private:
  const json* j_;
  std::string path_;
  mutable std::set<std::string> used_;
};

/// Positive-number check that reports the key path.
double require_positive(double v, const std::string& key);

}  // namespace curvlat::cli
