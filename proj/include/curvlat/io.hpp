#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "curvlat/bloch.hpp"
#include "curvlat/evolution.hpp"
#include "curvlat/hopping.hpp"
#include "curvlat/metric.hpp"
#include "curvlat/schedule.hpp"
#include "curvlat/sinusoidal_band.hpp"

namespace curvlat::io {

using json = nlohmann::json;

/// 17 significant digits; non-finite values print as nan / inf / -inf.
std::string format_number(double v);

/// Writes to a sibling temporary file and renames it over `path`, so
/// readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

json grid_to_json(const Grid2D& grid);
Grid2D grid_from_json(const json& j, const std::string& path = "grid");

json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j, ScheduleKind kind,
                            const std::string& path = "schedule");

json metric_to_json(const DiagonalMetric& metric);
DiagonalMetric metric_from_json(const json& j);

json hopping_to_json(const HoppingModel& model);
HoppingModel hopping_from_json(const json& j);

/// Measured hopping map: lines "site_i,site_j,T" with linear site indices
/// n = j * nx + i and an optional header line. Every nearest-neighbour link
/// must appear exactly once (either orientation); diagonal links are
/// optional but, if present, must cover both families. On-site energies are
/// set to the incident sum of |T|.
HoppingModel hopping_from_csv(std::istream& in, const Grid2D& grid);

std::string site_field_csv(const Grid2D& grid, const SiteField& field);
std::string trajectory_csv(const Trajectory& trajectory);
json snapshots_json(const Grid2D& grid, const Trajectory& trajectory);
std::string bands_csv(const BandResult& bands);
std::string tunneling_scan_csv(std::span<const SinusoidalBand> scan);
std::string eigenvalues_csv(std::span<const double> values);

/// Throws ConfigError naming the first key of `j` not in `allowed`.
void require_known_keys(const json& j, std::initializer_list<const char*> allowed,
                        const std::string& path);

}  // namespace curvlat::io
