#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace curvlat {

enum class Boundary { open, periodic };

struct Site {
  int i = 0;
  int j = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Regular square lattice with spacing `spacing`; site (i, j) sits at
/// origin + (i, j) * spacing. Linear index is row-major with x fastest.
class Grid2D {
 public:
  Grid2D(int nx, int ny, double spacing, Boundary boundary = Boundary::open,
         Point origin = {});

  /// Origin chosen so the lattice is symmetric about (0, 0); for odd site
  /// counts the middle site sits exactly at the coordinate origin.
  static Grid2D centered(int nx, int ny, double spacing,
                         Boundary boundary = Boundary::open);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double spacing() const { return spacing_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }
  Point origin() const { return origin_; }

  std::size_t size() const {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }
  std::size_t index(Site s) const { return index(s.i, s.j); }
  Site site(std::size_t n) const {
    return {static_cast<int>(n % static_cast<std::size_t>(nx_)),
            static_cast<int>(n / static_cast<std::size_t>(nx_))};
  }

  double x(double i) const { return origin_.x + i * spacing_; }
  double y(double j) const { return origin_.y + j * spacing_; }
  Point position(Site s) const { return {x(s.i), y(s.j)}; }

  bool contains(Site s) const {
    return s.i >= 0 && s.i < nx_ && s.j >= 0 && s.j < ny_;
  }

  /// Largest coordinate radius over the rectangle spanned by the sites.
  double bounding_radius() const;

  /// Site with the given coordinates, if one lies within half a spacing.
  Site nearest_site(Point p) const;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  int nx_;
  int ny_;
  double spacing_;
  Boundary boundary_;
  Point origin_;
};

/// Row-major 2D array (column index fastest). Used for both site and
/// link fields; link orientation is carried by the owning structure.
template <typename T>
class Array2D {
 public:
  Array2D() = default;
  Array2D(int cols, int rows, T value = T{})
      : cols_(cols),
        rows_(rows),
        data_(static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows),
              value) {}

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int c, int r) { return data_[flat(c, r)]; }
  const T& operator()(int c, int r) const { return data_[flat(c, r)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  bool same_shape(const Array2D& o) const {
    return cols_ == o.cols_ && rows_ == o.rows_;
  }

  friend bool operator==(const Array2D&, const Array2D&) = default;

 private:
  std::size_t flat(int c, int r) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int cols_ = 0;
  int rows_ = 0;
  std::vector<T> data_;
};

using SiteField = Array2D<double>;
using LinkField = Array2D<double>;

/// Link orientations. Diagonal links are addressed by their plaquette (i, j):
/// `diag_up` joins (i, j)-(i+1, j+1), `diag_down` joins (i, j+1)-(i+1, j).
enum class LinkDir { x, y, diag_up, diag_down };

/// (cols, rows) of the link array for an orientation on this grid.
std::pair<int, int> link_extent(const Grid2D& grid, LinkDir dir);

/// The two sites joined by link (i, j) of the given orientation
/// (periodic wrap applied).
std::pair<Site, Site> link_ends(const Grid2D& grid, LinkDir dir, int i, int j);

/// Coordinates of the link midpoint, the point "n + d/2". Not wrapped.
Point link_midpoint(const Grid2D& grid, LinkDir dir, int i, int j);

SiteField make_site_field(const Grid2D& grid, double value = 0.0);
LinkField make_link_field(const Grid2D& grid, LinkDir dir, double value = 0.0);

bool matches_site_shape(const Grid2D& grid, const SiteField& f);
bool matches_link_shape(const Grid2D& grid, LinkDir dir, const LinkField& f);

}  // namespace curvlat
