#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "curvlat/conformal.hpp"
#include "curvlat/curvature.hpp"
#include "curvlat/errors.hpp"
#include "curvlat/geodesic.hpp"
#include "support.hpp"

using namespace curvlat;

namespace {

// sigma-Laplacian oracle: K = -Omega_inv... evaluated by central
// differences of sigma = -ln(Omega)/2 on a fine stencil.
double fd_curvature(const ConformalFamily& f, double x, double y, double h = 1e-3) {
  auto sigma = [&](double px, double py) { return -0.5 * std::log(f.omega(std::hypot(px, py))); };
  const double lap = (sigma(x + h, y) + sigma(x - h, y) + sigma(x, y + h) + sigma(x, y - h) -
                      4.0 * sigma(x, y)) /
                     (h * h);
  return -std::exp(-2.0 * sigma(x, y)) * lap;
}

double interior_max_error(const SiteField& k, const Grid2D& g, double r_max, auto exact) {
  double err = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double r = std::hypot(g.x(i), g.y(j));
      if (r >= r_max || std::isnan(k(i, j))) continue;
      err = std::max(err, std::abs(k(i, j) - exact(g.x(i), g.y(j))));
    }
  }
  return err;
}

// 90-degree rotation of site labels: (i, j) -> (n - 1 - j, i).
DiagonalMetric rotate(const DiagonalMetric& m) {
  const Grid2D& g = m.grid;
  const int n = g.nx();
  LinkField gx = make_link_field(g, LinkDir::x);
  LinkField gy = make_link_field(g, LinkDir::y);
  SiteField det = make_site_field(g);
  // A y-link (i, j)-(i, j+1) becomes the x-link between (n-2-j, i) and (n-1-j, i).
  for (int j = 0; j < n - 1; ++j) {
    for (int i = 0; i < n; ++i) gx(n - 2 - j, i) = m.gyy_inv(i, j);
  }
  // An x-link (i, j)-(i+1, j) becomes the y-link between (n-1-j, i) and (n-1-j, i+1).
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n - 1; ++i) gy(n - 1 - j, i) = m.gxx_inv(i, j);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) det(n - 1 - j, i) = m.det_g(i, j);
  }
  return {g, gx, gy, det};
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("construction preconditions") {
    CHECK_THROWS_AS(Grid2D(1, 5, 1.0), PreconditionError);
    CHECK_THROWS_AS(Grid2D(5, 5, 0.0), PreconditionError);
    CHECK_THROWS_AS(Grid2D(5, 5, -1.0), PreconditionError);
    CHECK_THROWS_AS(Grid2D(2, 5, 1.0, Boundary::periodic), PreconditionError);
    CHECK_NOTHROW(Grid2D(2, 2, 1.0));
    CHECK_NOTHROW(Grid2D(3, 3, 1.0, Boundary::periodic));
  }

  TEST_CASE("centered grid puts the middle site at the origin") {
    const Grid2D g = Grid2D::centered(5, 7, 0.5);
    CHECK(g.x(2) == 0.0);
    CHECK(g.y(3) == 0.0);
    CHECK(g.nearest_site({0.0, 0.0}) == Site{2, 3});
    CHECK_THROWS_AS(g.nearest_site({10.0, 0.0}), PreconditionError);
  }

  TEST_CASE("link shapes follow the boundary condition") {
    const Grid2D open(4, 3, 1.0);
    CHECK(link_extent(open, LinkDir::x) == std::pair{3, 3});
    CHECK(link_extent(open, LinkDir::y) == std::pair{4, 2});
    CHECK(link_extent(open, LinkDir::diag_up) == std::pair{3, 2});
    const Grid2D per(4, 3, 1.0, Boundary::periodic);
    CHECK(link_extent(per, LinkDir::x) == std::pair{4, 3});
    CHECK(link_extent(per, LinkDir::diag_down) == std::pair{4, 3});
    const auto [a, b] = link_ends(per, LinkDir::x, 3, 1);
    CHECK(a == Site{3, 1});
    CHECK(b == Site{0, 1});
    const auto [c, d] = link_ends(open, LinkDir::diag_down, 0, 0);
    CHECK(c == Site{0, 1});
    CHECK(d == Site{1, 0});
  }

  TEST_CASE("link midpoints are the points n + d/2") {
    const Grid2D g(4, 4, 1.0);
    const Point p = link_midpoint(g, LinkDir::x, 0, 0);
    CHECK(p.x == 0.5);
    CHECK(p.y == 0.0);
    const Point q = link_midpoint(g, LinkDir::diag_up, 1, 2);
    CHECK(q.x == 1.5);
    CHECK(q.y == 2.5);
  }
}

TEST_SUITE("metric") {
  TEST_CASE("flat metric") {
    const Grid2D g(6, 5, 0.25);
    const DiagonalMetric m = DiagonalMetric::flat(g);
    for (double v : m.gxx_inv.values()) CHECK(v == 1.0);
    for (double v : m.gyy_inv.values()) CHECK(v == 1.0);
    for (double v : m.det_g.values()) CHECK(v == 1.0);
  }

  TEST_CASE("validation rejects non-positive entries and bad shapes") {
    const Grid2D g(5, 5, 1.0);
    LinkField gx = make_link_field(g, LinkDir::x, 1.0);
    gx(2, 2) = 0.0;
    CHECK_THROWS_AS(DiagonalMetric::from_links(g, gx, make_link_field(g, LinkDir::y, 1.0)),
                    PreconditionError);
    CHECK_THROWS_AS(DiagonalMetric::from_links(g, make_link_field(g, LinkDir::y, 1.0),
                                               make_link_field(g, LinkDir::y, 1.0)),
                    PreconditionError);
  }

  TEST_CASE("site determinant is the geometric mean of adjacent link values") {
    const Grid2D g(5, 5, 1.0);
    std::mt19937_64 rng(7);
    const DiagonalMetric m = testing_support::random_metric(g, rng);
    // Interior site: det = 1 / sqrt(gx_left gx_right gy_down gy_up).
    const int i = 2, j = 2;
    const double expected =
        1.0 / std::sqrt(m.gxx_inv(i - 1, j) * m.gxx_inv(i, j) * m.gyy_inv(i, j - 1) *
                        m.gyy_inv(i, j));
    CHECK(m.det_g(i, j) == doctest::Approx(expected).epsilon(1e-14));
  }

  TEST_CASE("edge site values extrapolate log-linearly") {
    const Grid2D g(5, 5, 1.0);
    LinkField gx = make_link_field(g, LinkDir::x);
    for (int j = 0; j < 5; ++j) {
      for (int i = 0; i < 4; ++i) gx(i, j) = std::exp(0.1 * (i + 0.5));
    }
    const SiteField s = site_inverse_component(g, gx, LinkDir::x);
    // ln g is linear, so extrapolation is exact.
    CHECK(s(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s(4, 3) == doctest::Approx(std::exp(0.4)).epsilon(1e-14));
  }
}

TEST_SUITE("conformal family") {
  TEST_CASE("family_to_metric examples") {
    SUBCASE("a = b = 0 is flat") {
      const DiagonalMetric m = family_to_metric(ConformalFamily(0.0, 0.0), Grid2D::centered(9, 9, 0.1));
      for (double v : m.gxx_inv.values()) CHECK(v == 1.0);
      for (double v : m.det_g.values()) CHECK(v == 1.0);
    }
    SUBCASE("a = 1, b = 0: link (0,0)-(1,0) with origin at 0") {
      const DiagonalMetric m = family_to_metric(ConformalFamily(1.0, 0.0), Grid2D(4, 4, 1.0));
      CHECK(m.gxx_inv(0, 0) == 1.25);
    }
    SUBCASE("a = 2, b = 1: det_g at the origin site") {
      const Grid2D g = Grid2D::centered(9, 9, 0.1);
      const DiagonalMetric m = family_to_metric(ConformalFamily(2.0, 1.0), g);
      CHECK(m.det_g(4, 4) == 1.0);
    }
  }

  TEST_CASE("degenerate family is rejected naming the radius") {
    const Grid2D g = Grid2D::centered(41, 41, 0.05);  // reaches r = sqrt(2)
    try {
      family_to_metric(ConformalFamily(-2.0, 1.0), g);
      FAIL("expected a PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("r = 1") != std::string::npos);
    }
    CHECK(ConformalFamily(-2.0, 1.0).degenerate_radius(2.0).value() == doctest::Approx(1.0));
    CHECK_FALSE(ConformalFamily(2.0, 1.0).degenerate_radius(100.0).has_value());
  }

  TEST_CASE("closed-form curvature") {
    CHECK(family_curvature(ConformalFamily(1.0, 0.0), 1.0) == doctest::Approx(1.0));
    CHECK(family_curvature(ConformalFamily(0.0, 0.0), 0.7) == 0.0);
    for (double r : {0.0, 0.7, 1.3}) {
      CHECK(family_curvature(ConformalFamily(2.0, 1.0), r) == doctest::Approx(4.0).epsilon(1e-14));
    }
    CHECK(family_curvature(ConformalFamily(-2.0, 1.0), 0.4) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK_THROWS_AS(family_curvature(ConformalFamily(-2.0, 1.0), 1.0), PreconditionError);
  }

  TEST_CASE("closed form agrees with the finite-difference sigma oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1.0, 2.0);
    std::uniform_real_distribution<double> pos(0.0, 0.6);
    for (int trial = 0; trial < 50; ++trial) {
      const ConformalFamily f(coef(rng), std::abs(coef(rng)));
      const double x = pos(rng);
      const double y = pos(rng);
      if (f.degenerate_radius(1.0)) continue;
      const double r = std::hypot(x, y);
      CHECK(family_curvature(f, r) == doctest::Approx(fd_curvature(f, x, y)).epsilon(1e-5));
    }
  }

  TEST_CASE("radial proper distance") {
    CHECK(radial_proper_distance(ConformalFamily(0.0, 0.0), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(radial_proper_distance(ConformalFamily(2.0, 1.0), 1.0) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(radial_proper_distance(ConformalFamily(-2.0, 1.0), 0.5) ==
          doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(radial_proper_distance(ConformalFamily(-2.0, 1.0), 1.2), PreconditionError);
    CHECK_THROWS_AS(radial_proper_distance(ConformalFamily(1.0, 0.0), -1.0), PreconditionError);
  }

  TEST_CASE("radial distance grows without bound towards the hyperbolic rim") {
    const ConformalFamily f(-2.0, 1.0);
    double prev = 0.0;
    for (double r : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
      const double d = radial_proper_distance(f, r);
      CHECK(d > prev);
      prev = d;
    }
    CHECK(prev > 4.9);  // artanh(0.9999) = 4.95
  }

  TEST_CASE("property: radial distance is strictly increasing") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const ConformalFamily f(coef(rng), coef(rng));
      double prev = -1.0;
      for (double r = 0.0; r <= 2.0; r += 0.125) {
        const double d = radial_proper_distance(f, r);
        CHECK(d > prev);
        prev = d;
      }
    }
  }
}

TEST_SUITE("curvature") {
  TEST_CASE("flat metric has zero curvature") {
    const Grid2D g = Grid2D::centered(9, 9, 0.1);
    const SiteField k = curvature_map(DiagonalMetric::flat(g));
    for (int j = 1; j < 8; ++j) {
      for (int i = 1; i < 8; ++i) CHECK(std::abs(k(i, j)) < 1e-12);
    }
  }

  TEST_CASE("one-cell margin is not computed on open grids") {
    const Grid2D g = Grid2D::centered(7, 7, 0.1);
    const SiteField k = curvature_map(family_to_metric(ConformalFamily(1.0, 0.0), g));
    for (int i = 0; i < 7; ++i) {
      CHECK(std::isnan(k(i, 0)));
      CHECK(std::isnan(k(i, 6)));
      CHECK(std::isnan(k(0, i)));
      CHECK(std::isnan(k(6, i)));
    }
    CHECK(std::isfinite(k(3, 3)));
  }

  TEST_CASE("grid too small") {
    CHECK_THROWS_AS(curvature_map(DiagonalMetric::flat(Grid2D(4, 9, 1.0))), PreconditionError);
  }

  TEST_CASE("constant curvature family at l = 1/64 within |r| < 1") {
    const Grid2D g = Grid2D::centered(129, 129, 1.0 / 64.0);
    const ConformalFamily f(2.0, 1.0);
    const SiteField k = curvature_map(family_to_metric(f, g));
    CHECK(interior_max_error(k, g, 1.0, [](double, double) { return 4.0; }) < 1e-2);
  }

  TEST_CASE("stereographic unit sphere g^xx = (1 + r^2/4)^2 has K = 1") {
    const Grid2D g = Grid2D::centered(129, 129, 1.0 / 32.0);
    const SiteField k = curvature_map(family_to_metric(ConformalFamily(0.5, 1.0 / 16.0), g));
    CHECK(interior_max_error(k, g, 1.8, [](double, double) { return 1.0; }) < 1e-2);
  }

  TEST_CASE("property: second-order convergence to the closed form") {
    const ConformalFamily f(1.0, 0.5);
    auto err_at = [&](double l) {
      const int n = 2 * static_cast<int>(std::lround(1.0 / l)) + 1;
      const Grid2D g = Grid2D::centered(n, n, l);
      const SiteField k = curvature_map(family_to_metric(f, g));
      return interior_max_error(k, g, 0.8, [&](double x, double y) {
        return family_curvature(f, std::hypot(x, y));
      });
    };
    const double e1 = err_at(1.0 / 16.0);
    const double e2 = err_at(1.0 / 32.0);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("property: curvature is invariant under 90-degree relabelling") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const Grid2D g(17, 17, 0.1);
      const DiagonalMetric m = testing_support::random_metric(g, rng);
      const SiteField k = curvature_map(m);
      const SiteField kr = curvature_map(rotate(m));
      for (int j = 1; j < 16; ++j) {
        for (int i = 1; i < 16; ++i) CHECK(kr(16 - j, i) == k(i, j));
      }
    }
  }

  TEST_CASE("serial and parallel curvature agree bit-for-bit") {
    std::mt19937_64 rng(8);
    const Grid2D g(40, 33, 0.05);
    const DiagonalMetric m = testing_support::random_metric(g, rng);
    const SiteField a = curvature_map(m, Execution::serial);
    const SiteField b = curvature_map(m, Execution::parallel);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double x = a.values()[k];
      const double y = b.values()[k];
      CHECK(((std::isnan(x) && std::isnan(y)) || x == y));
    }
  }

  TEST_CASE("periodic grids compute every site") {
    const Grid2D g(8, 8, 1.0, Boundary::periodic);
    const SiteField k = curvature_map(DiagonalMetric::flat(g));
    for (double v : k.values()) CHECK(v == 0.0);
  }
}

TEST_SUITE("geodesics") {
  TEST_CASE("flat metric: distance to (3,4) l is 5 l within first-order error") {
    const double l = 0.1;
    const Grid2D g(20, 20, l);
    const SiteField d = geodesic_distance_map(DiagonalMetric::flat(g), {0, 0});
    CHECK(d(0, 0) == 0.0);
    CHECK(std::abs(d(3, 4) - 5.0 * l) < l);
    CHECK(d(3, 4) >= 5.0 * l);
    CHECK(d(7, 0) == doctest::Approx(0.7).epsilon(1e-14));
  }

  TEST_CASE("family distances on the axes") {
    const double l = 1.0 / 128.0;
    const Grid2D g = Grid2D::centered(307, 307, l);
    const SiteField d = geodesic_distance_map(family_to_metric(ConformalFamily(2.0, 1.0), g),
                                              g.nearest_site({0.0, 0.0}));
    const Site s = g.nearest_site({1.0, 0.0});
    CHECK(d(s.i, s.j) == doctest::Approx(std::numbers::pi / 4).epsilon(0.01));
    const Site t = g.nearest_site({0.0, -0.5});
    CHECK(d(t.i, t.j) == doctest::Approx(std::atan(0.5)).epsilon(0.01));
  }

  TEST_CASE("source outside the grid") {
    const Grid2D g(5, 5, 1.0);
    CHECK_THROWS_AS(geodesic_distance_map(DiagonalMetric::flat(g), {5, 0}), PreconditionError);
    CHECK_THROWS_AS(graph_distance_map(DiagonalMetric::flat(g), {-1, 0}), PreconditionError);
  }

  TEST_CASE("graph distance carries the Manhattan bias") {
    const Grid2D g(11, 11, 1.0);
    const SiteField d = graph_distance_map(DiagonalMetric::flat(g), {0, 0});
    CHECK(d(10, 10) == doctest::Approx(20.0));
    const SiteField f = geodesic_distance_map(DiagonalMetric::flat(g), {0, 0});
    CHECK(f(10, 10) < d(10, 10));
    CHECK(f(10, 10) > std::hypot(10.0, 10.0) - 1e-12);
  }

  TEST_CASE("property: distances are non-negative, zero only at the source, and triangle-consistent") {
    std::mt19937_64 rng(21);
    const Grid2D g(24, 24, 0.1);
    const DiagonalMetric m = testing_support::random_metric(g, rng);
    std::uniform_int_distribution<int> pick(0, 23);
    for (int trial = 0; trial < 10; ++trial) {
      const Site a{pick(rng), pick(rng)};
      const Site b{pick(rng), pick(rng)};
      const SiteField da = geodesic_distance_map(m, a);
      const SiteField db = geodesic_distance_map(m, b);
      for (std::size_t k = 0; k < da.size(); ++k) {
        CHECK(da.values()[k] >= 0.0);
        if (g.site(k) != a) CHECK(da.values()[k] > 0.0);
      }
      const Site c{pick(rng), pick(rng)};
      // d(a, c) <= d(a, b) + d(b, c), up to first-order discretisation error.
      CHECK(da(c.i, c.j) <= da(b.i, b.j) + db(c.i, c.j) + 0.5);
    }
  }

  TEST_CASE("property: fast marching matches the radial quadrature on the axes") {
    for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{2.0, 1.0}}) {
      const ConformalFamily f(a, b);
      const Grid2D g = Grid2D::centered(129, 129, 1.0 / 64.0);
      const SiteField d = geodesic_distance_map(family_to_metric(f, g), g.nearest_site({0, 0}));
      for (double r : {0.25, 0.5, 0.75, 1.0}) {
        const Site s = g.nearest_site({r, 0.0});
        CHECK(d(s.i, s.j) == doctest::Approx(radial_proper_distance(f, r)).epsilon(0.01));
      }
    }
  }

  TEST_CASE("property: distances are invariant under 90-degree relabelling") {
    const Grid2D g = Grid2D::centered(33, 33, 0.05);
    std::mt19937_64 rng(4);
    const DiagonalMetric m = testing_support::random_metric(g, rng);
    const SiteField d = geodesic_distance_map(m, {16, 16});
    const SiteField dr = geodesic_distance_map(rotate(m), {16, 16});
    for (int j = 0; j < 33; ++j) {
      for (int i = 0; i < 33; ++i) CHECK(dr(32 - j, i) == d(i, j));
    }
  }

  TEST_CASE("property: first-order convergence on the flat diagonal") {
    auto err = [](int n) {
      const double l = 1.0 / n;
      const Grid2D g(n + 1, n + 1, l);
      const SiteField d = geodesic_distance_map(DiagonalMetric::flat(g), {0, 0});
      return std::abs(d(n, n) - std::sqrt(2.0));
    };
    const double e1 = err(32);
    const double e2 = err(64);
    CHECK(e2 < e1);
    CHECK(e1 / e2 > 1.3);
  }
}
