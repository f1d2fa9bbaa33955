#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "curvlat/bloch.hpp"
#include "curvlat/dispersion.hpp"
#include "curvlat/errors.hpp"
#include "curvlat/generators.hpp"
#include "curvlat/lanczos.hpp"
#include "curvlat/sinusoidal_band.hpp"

using namespace curvlat;

namespace {

HoppingModel decoupled(const Grid2D& g, const std::vector<double>& v) {
  HoppingModel h = uniform_hopping(g, 1.0);
  for (double& t : h.t_x.values()) t = 0.0;
  for (double& t : h.t_y.values()) t = 0.0;
  h.onsite.values() = v;
  return h;
}

std::vector<BandSample> cosine_samples(double J, double d, double step, int count) {
  std::vector<BandSample> s;
  for (int k = -count; k <= count; ++k) {
    const double p = k * step;
    s.push_back({std::abs(p), -2.0 * J * std::cos(p * d)});
  }
  return s;
}

double dirac_error(double window) {
  const double d = 1.0;
  const BandResult b = bloch_bands(dimerized_chain(1.0, 0.8, d), zone_line(4001, d));
  const DiracFit f = dirac_fit(b, 0, d, window);
  return std::max(std::abs(f.rest_energy - 0.2), std::abs(f.c - std::sqrt(0.8)));
}

double asymptotic_J(double v0) {
  return 4.0 / std::sqrt(std::numbers::pi) * std::pow(v0, 0.75) * std::exp(-2.0 * std::sqrt(v0));
}

}  // namespace

TEST_SUITE("dispersion") {
  TEST_CASE("closed-form values") {
    const double J = 0.7, V0 = 3.0, d = 0.5;
    CHECK(dispersion_flat(J, V0, d, std::vector<double>{0.0, 0.0}) == -4.0 * J + V0);
    const double edge = std::numbers::pi / d;
    CHECK(dispersion_flat(J, V0, d, std::vector<double>{edge, edge}) ==
          doctest::Approx(4.0 * J + V0).epsilon(1e-15));
    CHECK(dispersion_flat(J, V0, d, std::vector<double>{0.0}) == -2.0 * J + V0);
  }

  TEST_CASE("periodic momenta") {
    const std::vector<double> p = periodic_momenta(4, 0.5);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(std::numbers::pi));
  }

  TEST_CASE("effective mass of the analytic cosine band") {
    const EffectiveMassFit f = effective_mass_fit(cosine_samples(1.0, 1.0, 0.01, 4), 1.0, 0.05);
    CHECK(f.mass == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(f.E0 == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(f.samples == 9);
    const EffectiveMassFit g = effective_mass_fit(cosine_samples(2.0, 1.0, 0.01, 4), 1.0, 0.05);
    CHECK(g.mass == doctest::Approx(0.25).epsilon(1e-3));
  }

  TEST_CASE("effective mass scales as 1 / (2 J d^2)") {
    for (double d : {0.5, 1.0, 2.0}) {
      const EffectiveMassFit f = effective_mass_fit(cosine_samples(1.5, d, 0.002 / d, 6), d, 0.05);
      CHECK(f.mass == doctest::Approx(1.0 / (3.0 * d * d)).epsilon(1e-3));
    }
  }

  TEST_CASE("effective mass from the sampled spectrum of a periodic strip") {
    const int n = 200;
    const Grid2D g(n, 3, 1.0, Boundary::periodic);
    const LatticeOperator h = assemble_hamiltonian(uniform_hopping(g, 1.0));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(), Eigen::EigenvaluesOnly);
    // Levels below 3 belong to the p_y = 0 branch and pair up as +-p_x.
    std::vector<BandSample> s;
    for (Eigen::Index m = 0; m < es.eigenvalues().size() && es.eigenvalues()[m] < 3.0; ++m) {
      const int k = static_cast<int>((m + 1) / 2);
      s.push_back({2.0 * std::numbers::pi * k / n, es.eigenvalues()[m]});
    }
    const EffectiveMassFit f = effective_mass_fit(s, 1.0, 0.3);
    CHECK(f.mass == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("degenerate fit windows are rejected") {
    CHECK_THROWS_AS(effective_mass_fit(cosine_samples(1.0, 1.0, 0.1, 10), 1.0, 0.15),
                    PreconditionError);
    std::vector<BandSample> same(6, BandSample{0.01, 1.0});
    CHECK_THROWS_AS(effective_mass_fit(same, 1.0, 0.3), PreconditionError);
  }

  TEST_CASE("least squares line") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    const LineFit f = least_squares_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
  }
}

TEST_SUITE("eigenpairs") {
  TEST_CASE("decoupled sites give the sorted on-site energies") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const Grid2D g(15, 14, 1.0);
    std::vector<double> v(g.size());
    for (double& x : v) x = u(rng);
    const LatticeOperator h = assemble_hamiltonian(decoupled(g, v));
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (EigenMethod method : {EigenMethod::dense, EigenMethod::lanczos, EigenMethod::shift_invert}) {
      EigenOptions o;
      o.method = method;
      const EigenResult r = lowest_eigenpairs(h, 6, o);
      for (int k = 0; k < 6; ++k) CHECK(r.values[k] == doctest::Approx(sorted[k]).epsilon(1e-10));
    }
  }

  TEST_CASE("flat periodic lattice recovers degenerate multiplets") {
    const Grid2D g(72, 72, 1.0, Boundary::periodic);
    const LatticeOperator h = assemble_hamiltonian(uniform_hopping(g, 1.0));
    const std::vector<double> expected = flat_periodic_spectrum(g, 1.0, 4.0);
    const EigenResult r = lowest_eigenpairs(h, 9);
    CHECK(r.method == EigenMethod::shift_invert);
    for (int k = 0; k < 9; ++k) {
      CHECK(std::abs(r.values[k] - expected[static_cast<std::size_t>(k)]) < 1e-9 * h.norm_bound());
    }
  }

  TEST_CASE("property: every returned pair meets the residual bound") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(0.2, 1.5);
    for (int trial = 0; trial < 4; ++trial) {
      const Grid2D g = Grid2D::centered(31, 29, 0.1);
      const LatticeOperator h =
          assemble_hamiltonian(trap_hopping(ConformalFamily(u(rng), u(rng)), g, OnsiteMode::exact));
      EigenOptions o;
      o.method = trial % 2 ? EigenMethod::shift_invert : EigenMethod::lanczos;
      const EigenResult r = lowest_eigenpairs(h, 5, o);
      const Eigen::MatrixXd dense = h.dense();
      for (int k = 0; k < 5; ++k) {
        const Eigen::VectorXd v = r.vectors.col(k);
        CHECK((dense * v - r.values[k] * v).norm() <= 1e-8 * h.norm_bound());
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
      for (int k = 1; k < 5; ++k) CHECK(r.values[k] >= r.values[k - 1]);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
      for (int k = 0; k < 5; ++k) CHECK(std::abs(r.values[k] - es.eigenvalues()[k]) < 1e-8 * h.norm_bound());
    }
  }

  TEST_CASE("requests outside the dimension are rejected") {
    const LatticeOperator h = assemble_hamiltonian(uniform_hopping(Grid2D(3, 3, 1.0), 1.0));
    CHECK_THROWS_AS(lowest_eigenpairs(h, 0), PreconditionError);
    CHECK_THROWS_AS(lowest_eigenpairs(h, 10), PreconditionError);
  }

  TEST_CASE("non-convergence is reported") {
    const Grid2D g(40, 40, 1.0, Boundary::periodic);
    const LatticeOperator h = assemble_hamiltonian(uniform_hopping(g, 1.0));
    EigenOptions o;
    o.method = EigenMethod::lanczos;
    o.initial_basis = 8;
    o.max_basis = 8;
    o.max_runs = 1;
    CHECK_THROWS_AS(lowest_eigenpairs(h, 5, o), NumericalError);
  }
}

TEST_SUITE("bloch bands") {
  TEST_CASE("property: one-site chain matches the dispersion pointwise") {
    for (double d : {0.5, 1.0, 1.7}) {
      const BandResult b = bloch_bands(simple_chain(0.8, d, 0.3), zone_line(101, d));
      for (std::size_t k = 0; k < b.momenta.size(); ++k) {
        const double e = dispersion_flat(0.8, 0.3, d, std::vector<double>{b.momenta[k].x});
        CHECK(std::abs(b.energies(static_cast<Eigen::Index>(k), 0) - e) < 1e-12);
      }
    }
  }

  TEST_CASE("one-site square lattice matches the dispersion") {
    SupercellModel m;
    m.dimension = 2;
    m.basis = 1;
    m.onsite = {4.0};
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
      m.hoppings.push_back({{dx, dy}, 0, 0, -1.0});
    }
    const BandResult b = bloch_bands(m, zone_grid(9, 9, 1.0, 1.0));
    for (std::size_t k = 0; k < b.momenta.size(); ++k) {
      const auto p = b.momenta[k];
      CHECK(std::abs(b.energies(static_cast<Eigen::Index>(k), 0) -
                     dispersion_flat(1.0, 4.0, 1.0, std::vector<double>{p.x, p.y})) < 1e-12);
    }
  }

  TEST_CASE("dimerized chain matches the 2x2 closed form") {
    const double J1 = 1.0, J2 = 0.6, d = 2.0;
    const BandResult b = bloch_bands(dimerized_chain(J1, J2, d), zone_line(51, d));
    for (std::size_t k = 0; k < b.momenta.size(); ++k) {
      const double p = b.momenta[k].x;
      const double e = std::sqrt(J1 * J1 + J2 * J2 + 2.0 * J1 * J2 * std::cos(p * d));
      CHECK(b.energies(static_cast<Eigen::Index>(k), 0) == doctest::Approx(-e).epsilon(1e-12));
      CHECK(b.energies(static_cast<Eigen::Index>(k), 1) == doctest::Approx(e).epsilon(1e-12));
    }
  }

  TEST_CASE("equal dimer couplings close the gap at the zone edge") {
    const BandResult b = bloch_bands(dimerized_chain(1.0, 1.0, 1.0), zone_line(21, 1.0));
    CHECK(b.momenta.back().x == doctest::Approx(std::numbers::pi));
    CHECK(std::abs(b.energies(20, 1) - b.energies(20, 0)) < 1e-12);
    CHECK(b.energies(10, 1) - b.energies(10, 0) == doctest::Approx(4.0));
  }

  TEST_CASE("property: intra-cell positions only change the gauge") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    SupercellModel m = dimerized_chain(1.0, 0.7, 1.0, 0.2);
    const auto momenta = zone_line(33, 1.0);
    const BandResult a = bloch_bands(m, momenta);
    for (int trial = 0; trial < 5; ++trial) {
      m.positions = {{u(rng), 0.0}, {u(rng), 0.0}};
      const BandResult b = bloch_bands(m, momenta);
      CHECK((a.energies - b.energies).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("property: bands are even in p on symmetric grids") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      SupercellModel m;
      m.basis = 3;
      m.onsite = {u(rng), u(rng), u(rng)};
      m.positions = {{0.0, 0.0}, {0.3, 0.0}, {0.7, 0.0}};
      const double t01 = u(rng), t12 = u(rng), t20 = u(rng), t11 = u(rng);
      m.hoppings = {{{0, 0}, 0, 1, t01}, {{0, 0}, 1, 0, t01}, {{0, 0}, 1, 2, t12},
                    {{0, 0}, 2, 1, t12}, {{1, 0}, 2, 0, t20}, {{-1, 0}, 0, 2, t20},
                    {{2, 0}, 1, 1, t11}, {{-2, 0}, 1, 1, t11}};
      const BandResult b = bloch_bands(m, zone_line(41, 1.0));
      for (int k = 0; k < 41; ++k) {
        for (int s = 0; s < 3; ++s) CHECK(b.energies(k, s) == b.energies(40 - k, s));
      }
    }
  }

  TEST_CASE("serial and parallel bands agree") {
    const auto momenta = zone_line(64, 1.0);
    const SupercellModel m = dimerized_chain(1.0, 0.4, 1.0);
    const BandResult a = bloch_bands(m, momenta, Execution::serial);
    const BandResult b = bloch_bands(m, momenta, Execution::parallel);
    CHECK(a.energies == b.energies);
  }

  TEST_CASE("non-Hermitian hopping lists are rejected") {
    SupercellModel m = dimerized_chain(1.0, 0.5, 1.0);
    m.hoppings.pop_back();
    CHECK_THROWS_AS(bloch_bands(m, zone_line(5, 1.0)), PreconditionError);
    SupercellModel n = dimerized_chain(1.0, 0.5, 1.0);
    n.hoppings.back().amplitude = -0.4;
    CHECK_THROWS_AS(bloch_bands(n, zone_line(5, 1.0)), PreconditionError);
  }
}

TEST_SUITE("dirac fit") {
  TEST_CASE("dimerized chain J1 = 1, J2 = 0.8") {
    const BandResult b = bloch_bands(dimerized_chain(1.0, 0.8, 1.0), zone_line(401, 1.0));
    const DiracFit f = dirac_fit(b, 0, 1.0, 0.2);
    CHECK(f.rest_energy == doctest::Approx(0.2).epsilon(0.01));
    CHECK(f.c == doctest::Approx(std::sqrt(0.8)).epsilon(0.01));
    CHECK(std::abs(std::abs(f.p_star) - std::numbers::pi) < 1e-12);
    CHECK(f.max_relative_error < 0.01);
  }

  TEST_CASE("equal couplings are massless") {
    const BandResult b = bloch_bands(dimerized_chain(1.0, 1.0, 1.0), zone_line(401, 1.0));
    const DiracFit f = dirac_fit(b, 0, 1.0, 0.1);
    CHECK(f.rest_energy < 1e-3);
    CHECK(f.c == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("window without a gap minimum is rejected") {
    const BandResult b = bloch_bands(dimerized_chain(1.0, 0.8, 1.0), zone_line(401, 1.0));
    CHECK_THROWS_AS(dirac_fit(b, 1, 1.0, 0.2), PreconditionError);
    CHECK_THROWS_AS(dirac_fit(b, 0, 1.0, 0.001), PreconditionError);
  }

  TEST_CASE("property: error shrinks at least quadratically with the window") {
    const double e1 = dirac_error(0.4);
    const double e2 = dirac_error(0.2);
    const double e3 = dirac_error(0.1);
    CHECK(e1 / e2 >= 3.6);
    CHECK(e2 / e3 >= 3.6);
  }
}

TEST_SUITE("sinusoidal band") {
  TEST_CASE("free particle folds into [0, E_R]") {
    const SinusoidalBand b = sinusoidal_band(0.0);
    CHECK(std::abs(b.E_min) < 1e-12);
    CHECK(b.E_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.J == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("V0 = 10 against a 1024-mode expansion and the asymptotic law") {
    const SinusoidalBand b = sinusoidal_band(10.0);
    const SinusoidalBand ref = sinusoidal_band_fixed(10.0, 0, 1024);
    CHECK(std::abs(b.J - ref.J) < 1e-8);
    CHECK(std::abs(b.J / asymptotic_J(10.0) - 1.0) < 0.3);
  }

  TEST_CASE("property: J decreases strictly with depth") {
    std::vector<double> v0;
    for (double v = 0.0; v <= 40.0; v += 1.25) v0.push_back(v);
    const std::vector<SinusoidalBand> scan = tunneling_scan(v0);
    for (std::size_t k = 1; k < scan.size(); ++k) CHECK(scan[k].J < scan[k - 1].J);
  }

  TEST_CASE("log slope follows the asymptotic law over the deep range") {
    std::vector<double> v0, sqrt_v0, ln_asym;
    for (int k = 0; k <= 15; ++k) {
      v0.push_back(15.0 + k);
      sqrt_v0.push_back(std::sqrt(v0.back()));
      ln_asym.push_back(std::log(asymptotic_J(v0.back())));
    }
    const double slope = tunneling_log_slope(tunneling_scan(v0));
    const double asym = least_squares_line(sqrt_v0, ln_asym).slope;
    CHECK(slope == doctest::Approx(asym).epsilon(0.02));
  }

  TEST_CASE("higher bands sit above the lowest one") {
    const SinusoidalBand b0 = sinusoidal_band(5.0, 0);
    const SinusoidalBand b1 = sinusoidal_band(5.0, 1);
    CHECK(b1.E_min > b0.E_max);
    CHECK(b1.J > b0.J);
  }

  TEST_CASE("negative depth is rejected") {
    CHECK_THROWS_AS(sinusoidal_band(-1.0), PreconditionError);
    CHECK_THROWS_AS(sinusoidal_band(1.0, 0, 8), PreconditionError);
    CHECK_THROWS_AS(sinusoidal_band(200.0, 0, 64, 64), NumericalError);
  }
}
