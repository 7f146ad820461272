#include "qdmc/error.hpp"
#include "qdmc/hilbert.hpp"
#include "qdmc/model.hpp"
#include "qdmc/units.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace qdmc;
using L = Level;

namespace {

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd e = solver.eigenvalues();
  return {e.data(), e.data() + e.size()};
}

double distance_to_spectrum(double x, const std::vector<double>& spectrum) {
  double d = INFINITY;
  for (double s : spectrum) d = std::min(d, std::abs(x - s));
  return d;
}

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.g_over_2pi = 20 * u(rng);
  p.forster_over_2pi = 20 * u(rng);
  p.delta_over_2pi = 60 * u(rng) - 30;
  p.n_max = 6;
  return p;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("unit conversion") {
  CHECK(angular_from_ghz(1.0) == doctest::Approx(2 * M_PI * 1e-3));
  CHECK(ghz_from_angular(angular_from_ghz(15.0)) == doctest::Approx(15.0));
}

TEST_CASE("strong coupling flag and validation") {
  SystemParams p;
  CHECK(p.strong_coupling());
  p.kappa_over_2pi = 12;
  CHECK_FALSE(p.strong_coupling());
  p = {};
  p.gamma_over_2pi = -1;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.pulse.tau_p = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.n_max = 1;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.delta_over_2pi = -40;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("pulse FWHM") {
  PulseParams pulse;
  pulse.tau_p = 20;
  CHECK(pulse.fwhm() == doctest::Approx(47.0964).epsilon(1e-5));
  CHECK(pulse.center() == 60.0);
  pulse.t0 = 12.5;
  CHECK(pulse.center() == 12.5);
}

TEST_CASE("hamiltonian is zero without couplings") {
  SystemParams p;
  p.g_over_2pi = p.forster_over_2pi = p.delta_over_2pi = 0;
  CHECK(hamiltonian(make_space(3), p).norm() == 0.0);
}

TEST_CASE("Forster matrix element") {
  SystemParams p;
  p.forster_over_2pi = 15;
  const auto space = make_space(5);
  const auto h = hamiltonian(space, p);
  const auto eg0 = space.index(L::e, L::g, 0);
  const auto ge0 = space.index(L::g, L::e, 0);
  CHECK(h(eg0, ge0).real() == doctest::Approx(2 * M_PI * 0.015).epsilon(1e-14));
  CHECK(h(eg0, ge0).imag() == 0.0);
}

TEST_CASE("hamiltonian is Hermitian and conserves excitations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_params(rng);
    const auto space = make_space(p.n_max);
    const auto h = hamiltonian(space, p);
    const auto n = excitation_number(space);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * h.cwiseAbs().maxCoeff());
    CHECK((h * n - n * h).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("manifold_block structure") {
  SystemParams p;
  p.g_over_2pi = 10;
  const double g = angular_from_ghz(10);
  const auto b1 = manifold_block(p, 1);
  REQUIRE(b1.rows() == 3);
  Eigen::Matrix3cd expected;
  expected << 0, g, g, g, 0, 0, g, 0, 0;
  CHECK((b1 - expected).norm() < 1e-15);

  const auto b2 = manifold_block(p, 2);
  REQUIRE(b2.rows() == 4);
  CHECK(b2(0, 1).real() == doctest::Approx(g * std::sqrt(2.0)));
  CHECK(b2(0, 2).real() == doctest::Approx(g * std::sqrt(2.0)));
  CHECK(b2(1, 3).real() == doctest::Approx(g));
  CHECK(b2(2, 3).real() == doctest::Approx(g));

  p.delta_over_2pi = 7;
  const auto b3 = manifold_block(p, 3);
  const double d = angular_from_ghz(7);
  CHECK(b3(0, 0).real() == 0.0);
  CHECK(b3(1, 1).real() == doctest::Approx(d));
  CHECK(b3(2, 2).real() == doctest::Approx(d));
  CHECK(b3(3, 3).real() == doctest::Approx(2 * d));

  CHECK_THROWS_AS(manifold_block(p, 0), InvalidArgument);
}

TEST_CASE("n=1 Tavis-Cummings splitting") {
  SystemParams p;
  const auto e = eigenvalues(manifold_block(p, 1));
  const double s = std::sqrt(2.0) * angular_from_ghz(10);
  CHECK(e[0] == doctest::Approx(-s).epsilon(1e-12));
  CHECK(std::abs(e[1]) < 1e-14);
  CHECK(e[2] == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("manifold spectra are contained in the full spectrum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_params(rng);
    const auto full = eigenvalues(hamiltonian(make_space(p.n_max), p));
    for (int n = 1; n <= 4; ++n)
      for (double e : eigenvalues(manifold_block(p, n))) CHECK(distance_to_spectrum(e, full) < 1e-9);
  }
}

TEST_CASE("ground energy is independent of the Forster coupling") {
  SystemParams p;
  const auto space = make_space(4);
  for (double f : {0.0, 3.0, 15.0}) {
    p.forster_over_2pi = f;
    const auto h = hamiltonian(space, p);
    const auto gg0 = space.index(L::g, L::g, 0);
    CHECK(h.row(gg0).norm() == 0.0);
  }
}

TEST_CASE("spectrum_sweep") {
  SystemParams p;
  const std::vector<double> deltas{-10.0, 0.0, 10.0};

  SUBCASE("rows sorted, dark state at zero detuning") {
    const auto rows = spectrum_sweep(p, 1, deltas);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
      CHECK(row.eigenvalues.size() == 3);
      CHECK(std::is_sorted(row.eigenvalues.begin(), row.eigenvalues.end()));
    }
    CHECK(rows[1].delta_over_2pi == 0.0);
    CHECK(std::abs(rows[1].eigenvalues[1]) < 1e-14);
    CHECK(spectrum_sweep(p, 2, deltas)[0].eigenvalues.size() == 4);
  }

  SUBCASE("large detuning approaches the bare asymptotes") {
    const double big = 200.0;
    const auto rows = spectrum_sweep(p, 1, std::vector<double>{big});
    const double d = angular_from_ghz(big);
    const double g = angular_from_ghz(10);
    const double shift = 2 * g * g / d;
    const auto& e = rows[0].eigenvalues;
    // Bright exciton combination pushed up by 2g^2/D, photon down by the same, dark state stays at D.
    CHECK(e[0] == doctest::Approx(-shift).epsilon(0.05));
    CHECK(e[1] == doctest::Approx(d).epsilon(1e-12));
    CHECK(e[2] - d == doctest::Approx(shift).epsilon(0.05));
  }

  SUBCASE("Forster splitting of the exciton pair") {
    p.forster_over_2pi = 15;
    const auto rows = spectrum_sweep(p, 1, std::vector<double>{0.0});
    // The antisymmetric exciton state decouples from the cavity at energy -Gamma.
    const double gamma = angular_from_ghz(15);
    const auto& e = rows[0].eigenvalues;
    const double closest = *std::min_element(e.begin(), e.end(), [&](double x, double y) {
      return std::abs(x + gamma) < std::abs(y + gamma);
    });
    CHECK(closest == doctest::Approx(-gamma).epsilon(1e-12));
    // The symmetric state and the photon form a 2x2 block [[0, sqrt2 g], [sqrt2 g, Gamma]].
    const double g = angular_from_ghz(10);
    const double r = std::sqrt(gamma * gamma / 4 + 2 * g * g);
    std::vector<double> expected{-gamma, gamma / 2 - r, gamma / 2 + r};
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 3; ++i) CHECK(e[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }

  SUBCASE("invalid manifold") {
    CHECK_THROWS_AS(spectrum_sweep(p, 3, deltas), InvalidArgument);
    CHECK_THROWS_AS(spectrum_sweep(p, 1, std::vector<double>{}), InvalidArgument);
  }
}

}
