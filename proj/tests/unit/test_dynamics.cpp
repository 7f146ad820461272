#include "qdmc/correlations.hpp"
#include "qdmc/dynamics.hpp"
#include "qdmc/error.hpp"
#include "qdmc/units.hpp"

#include "oracles/liouvillian.hpp"
#include "oracles/random_states.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qdmc;
using L = Level;

namespace {

SystemParams closed_forster() {
  SystemParams p;
  p.g_over_2pi = 0;
  p.gamma_over_2pi = 0;
  p.kappa_over_2pi = 0;
  p.forster_over_2pi = 15;
  return p;
}

Eigen::MatrixXcd projector(const StateVector& v) { return v * v.adjoint(); }

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("density matrix validation") {
  const auto space = make_space(2);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  rho(0, 0) = 1.0;
  CHECK_NOTHROW(DensityMatrix{rho});

  Eigen::MatrixXcd bad = rho;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{bad}, InvalidArgument);
  bad = 1.1 * rho;
  CHECK_THROWS_AS(DensityMatrix{bad}, InvalidArgument);
  bad = rho;
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix{bad}, InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd(2, 3)}, InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix::pure(StateVector::Zero(4)), InvalidArgument);
}

TEST_CASE("initial states") {
  const auto space = make_space(3);
  for (auto s : {InitialState::vacuum, InitialState::exciton_dot1, InitialState::exciton_dot2, InitialState::symmetric}) {
    CHECK(parse_initial_state(to_string(s)) == s);
    CHECK(initial_density(space, s).matrix().trace().real() == doctest::Approx(1.0));
  }
  CHECK(to_string(InitialState::exciton_dot1) == "eg0");
  CHECK(to_string(InitialState::symmetric) == "sym");
  CHECK_THROWS_AS(parse_initial_state("ee0"), UsageError);
  const auto eg0 = space.index(L::e, L::g, 0);
  CHECK(initial_density(space, InitialState::exciton_dot1).matrix()(eg0, eg0).real() == 1.0);
  const auto sym = initial_density(space, InitialState::symmetric).matrix();
  CHECK(sym(eg0, space.index(L::g, L::e, 0)).real() == doctest::Approx(0.5));
}

TEST_CASE("pump profile") {
  PulseParams pulse;
  pulse.p0_over_2pi = 1.0;
  pulse.tau_p = 20;
  const double p0 = angular_from_ghz(1.0);
  const double t0 = pulse.center();
  CHECK(pump_profile(pulse, t0) == doctest::Approx(p0).epsilon(1e-15));
  CHECK(std::abs(pump_profile(pulse, t0 + pulse.fwhm() / 2) / (p0 / 2) - 1.0) < 1e-12);
  CHECK(std::abs(pump_profile(pulse, t0 - pulse.fwhm() / 2) / (p0 / 2) - 1.0) < 1e-12);
  CHECK(pump_profile(pulse, t0 + 10 * pulse.tau_p) < 2e-22 * p0);
  CHECK(pump_profile(pulse, t0 + 1.0) < pump_profile(pulse, t0));
  pulse.p0_over_2pi = 0;
  CHECK(pump_profile(pulse, t0) == 0.0);
}

TEST_CASE("vacuum is stationary") {
  const auto space = make_space(4);
  const auto vac = DensityMatrix::pure(space.basis_state(L::g, L::g, 0));
  SystemParams p;
  p.forster_over_2pi = 15;
  p.delta_over_2pi = 0;
  p.n_max = 4;
  CHECK(lindblad_rhs(space, p, vac, 10.0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cavity decay of a single photon") {
  const auto space = make_space(3);
  SystemParams p;
  p.g_over_2pi = 0;
  p.gamma_over_2pi = 0;
  p.kappa_over_2pi = 5;
  p.n_max = 3;
  const auto rho = DensityMatrix::pure(space.basis_state(L::g, L::g, 1));
  const double kappa = angular_from_ghz(5);
  const Eigen::MatrixXcd expected =
      kappa * (projector(space.basis_state(L::g, L::g, 0)) - projector(space.basis_state(L::g, L::g, 1)));
  CHECK((lindblad_rhs(space, p, rho, 0.0) - expected).cwiseAbs().maxCoeff() < 1e-17);
}

TEST_CASE("rhs is traceless and Hermitian") {
  oracle::Rng rng(3);
  SystemParams p;
  p.forster_over_2pi = 15;
  p.delta_over_2pi = -4;
  p.pc_over_2pi = 1;
  p.pulse.p0_over_2pi = 2;
  p.n_max = 4;
  const auto space = make_space(p.n_max);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho{oracle::random_density(rng, space.dim(), 1 + k % space.dim())};
    const auto d = lindblad_rhs(space, p, rho, p.pulse.center());
    const double scale = d.cwiseAbs().maxCoeff();
    CHECK(std::abs(d.trace()) <= 1e-12 * scale);
    CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale);
  }
}

TEST_CASE("rhs matches the vectorised Liouvillian") {
  oracle::Rng rng(8);
  SystemParams p;
  p.forster_over_2pi = 7;
  p.delta_over_2pi = 3;
  p.pc_over_2pi = 0.7;
  p.gamma_over_2pi = 0.4;
  p.n_max = 3;
  const auto space = make_space(p.n_max);
  const auto lv = oracle::liouvillian(space, p);
  for (int k = 0; k < 5; ++k) {
    const Eigen::MatrixXcd rho = oracle::random_density(rng, space.dim(), space.dim());
    const Eigen::VectorXcd v = lv * Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    const Eigen::MatrixXcd expected = Eigen::Map<const Eigen::MatrixXcd>(v.data(), space.dim(), space.dim());
    CHECK((lindblad_rhs(space, p, DensityMatrix{rho}, 0.0) - expected).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("pulsed exciton pump") {
    SystemParams pulsed = p;
    pulsed.pulse.p0_over_2pi = 1.5;
    const double t = pulsed.pulse.center() + 7.0;
    const Eigen::MatrixXcd rho = oracle::random_density(rng, space.dim(), 3);
    const Eigen::MatrixXcd pump_part =
        lindblad_rhs(space, pulsed, DensityMatrix{rho}, t) - lindblad_rhs(space, p, DensityMatrix{rho}, t);
    Eigen::MatrixXcd sup = oracle::dissipator_superop(sigma_plus(space, 1)) + oracle::dissipator_superop(sigma_plus(space, 2));
    const Eigen::VectorXcd v = pump_profile(pulsed.pulse, t) * sup * Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    const Eigen::MatrixXcd expected = Eigen::Map<const Eigen::MatrixXcd>(v.data(), space.dim(), space.dim());
    CHECK((pump_part - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("rhs rejects a shape mismatch") {
  SystemParams p;
  const DensityMatrix rho = initial_density(make_space(3), InitialState::vacuum);
  CHECK_THROWS_AS(lindblad_rhs(make_space(4), p, rho, 0.0), InvalidArgument);
}

TEST_CASE("sampling grid") {
  CHECK(sample_count({0, 150}, 0.25) == 601);
  CHECK(sample_count({0, 1}, 0.3) == 4);
  CHECK(sample_count({0, 0.9}, 0.3) == 4);
  const auto space = make_space(2);
  SystemParams p;
  p.n_max = 2;
  const auto traj = integrate(space, p, initial_density(space, InitialState::vacuum), {0, 1}, 0.3);
  REQUIRE(traj.size() == 4);
  CHECK(traj.times[3] == doctest::Approx(0.9));
  CHECK(traj.states.size() == 4);
  CHECK(traj.pump_values.size() == 4);
  CHECK(traj.diagnostics.size() == 4);
  CHECK(std::is_sorted(traj.times.begin(), traj.times.end()));
  CHECK_THROWS_AS(integrate(space, p, initial_density(space, InitialState::vacuum), {1, 1}, 0.3), InvalidArgument);
  CHECK_THROWS_AS(integrate(space, p, initial_density(space, InitialState::vacuum), {0, 1}, 0.0), InvalidArgument);
}

TEST_CASE("full Forster swap") {
  const auto p = closed_forster();
  const auto space = make_space(2);
  const double t_swap = std::numbers::pi / (2 * angular_from_ghz(15));
  const auto traj = integrate(space, p, initial_density(space, InitialState::exciton_dot1), {0, t_swap}, t_swap);
  const auto ge0 = space.index(L::g, L::e, 0);
  CHECK(traj.states.back().matrix()(ge0, ge0).real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("decay to the vacuum") {
  SystemParams p;
  p.forster_over_2pi = 15;
  const auto space = make_space(p.n_max);
  const double t = 20 / angular_from_ghz(p.kappa_over_2pi);
  const auto gg0 = space.index(L::g, L::g, 0);
  auto vacuum_population = [&](InitialState s) {
    return integrate(space, p, initial_density(space, s), {0, t}, t).states.back().matrix()(gg0, gg0).real();
  };

  SUBCASE("bright exciton state at the base rates") {
    // Resonant polaritons are half photon and decay at kappa/2.
    p.forster_over_2pi = 0;
    CHECK(vacuum_population(InitialState::symmetric) >= 0.999);
  }

  SUBCASE("single exciton once emission competes with cavity loss") {
    // Half of |e,g,0> is the cavity-dark antisymmetric state, which only gamma empties.
    p.gamma_over_2pi = p.kappa_over_2pi;
    CHECK(vacuum_population(InitialState::exciton_dot1) >= 0.999);
  }

  SUBCASE("the dark component outlives 20/kappa at the base emission rate") {
    const double dark = std::exp(-angular_from_ghz(p.gamma_over_2pi) * t) / 2;
    CHECK(vacuum_population(InitialState::exciton_dot1) == doctest::Approx(1 - dark).epsilon(5e-3));
  }
}

TEST_CASE("closed evolution conserves the excitation number") {
  SystemParams p;
  p.kappa_over_2pi = 0;
  p.gamma_over_2pi = 0;
  p.forster_over_2pi = 15;
  p.delta_over_2pi = 3;
  p.n_max = 4;
  const auto space = make_space(p.n_max);
  const auto n = excitation_number(space);
  StateVector psi = space.basis_state(L::e, L::g, 0) + space.basis_state(L::e, L::e, 1);
  const auto traj = integrate(space, p, DensityMatrix::pure(psi), {0, 150}, 1.0);
  for (const auto& s : traj.states) CHECK(std::abs((s.matrix() * n).trace().real() - 2.0) < 1e-8);
}

TEST_CASE("trajectory matches the matrix exponential") {
  oracle::Rng rng(21);
  SystemParams p;
  p.forster_over_2pi = 12;
  p.delta_over_2pi = -6;
  p.pc_over_2pi = 0.3;
  p.n_max = 4;
  const auto space = make_space(p.n_max);
  const Eigen::MatrixXcd rho0 = oracle::random_density(rng, space.dim(), 2);
  IntegratorOptions opt;
  opt.truncation_guard = false;
  const auto traj = integrate(space, p, DensityMatrix{rho0}, {0, 30}, 30, opt);
  const auto exact = oracle::propagate(oracle::liouvillian(space, p), rho0, 30);
  CHECK((traj.states.back().matrix() - exact).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("truncation guard") {
  SystemParams p;
  p.pc_over_2pi = 4;
  p.n_max = 2;
  const auto space = make_space(p.n_max);
  try {
    integrate(space, p, initial_density(space, InitialState::vacuum), {0, 50}, 1.0);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.top_population() > 1e-5);
    CHECK(std::string(e.what()).find("increase n_max") != std::string::npos);
  }
  IntegratorOptions off;
  off.truncation_guard = false;
  CHECK_NOTHROW(integrate(space, p, initial_density(space, InitialState::vacuum), {0, 50}, 1.0, off));
}

TEST_CASE("sample diagnostics") {
  SystemParams p;
  p.forster_over_2pi = 15;
  const auto space = make_space(p.n_max);
  const auto traj = integrate(space, p, initial_density(space, InitialState::symmetric), {0, 40}, 0.5);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& d = traj.diagnostics[k];
    CHECK(d.trace_error <= 1e-9);
    CHECK(d.hermiticity_drift <= 1e-10);
    CHECK(d.min_eigenvalue >= -1e-8);
    CHECK(d.top_fock <= 1e-5);
    const auto& m = traj.states[k].matrix();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("observables") {
  const auto space = make_space(3);
  const auto vac = observables_at(space, projector(space.basis_state(L::g, L::g, 0)), 0.0);
  CHECK(vac.n_photon == 0.0);
  CHECK(vac.pop_x1 == 0.0);
  CHECK(vac.pop_x2 == 0.0);
  const auto ee2 = observables_at(space, projector(space.basis_state(L::e, L::e, 2)), 1.5);
  CHECK(ee2.t == 1.5);
  CHECK(ee2.n_photon == 2.0);
  CHECK(ee2.pop_x1 == 1.0);
  CHECK(ee2.pop_x2 == 1.0);
  CHECK(ee2.top_fock == 0.0);
  const auto top = observables_at(space, projector(space.basis_state(L::g, L::e, 3)), 0.0);
  CHECK(top.top_fock == 1.0);
  CHECK_THROWS_AS(observables(space, Trajectory{}), InvalidArgument);
}

TEST_CASE("photon number under both pumps is converged in the truncation") {
  SystemParams p;
  p.pc_over_2pi = 1;
  p.pulse.p0_over_2pi = 1;
  p.pulse.tau_p = 20;
  auto photons = [&](int n_max) {
    p.n_max = n_max;
    const auto space = make_space(n_max);
    return observables(space, integrate(space, p, initial_density(space, InitialState::symmetric), {0, 150}, 0.5));
  };
  const auto a = photons(10);
  const auto b = photons(13);
  double max_n = 0.0, max_diff = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    max_n = std::max(max_n, a[k].n_photon);
    max_diff = std::max(max_diff, std::abs(a[k].n_photon - b[k].n_photon));
  }
  CHECK(max_n < 1.5);
  CHECK(max_diff < 1e-4);
}

TEST_CASE("halving the integrator tolerances leaves correlations unchanged") {
  SystemParams p;
  p.forster_over_2pi = 15;
  p.pc_over_2pi = 0.5;
  p.pulse.p0_over_2pi = 1;
  p.n_max = 8;
  const auto space = make_space(p.n_max);
  const auto rho0 = initial_density(space, InitialState::symmetric);
  IntegratorOptions fine;
  fine.rtol /= 2;
  fine.atol /= 2;
  const auto a = evaluate_trajectory(space, integrate(space, p, rho0, {0, 60}, 1.0));
  const auto b = evaluate_trajectory(space, integrate(space, p, rho0, {0, 60}, 1.0, fine));
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(std::abs(a[k].cc - b[k].cc) < 1e-6);
    CHECK(std::abs(a[k].eof - b[k].eof) < 1e-6);
    CHECK(std::abs(a[k].mutual_info - b[k].mutual_info) < 1e-6);
    CHECK(std::abs(a[k].classical - b[k].classical) < 1e-6);
    CHECK(std::abs(a[k].discord - b[k].discord) < 1e-6);
  }
}

}
