#include "qdmc/model.hpp"

#include "qdmc/error.hpp"
#include "qdmc/units.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace qdmc {

double PulseParams::fwhm() const { return 2.0 * std::sqrt(2.0 * std::log(2.0)) * tau_p; }

void SystemParams::validate() const {
  auto require_nonnegative = [](double v, const char* name) {
    if (!(v >= 0.0)) throw InvalidArgument(std::string(name) + " must be >= 0");
  };
  require_nonnegative(g_over_2pi, "g_over_2pi");
  require_nonnegative(gamma_over_2pi, "gamma_over_2pi");
  require_nonnegative(kappa_over_2pi, "kappa_over_2pi");
  require_nonnegative(forster_over_2pi, "forster_over_2pi");
  require_nonnegative(pc_over_2pi, "pc_over_2pi");
  require_nonnegative(pulse.p0_over_2pi, "p0_over_2pi");
  if (!std::isfinite(delta_over_2pi)) throw InvalidArgument("delta_over_2pi must be finite");
  if (!(pulse.tau_p > 0.0)) throw InvalidArgument("tau_p must be > 0");
  if (pulse.t0 && !std::isfinite(*pulse.t0)) throw InvalidArgument("t0 must be finite");
  if (n_max < 2) throw InvalidArgument("invalid truncation: n_max must be >= 2");
}

OperatorMatrix hamiltonian(const HilbertSpace& space, const SystemParams& params) {
  const double delta = angular_from_ghz(params.delta_over_2pi);
  const double g = angular_from_ghz(params.g_over_2pi);
  const double forster = angular_from_ghz(params.forster_over_2pi);

  const OperatorMatrix a = annihilation(space);
  const OperatorMatrix sm1 = sigma_minus(space, 1);
  const OperatorMatrix sm2 = sigma_minus(space, 2);
  const OperatorMatrix sp1 = sm1.adjoint();
  const OperatorMatrix sp2 = sm2.adjoint();

  OperatorMatrix h = delta * (sp1 * sm1 + sp2 * sm2);
  h += g * (a.adjoint() * (sm1 + sm2) + a * (sp1 + sp2));
  h += forster * (sp1 * sm2 + sm1 * sp2);
  return h;
}

Eigen::MatrixXcd manifold_block(const SystemParams& params, int n) {
  if (n < 1) throw InvalidArgument("invalid manifold: n must be >= 1, got " + std::to_string(n));
  const double delta = angular_from_ghz(params.delta_over_2pi);
  const double g = angular_from_ghz(params.g_over_2pi);
  const double forster = angular_from_ghz(params.forster_over_2pi);
  const double gn = g * std::sqrt(static_cast<double>(n));
  const double gn1 = g * std::sqrt(static_cast<double>(n - 1));

  const Index size = n == 1 ? 3 : 4;
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(size, size);
  block(0, 1) = block(1, 0) = gn;
  block(0, 2) = block(2, 0) = gn;
  block(1, 1) = block(2, 2) = delta;
  block(1, 2) = block(2, 1) = forster;
  if (size == 4) {
    block(1, 3) = block(3, 1) = gn1;
    block(2, 3) = block(3, 2) = gn1;
    block(3, 3) = 2.0 * delta;
  }
  return block;
}

std::vector<SpectrumRow> spectrum_sweep(const SystemParams& params, int n,
                                        std::span<const double> deltas_over_2pi) {
  if (n != 1 && n != 2) throw InvalidArgument("spectrum sweep supports manifolds 1 and 2");
  if (deltas_over_2pi.empty()) throw InvalidArgument("detuning range is empty");

  std::vector<SpectrumRow> rows;
  rows.reserve(deltas_over_2pi.size());
  SystemParams point = params;
  for (double delta : deltas_over_2pi) {
    point.delta_over_2pi = delta;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(manifold_block(point, n),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigensolver did not converge for manifold " + std::to_string(n) +
                           " at delta/2pi = " + std::to_string(delta) + " GHz");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    rows.push_back({delta, std::vector<double>(values.data(), values.data() + values.size())});
  }
  return rows;
}

}  // namespace qdmc
