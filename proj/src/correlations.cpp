#include "qdmc/correlations.hpp"

#include "qdmc/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <string>

namespace qdmc {

namespace {

constexpr double kEigenvalueFloor = 1e-14;
constexpr double kDiscordSlack = 1e-9;

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues();
}

void check_eigenvalue(double lambda) {
  if (lambda < -kNegativeEigenvalueSlack) {
    throw NumericalError("density matrix eigenvalue " + std::to_string(lambda) + " is negative beyond tolerance");
  }
}

Eigen::Matrix4d spin_flip() {
  Eigen::Matrix4d y;
  y << 0, 0, 0, -1,
       0, 0, 1, 0,
       0, 1, 0, 0,
      -1, 0, 0, 0;
  return y;
}

MeasurementAngles canonical_angles(double theta, double phi) {
  const Eigen::Vector3d n = bloch_direction(theta, phi);
  double azimuth = std::atan2(n.y(), n.x());
  if (azimuth < 0.0) azimuth += 2.0 * std::numbers::pi;
  return {std::acos(std::clamp(n.z(), -1.0, 1.0)), azimuth};
}

ClassicalCorrelation optimise_measurement(const TwoQubitState& rho, double entropy_a,
                                          const MeasurementSearch& search) {
  const BlochData data = bloch_data(rho.matrix());
  const GridPoint coarse = search.parallel_grid ? omp::scan_measurement_grid(data, search.grid)
                                                : serial::scan_measurement_grid(data, search.grid);
  const double step_theta = std::numbers::pi / std::max(search.grid.theta_points - 1, 1);
  const double step_phi = 2.0 * std::numbers::pi / std::max(search.grid.phi_points, 1);

  RefineResult best = refine_measurement(data, coarse.theta, coarse.phi, step_theta, step_phi, search.ftol,
                                         search.max_iterations);
  if (search.warm_start) {
    const RefineResult warm = refine_measurement(data, search.warm_start->theta, search.warm_start->phi,
                                                 step_theta, step_phi, search.ftol, search.max_iterations);
    if (warm.value < best.value) best = warm;
  }
  return {std::max(0.0, entropy_a - best.value), canonical_angles(best.theta, best.phi)};
}

}  // namespace

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd& rho, const DensityTolerances& tol) : rho_(rho) {
  const double drift = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (drift > tol.hermiticity) throw InvalidArgument("two-qubit state is not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > tol.trace) throw InvalidArgument("two-qubit state trace differs from 1");
  const Eigen::Matrix4cd sym = 0.5 * (rho_ + rho_.adjoint());
  if (hermitian_eigenvalues(sym).minCoeff() < tol.min_eigenvalue) {
    throw InvalidArgument("two-qubit state is not positive semidefinite");
  }
}

TwoQubitState TwoQubitState::pure(const Eigen::Vector4cd& psi) {
  const Eigen::Vector4cd unit = psi.normalized();
  return trusted(unit * unit.adjoint());
}

TwoQubitState reduce_to_dots(const HilbertSpace& space, const DensityMatrix& rho) {
  return reduce_to_dots(space, rho.matrix());
}

TwoQubitState reduce_to_dots(const HilbertSpace& space, const Eigen::MatrixXcd& rho) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw InvalidArgument("shape mismatch in reduce_to_dots");
  }
  const Index levels = space.fock_levels();
  Eigen::Matrix4cd out;
  // Dot pair (e1, e2) occupies the contiguous block starting at levels*(2*e1 + e2);
  // the cavity trace is the trace of each levels x levels sub-block.
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      out(row, col) = rho.block(levels * row, levels * col, levels, levels).trace();
    }
  }
  return TwoQubitState::trusted(out);
}

double concurrence(const TwoQubitState& state) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(state.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge in concurrence");
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    const double mu = solver.eigenvalues()(i);
    check_eigenvalue(mu);
    roots(i) = mu > kEigenvalueFloor ? std::sqrt(mu) : 0.0;
  }
  const Eigen::Matrix4cd sqrt_rho = solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
  const Eigen::Matrix4cd m = sqrt_rho * spin_flip() * sqrt_rho.conjugate();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
  const Eigen::Vector4d& l = svd.singularValues();  // descending
  return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

double binary_entropy(double x) {
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

double eof(double cc) {
  constexpr double slack = 1e-12;
  if (cc < -slack || cc > 1.0 + slack || std::isnan(cc)) {
    throw InvalidArgument("concurrence " + std::to_string(cc) + " outside [0, 1]");
  }
  cc = std::clamp(cc, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - cc * cc)));
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho)) {
    check_eigenvalue(lambda);
    if (lambda > kEigenvalueFloor) s -= lambda * std::log2(lambda);
  }
  return s;
}

Eigen::Matrix2cd reduced_a(const TwoQubitState& state) {
  const Eigen::Matrix4cd& rho = state.matrix();
  Eigen::Matrix2cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return out;
}

Eigen::Matrix2cd reduced_b(const TwoQubitState& state) {
  const Eigen::Matrix4cd& rho = state.matrix();
  Eigen::Matrix2cd out;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) out(k, l) = rho(k, l) + rho(2 + k, 2 + l);
  return out;
}

double mutual_information(const TwoQubitState& rho) {
  const double value = von_neumann_entropy(reduced_a(rho)) + von_neumann_entropy(reduced_b(rho)) -
                       von_neumann_entropy(rho.matrix());
  return std::max(0.0, value);
}

ClassicalCorrelation classical_correlation(const TwoQubitState& rho, const MeasurementSearch& search) {
  return optimise_measurement(rho, von_neumann_entropy(reduced_a(rho)), search);
}

double discord(const TwoQubitState& rho, const MeasurementSearch& search) {
  return correlate(rho, 0.0, search).discord;
}

CorrelationRecord correlate(const TwoQubitState& rho, double t, const MeasurementSearch& search) {
  CorrelationRecord r;
  r.t = t;
  r.cc = concurrence(rho);
  r.eof = eof(r.cc);

  const double s_a = von_neumann_entropy(reduced_a(rho));
  const double s_b = von_neumann_entropy(reduced_b(rho));
  const double s_ab = von_neumann_entropy(rho.matrix());
  r.mutual_info = std::max(0.0, s_a + s_b - s_ab);

  const ClassicalCorrelation c = optimise_measurement(rho, s_a, search);
  r.classical = c.value;
  r.argmax_angles = c.angles;
  r.discord = r.mutual_info - r.classical;
  if (r.discord < -kDiscordSlack) {
    throw NumericalError("classical correlation exceeds mutual information by " + std::to_string(-r.discord));
  }
  if (r.discord < 0.0) {
    r.discord = 0.0;
    r.classical = r.mutual_info;
  }

  const Eigen::Matrix4cd& m = rho.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) r.max_non_x = std::max(r.max_non_x, std::abs(m(i, j)));
  return r;
}

std::vector<CorrelationRecord> evaluate_trajectory(const HilbertSpace& space, const Trajectory& trajectory,
                                                   const MeasurementSearch& search) {
  if (trajectory.size() == 0) throw InvalidArgument("trajectory is empty");
  const long count = static_cast<long>(trajectory.size());
  std::vector<CorrelationRecord> records(trajectory.size());
  std::vector<std::exception_ptr> errors(trajectory.size());

  MeasurementSearch cold = search;
  cold.warm_start.reset();
  cold.parallel_grid = false;

#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < count; ++k) {
    try {
      records[k] = correlate(reduce_to_dots(space, trajectory.states[k]), trajectory.times[k], cold);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }

  for (long k = 0; k < count; ++k) {
    if (!errors[k]) continue;
    std::ostringstream msg;
    msg << "correlation evaluation failed at t = " << trajectory.times[k] << " ps: ";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      msg << e.what();
    }
    throw NumericalError(msg.str());
  }
  return records;
}

namespace serial {

std::vector<CorrelationRecord> evaluate_trajectory(const HilbertSpace& space, const Trajectory& trajectory,
                                                   const MeasurementSearch& search) {
  if (trajectory.size() == 0) throw InvalidArgument("trajectory is empty");
  std::vector<CorrelationRecord> records;
  records.reserve(trajectory.size());
  MeasurementSearch warm = search;
  warm.parallel_grid = false;
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    try {
      records.push_back(correlate(reduce_to_dots(space, trajectory.states[k]), trajectory.times[k], warm));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "correlation evaluation failed at t = " << trajectory.times[k] << " ps: " << e.what();
      throw NumericalError(msg.str());
    }
    warm.warm_start = records.back().argmax_angles;
  }
  return records;
}

}  // namespace serial

}  // namespace qdmc
