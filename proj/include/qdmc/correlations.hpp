#pragma once

#include "qdmc/dynamics.hpp"
#include "qdmc/hilbert.hpp"
#include "qdmc/kernels.hpp"

#include <optional>
#include <vector>

namespace qdmc {

/// Reduced state of the two dots in the basis {|gg>, |ge>, |eg>, |ee>}
/// (dot 1 (x) dot 2). Dot 1 is subsystem A, dot 2 is subsystem B.
class TwoQubitState {
public:
  explicit TwoQubitState(const Eigen::Matrix4cd& rho, const DensityTolerances& tol = {});
  static TwoQubitState trusted(const Eigen::Matrix4cd& rho) { return TwoQubitState(rho, Trusted{}); }
  static TwoQubitState pure(const Eigen::Vector4cd& psi);

  const Eigen::Matrix4cd& matrix() const noexcept { return rho_; }

private:
  struct Trusted {};
  TwoQubitState(const Eigen::Matrix4cd& rho, Trusted) : rho_(rho) {}
  Eigen::Matrix4cd rho_;
};

/// Partial trace over the cavity.
TwoQubitState reduce_to_dots(const HilbertSpace& space, const DensityMatrix& rho);
TwoQubitState reduce_to_dots(const HilbertSpace& space, const Eigen::MatrixXcd& rho);

/// Eigenvalues within this distance below zero are treated as zero; anything
/// more negative is reported as a NumericalError.
inline constexpr double kNegativeEigenvalueSlack = 1e-10;

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}. The l_i are the square
/// roots of the eigenvalues of rho (sy (x) sy) rho* (sy (x) sy), obtained here
/// as the singular values of sqrt(rho) (sy (x) sy) sqrt(rho)*, which keeps
/// full precision for (near-)pure states.
double concurrence(const TwoQubitState& rho);

/// h(x) = -x log2 x - (1-x) log2(1-x).
double binary_entropy(double x);

/// Entanglement of formation from the concurrence. Inputs within 1e-12 of
/// [0, 1] are clamped; anything further out throws InvalidArgument.
double eof(double cc);

/// -sum lambda log2 lambda; eigenvalues below 1e-14 are skipped.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

Eigen::Matrix2cd reduced_a(const TwoQubitState& rho);
Eigen::Matrix2cd reduced_b(const TwoQubitState& rho);

/// S(rho_A) + S(rho_B) - S(rho_AB), bits.
double mutual_information(const TwoQubitState& rho);

struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;
};

struct MeasurementSearch {
  GridSpec grid;
  double ftol = 1e-8;
  int max_iterations = 2000;
  /// Extra Nelder-Mead seed, typically the optimum of the previous sample.
  std::optional<MeasurementAngles> warm_start;
  /// Use the OpenMP grid kernel (off inside already-parallel loops).
  bool parallel_grid = true;
};

struct ClassicalCorrelation {
  double value;  ///< bits
  MeasurementAngles angles;
};

/// max over rank-1 projective measurements {Pi_0, I - Pi_0} on dot 2 of
/// S(rho_A) - sum_j p_j S(rho_A^j): coarse grid, then Nelder-Mead.
ClassicalCorrelation classical_correlation(const TwoQubitState& rho, const MeasurementSearch& search = {});

/// Quantum discord I - C with the same measurement class; tiny negatives are clamped to 0.
double discord(const TwoQubitState& rho, const MeasurementSearch& search = {});

struct CorrelationRecord {
  double t = 0.0;
  double cc = 0.0;
  double eof = 0.0;
  double mutual_info = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  MeasurementAngles argmax_angles;
  /// Largest |rho_AB| entry outside the X pattern (diagonal + anti-diagonal).
  double max_non_x = 0.0;
};

CorrelationRecord correlate(const TwoQubitState& rho, double t, const MeasurementSearch& search = {});

/// One record per trajectory sample, evaluated in parallel with cold starts
/// so the output does not depend on the thread count.
std::vector<CorrelationRecord> evaluate_trajectory(const HilbertSpace& space, const Trajectory& trajectory,
                                                   const MeasurementSearch& search = {});

namespace serial {
/// Reference sweep: strictly in time order, each sample warm-started from the
/// previous optimum.
std::vector<CorrelationRecord> evaluate_trajectory(const HilbertSpace& space, const Trajectory& trajectory,
                                                   const MeasurementSearch& search = {});
}  // namespace serial

}  // namespace qdmc
