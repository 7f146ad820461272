#pragma once

// Hot loops of the measurement optimisation behind classical correlation and
// discord. Each data-parallel kernel exists twice: an OpenMP version used in
// production and a plain serial version kept as the reference for tests and
// the benchmark.

#include <Eigen/Dense>

namespace qdmc {

/// Pauli decomposition of a two-qubit state,
///   rho = 1/4 (I + a.sigma (x) I + I (x) b.sigma + sum_ij T_ij sigma_i (x) sigma_j),
/// with sigma_z = diag(1, -1) in the {|g>, |e>} ordering.
struct BlochData {
  Eigen::Vector3d a;  ///< dot 1 (A)
  Eigen::Vector3d b;  ///< dot 2 (B)
  Eigen::Matrix3d T;
};

BlochData bloch_data(const Eigen::Matrix4cd& rho);

/// Bloch direction of |m> = cos(theta/2)|g> + e^{i phi} sin(theta/2)|e>.
Eigen::Vector3d bloch_direction(double theta, double phi);

/// Outcomes with probability below this are dropped from the average.
inline constexpr double kMinOutcomeProbability = 1e-12;

/// sum_j p_j S(rho_A^j) in bits for the projective measurement {|m><m|, I - |m><m|}
/// on B whose Bloch direction is n.
double conditional_entropy(const BlochData& data, const Eigen::Vector3d& n);

struct GridSpec {
  int theta_points = 64;   ///< theta_i = pi i / (theta_points - 1), endpoints included
  int phi_points = 128;    ///< phi_j = 2 pi j / phi_points
};

struct GridPoint {
  double value;  ///< minimum conditional entropy found on the grid
  double theta;
  double phi;
  long flat_index;  ///< theta_index * phi_points + phi_index; ties go to the lowest
};

namespace serial {
GridPoint scan_measurement_grid(const BlochData& data, const GridSpec& grid);
}

namespace omp {
GridPoint scan_measurement_grid(const BlochData& data, const GridSpec& grid);
}

struct RefineResult {
  double value;
  double theta;
  double phi;
  int iterations;
};

/// Nelder-Mead minimisation of the conditional entropy over (theta, phi),
/// stopping when the simplex spread in the objective drops below ftol and
/// its vertices are within 1e-6 rad of each other (a simplex straddling a
/// symmetric minimum can have equal values at every vertex).
RefineResult refine_measurement(const BlochData& data, double theta, double phi, double step_theta,
                                double step_phi, double ftol, int max_iterations);

}  // namespace qdmc
