#include "qdmc/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace qdmc {

namespace {

using Pauli = Eigen::Matrix2cd;

std::array<Pauli, 3> pauli() {
  Pauli x, y, z;
  x << 0, 1, 1, 0;
  y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

double expectation(const Eigen::Matrix4cd& rho, const Pauli& left, const Pauli& right) {
  // Tr[rho (left (x) right)] with index 2*i_A + i_B.
  std::complex<double> sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) sum += rho(2 * j + l, 2 * i + k) * left(i, j) * right(k, l);
  return sum.real();
}

double qubit_entropy(double bloch_length) {
  const double r = std::min(bloch_length, 1.0);
  const double p = 0.5 * (1.0 + r);
  const double q = 0.5 * (1.0 - r);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (q > 0.0) s -= q * std::log2(q);
  return s;
}

GridPoint grid_point(const BlochData& data, const GridSpec& grid, long flat) {
  const int i = static_cast<int>(flat / grid.phi_points);
  const int j = static_cast<int>(flat % grid.phi_points);
  const double theta = grid.theta_points > 1 ? std::numbers::pi * i / (grid.theta_points - 1) : 0.0;
  const double phi = 2.0 * std::numbers::pi * j / grid.phi_points;
  return {conditional_entropy(data, bloch_direction(theta, phi)), theta, phi, flat};
}

bool better(const GridPoint& lhs, const GridPoint& rhs) {
  return lhs.value < rhs.value || (lhs.value == rhs.value && lhs.flat_index < rhs.flat_index);
}

}  // namespace

BlochData bloch_data(const Eigen::Matrix4cd& rho) {
  const auto sigma = pauli();
  const Pauli id = Pauli::Identity();
  BlochData d;
  for (int i = 0; i < 3; ++i) {
    d.a(i) = expectation(rho, sigma[i], id);
    d.b(i) = expectation(rho, id, sigma[i]);
    for (int j = 0; j < 3; ++j) d.T(i, j) = expectation(rho, sigma[i], sigma[j]);
  }
  return d;
}

Eigen::Vector3d bloch_direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double conditional_entropy(const BlochData& data, const Eigen::Vector3d& n) {
  const double bn = data.b.dot(n);
  const Eigen::Vector3d tn = data.T * n;
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double weight = 1.0 + sign * bn;  // 2 p_j
    if (0.5 * weight < kMinOutcomeProbability) continue;
    total += 0.5 * weight * qubit_entropy((data.a + sign * tn).norm() / weight);
  }
  return total;
}

namespace serial {

GridPoint scan_measurement_grid(const BlochData& data, const GridSpec& grid) {
  const long total = static_cast<long>(grid.theta_points) * grid.phi_points;
  GridPoint best{std::numeric_limits<double>::infinity(), 0.0, 0.0, -1};
  for (long flat = 0; flat < total; ++flat) {
    const GridPoint p = grid_point(data, grid, flat);
    if (better(p, best)) best = p;
  }
  return best;
}

}  // namespace serial

namespace omp {

GridPoint scan_measurement_grid(const BlochData& data, const GridSpec& grid) {
  const long total = static_cast<long>(grid.theta_points) * grid.phi_points;
  GridPoint best{std::numeric_limits<double>::infinity(), 0.0, 0.0, -1};
#pragma omp parallel
  {
    GridPoint local{std::numeric_limits<double>::infinity(), 0.0, 0.0, -1};
#pragma omp for schedule(static) nowait
    for (long flat = 0; flat < total; ++flat) {
      const GridPoint p = grid_point(data, grid, flat);
      if (better(p, local)) local = p;
    }
#pragma omp critical(qdmc_grid_best)
    if (better(local, best)) best = local;
  }
  return best;
}

}  // namespace omp

namespace {

constexpr double kSimplexTolerance = 1e-6;

double simplex_diameter(const std::array<Eigen::Vector2d, 3>& s) {
  return std::max({(s[0] - s[1]).norm(), (s[0] - s[2]).norm(), (s[1] - s[2]).norm()});
}

}  // namespace

RefineResult refine_measurement(const BlochData& data, double theta, double phi, double step_theta,
                                double step_phi, double ftol, int max_iterations) {
  using Point = Eigen::Vector2d;
  auto f = [&data](const Point& x) { return conditional_entropy(data, bloch_direction(x(0), x(1))); };

  std::array<Point, 3> simplex{Point(theta, phi), Point(theta + step_theta, phi),
                               Point(theta, phi + step_phi)};
  std::array<double, 3> values{};
  for (int i = 0; i < 3; ++i) values[i] = f(simplex[i]);

  int iteration = 0;
  for (; iteration < max_iterations; ++iteration) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int l, int r) { return values[l] < values[r]; });
    const int lo = order[0], mid = order[1], hi = order[2];
    if (values[hi] - values[lo] <= ftol && simplex_diameter(simplex) <= kSimplexTolerance) break;

    const Point centroid = 0.5 * (simplex[lo] + simplex[mid]);
    const Point reflected = centroid + (centroid - simplex[hi]);
    const double fr = f(reflected);
    if (fr < values[lo]) {
      const Point expanded = centroid + 2.0 * (centroid - simplex[hi]);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[hi] = expanded;
        values[hi] = fe;
      } else {
        simplex[hi] = reflected;
        values[hi] = fr;
      }
      continue;
    }
    if (fr < values[mid]) {
      simplex[hi] = reflected;
      values[hi] = fr;
      continue;
    }
    const bool outside = fr < values[hi];
    const Point contracted =
        outside ? Point(centroid + 0.5 * (reflected - centroid)) : Point(centroid + 0.5 * (simplex[hi] - centroid));
    const double fc = f(contracted);
    if (fc < std::min(fr, values[hi])) {
      simplex[hi] = contracted;
      values[hi] = fc;
      continue;
    }
    for (int i : {mid, hi}) {
      simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
      values[i] = f(simplex[i]);
    }
  }

  const int best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  return {values[best], simplex[best](0), simplex[best](1), iteration};
}

}  // namespace qdmc
