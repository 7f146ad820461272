#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qdmc {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense square operator on the truncated composite space.
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Two-level state of a single dot.
enum class Level : int { g = 0, e = 1 };

/// Truncated space QD1 (x) QD2 (x) Fock(0..n_max).
///
/// Basis ordering: |e1, e2, n> sits at n + (n_max+1)*(e2 + 2*e1), so the
/// photon number varies fastest and every fixed (e1, e2) pair owns a
/// contiguous block of n_max+1 entries.
class HilbertSpace {
public:
  int n_max() const noexcept { return n_max_; }
  Index fock_levels() const noexcept { return n_max_ + 1; }
  Index dim() const noexcept { return 4 * fock_levels(); }

  Index index(Level e1, Level e2, int n) const noexcept {
    return n + fock_levels() * (static_cast<int>(e2) + 2 * static_cast<int>(e1));
  }

  /// Column vector of a naked basis state.
  StateVector basis_state(Level e1, Level e2, int n) const;

  friend HilbertSpace make_space(int n_max);

private:
  explicit HilbertSpace(int n_max) : n_max_(n_max) {}
  int n_max_;
};

/// Throws InvalidArgument for n_max < 2 (the second excitation manifold
/// needs |g,g,2>).
HilbertSpace make_space(int n_max);

/// Cavity lowering operator a, identity on the dots.
OperatorMatrix annihilation(const HilbertSpace& space);
OperatorMatrix creation(const HilbertSpace& space);

/// sigma_- of dot 1 or 2. Any other index throws InvalidArgument.
OperatorMatrix sigma_minus(const HilbertSpace& space, int dot);
OperatorMatrix sigma_plus(const HilbertSpace& space, int dot);

/// N = a^dag a + sum_i sigma_+^i sigma_-^i, diagonal in the naked basis.
OperatorMatrix excitation_number(const HilbertSpace& space);

}  // namespace qdmc
