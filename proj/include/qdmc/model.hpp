#pragma once

#include "qdmc/hilbert.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qdmc {

/// Gaussian exciton pump pulse. Rates in GHz (nu = rate/2pi), times in ps.
struct PulseParams {
  double p0_over_2pi = 0.0;
  double tau_p = 20.0;
  /// Pulse centre. Unset means 3*tau_p, so the pulse ramps up from ~1% of peak at t = 0.
  std::optional<double> t0;

  double center() const { return t0.value_or(3.0 * tau_p); }
  double fwhm() const;
};

/// Physical parameters. Both dots share one coupling g and one emission rate
/// gamma; only a single value is stored for each so they cannot drift apart.
struct SystemParams {
  double g_over_2pi = 10.0;
  double gamma_over_2pi = 0.025;
  double kappa_over_2pi = 5.0;
  double forster_over_2pi = 0.0;
  double delta_over_2pi = 0.0;
  double pc_over_2pi = 0.0;
  PulseParams pulse;
  int n_max = 5;

  /// g > kappa and g > gamma.
  bool strong_coupling() const { return g_over_2pi > kappa_over_2pi && g_over_2pi > gamma_over_2pi; }

  /// Throws InvalidArgument on negative rates, tau_p <= 0 or n_max < 2.
  void validate() const;
};

/// H/hbar in the frame rotating at the cavity frequency, rad/ps:
///   Delta*(s+1 s-1 + s+2 s-2) + g*sum_i(a^dag s-i + a s+i) + Gamma*(s+1 s-2 + s-1 s+2)
OperatorMatrix hamiltonian(const HilbertSpace& space, const SystemParams& params);

/// Hamiltonian restricted to the n-excitation manifold in the ordered basis
/// {|g,g,n>, |g,e,n-1>, |e,g,n-1>, |e,e,n-2>}, energies relative to n*omega_c.
/// For n = 1 the |e,e,-1> row and column do not exist and the block is 3x3.
Eigen::MatrixXcd manifold_block(const SystemParams& params, int n);

struct SpectrumRow {
  double delta_over_2pi;
  /// Ascending, rad/ps.
  std::vector<double> eigenvalues;
};

/// Dressed-state energies of manifold n (1 or 2) for each detuning in
/// `deltas_over_2pi` (GHz). All other parameters come from `params`.
std::vector<SpectrumRow> spectrum_sweep(const SystemParams& params, int n,
                                        std::span<const double> deltas_over_2pi);

}  // namespace qdmc
