#pragma once

#include "qdmc/hilbert.hpp"
#include "qdmc/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qdmc {

/// Tolerances used to accept a matrix as a density matrix.
struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
};

/// Hermitian, unit-trace, positive semidefinite state of the full system.
class DensityMatrix {
public:
  /// Validates; throws InvalidArgument if any invariant is violated.
  explicit DensityMatrix(Eigen::MatrixXcd rho, const DensityTolerances& tol = {});

  /// Wraps a matrix the caller has already checked.
  static DensityMatrix trusted(Eigen::MatrixXcd rho) { return DensityMatrix(std::move(rho), Trusted{}); }

  static DensityMatrix pure(const StateVector& psi);

  const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
  Index dim() const noexcept { return rho_.rows(); }

private:
  struct Trusted {};
  DensityMatrix(Eigen::MatrixXcd rho, Trusted) : rho_(std::move(rho)) {}
  Eigen::MatrixXcd rho_;
};

enum class InitialState {
  vacuum,          ///< |g,g,0>
  exciton_dot1,    ///< |e,g,0>
  exciton_dot2,    ///< |g,e,0>
  symmetric,       ///< (|e,g,0> + |g,e,0>)/sqrt(2)
};

/// Tags used in configs and on the command line: gg0, eg0, ge0, sym.
std::string_view to_string(InitialState state);
InitialState parse_initial_state(std::string_view tag);

DensityMatrix initial_density(const HilbertSpace& space, InitialState state);

/// Per-sample numerical health of an integrated state.
struct StateDiagnostics {
  double trace_error = 0.0;        ///< |Tr rho - 1|
  double hermiticity_drift = 0.0;  ///< max|rho - rho^dag| before symmetrization
  double min_eigenvalue = 0.0;
  double top_fock = 0.0;           ///< population of Fock level n_max
};

StateDiagnostics diagnose(const HilbertSpace& space, const Eigen::MatrixXcd& rho);

/// Gaussian exciton pump P_x(t) = P0 exp(-(t - t0)^2 / (2 tau_p^2)), in rad/ps.
double pump_profile(const PulseParams& pulse, double t);

/// Precomputed Lindblad generator
///   d rho/dt = -i[H, rho] + kappa D[a] + gamma sum_i D[s-i] + Pc D[a^dag] + Px(t) sum_i D[s+i]
/// with D[L]rho = (2 L rho L^dag - L^dag L rho - rho L^dag L)/2.
///
/// Written as d rho/dt = K rho + rho K^dag + sum_k r_k L_k rho L_k^dag with the
/// non-Hermitian K = -iH - 1/2 sum_k r_k L_k^dag L_k. apply() assumes rho is
/// Hermitian, which every density matrix and every Runge-Kutta stage is.
class LindbladGenerator {
public:
  LindbladGenerator(const HilbertSpace& space, const SystemParams& params);

  void apply(const Eigen::MatrixXcd& rho, double t, Eigen::MatrixXcd& out) const;
  Index dim() const noexcept { return dim_; }
  double pump(double t) const { return pump_profile(pulse_, t); }

private:
  struct Entry {
    Index row;
    Index col;
    Complex value;
  };
  using Entries = std::vector<Entry>;
  struct Jump {
    Entries op;
    double rate;  // 0 marks the pulsed pump, scaled by P_x(t)
  };

  static Entries nonzeros(const OperatorMatrix& m);

  Index dim_;
  PulseParams pulse_;
  bool pulsed_;
  Entries k_static_;
  Eigen::VectorXcd k_pump_diag_;  // -1/2 sum_i s-i s+i, multiplied by P_x(t)
  std::vector<Jump> jumps_;
  mutable Eigen::MatrixXcd scratch_;
};

/// One-shot right-hand side. Throws InvalidArgument on a dimension mismatch.
Eigen::MatrixXcd lindblad_rhs(const HilbertSpace& space, const SystemParams& params,
                              const DensityMatrix& rho, double t);

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  /// > 0 selects the fixed-step mode (ps).
  double fixed_step = 0.0;
  double max_step = 1.0;
  /// Top-Fock population allowed before a TruncationError.
  double truncation_limit = 1e-5;
  bool truncation_guard = true;
  DensityTolerances tolerances;
};

struct TimeSpan {
  double start;
  double end;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> pump_values;  ///< P_x(t), rad/ps
  std::vector<StateDiagnostics> diagnostics;

  std::size_t size() const noexcept { return times.size(); }
};

/// Number of samples t_start + k*sample_dt that fit in the span.
std::size_t sample_count(TimeSpan span, double sample_dt);

/// Integrates the master equation, sampling at t_start + k*sample_dt.
/// Each sample is symmetrized before it is stored and before integration
/// continues. Throws StiffnessError, TruncationError or NumericalError.
Trajectory integrate(const HilbertSpace& space, const SystemParams& params,
                     const DensityMatrix& rho0, TimeSpan span, double sample_dt,
                     const IntegratorOptions& options = {});

struct ObservableRow {
  double t;
  double n_photon;
  double pop_x1;
  double pop_x2;
  double top_fock;
};

std::vector<ObservableRow> observables(const HilbertSpace& space, const Trajectory& trajectory);
ObservableRow observables_at(const HilbertSpace& space, const Eigen::MatrixXcd& rho, double t);

}  // namespace qdmc
