#pragma once

#include <Eigen/Dense>

#include <functional>

namespace qdmc {

/// Embedded Runge-Kutta 5(4) pair of Dormand and Prince with FSAL, acting on
/// a dense complex matrix. The error norm treats the matrix as a flat vector
/// of real and imaginary parts.
class DormandPrince {
public:
  using State = Eigen::MatrixXcd;
  /// dydt = f(t, y); must fully overwrite dydt.
  using Rhs = std::function<void(double t, const State& y, State& dydt)>;

  struct Options {
    double rtol = 1e-8;
    double atol = 1e-10;
    double initial_step = 1e-3;
    double min_step = 1e-10;
    double max_step = 1.0;
    /// > 0 switches off error control and takes steps of this size.
    double fixed_step = 0.0;
    long max_steps = 50'000'000;
  };

  struct Stats {
    long accepted = 0;
    long rejected = 0;
    long rhs_calls = 0;
  };

  DormandPrince(Rhs rhs, Options options);

  /// Integrates y from t to t_end, landing exactly on t_end. Throws
  /// StiffnessError when the step size underflows or the step budget runs out.
  void advance(double& t, State& y, double t_end);

  /// Forget the cached derivative (call after modifying y between advances).
  void invalidate() { have_derivative_ = false; }

  const Stats& stats() const { return stats_; }
  double step_size() const { return h_; }

private:
  double error_norm(const State& y0, const State& y1, const State& err) const;

  Rhs rhs_;
  Options options_;
  Stats stats_;
  double h_;
  bool have_derivative_ = false;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, stage_, y_new_, err_;
};

}  // namespace qdmc
