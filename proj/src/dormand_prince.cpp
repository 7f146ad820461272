#include "qdmc/dormand_prince.hpp"

#include "qdmc/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace qdmc {

namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Fifth minus fourth order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Eigen::Map<const Eigen::ArrayXd> flat(const Eigen::MatrixXcd& m) {
  return {reinterpret_cast<const double*>(m.data()), 2 * m.size()};
}

}  // namespace

DormandPrince::DormandPrince(Rhs rhs, Options options)
    : rhs_(std::move(rhs)), options_(options),
      h_(options.fixed_step > 0 ? options.fixed_step : options.initial_step) {}

double DormandPrince::error_norm(const State& y0, const State& y1, const State& err) const {
  const auto scale = options_.atol + options_.rtol * flat(y0).abs().max(flat(y1).abs());
  return (flat(err).abs() / scale).maxCoeff();
}

void DormandPrince::advance(double& t, State& y, double t_end) {
  const bool fixed = options_.fixed_step > 0;
  if (!have_derivative_ || k1_.rows() != y.rows() || k1_.cols() != y.cols()) {
    k1_.resize(y.rows(), y.cols());
    rhs_(t, y, k1_);
    ++stats_.rhs_calls;
    have_derivative_ = true;
  }

  long steps = 0;
  while (t < t_end) {
    const double remaining = t_end - t;
    const bool last = h_ >= remaining * (1.0 - 1e-12);
    const double h = last ? remaining : h_;

    if (!fixed && h_ < options_.min_step) {
      std::ostringstream msg;
      msg << "step size underflow (h = " << h_ << " ps) at t = " << t << " ps, |rho|_max = "
          << y.cwiseAbs().maxCoeff() << "; the problem is too stiff for the requested tolerances";
      throw StiffnessError(msg.str(), t, y.cwiseAbs().maxCoeff());
    }
    if (++steps > options_.max_steps) {
      std::ostringstream msg;
      msg << "step budget exhausted at t = " << t << " ps";
      throw StiffnessError(msg.str(), t, y.cwiseAbs().maxCoeff());
    }

    stage_ = y + (h * a21) * k1_;
    rhs_(t + c2 * h, stage_, k2_);
    stage_ = y + h * (a31 * k1_ + a32 * k2_);
    rhs_(t + c3 * h, stage_, k3_);
    stage_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs_(t + c4 * h, stage_, k4_);
    stage_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs_(t + c5 * h, stage_, k5_);
    stage_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs_(t + h, stage_, k6_);
    y_new_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs_(t + h, y_new_, k7_);
    stats_.rhs_calls += 6;

    if (fixed) {
      t = last ? t_end : t + h;
      std::swap(y, y_new_);
      std::swap(k1_, k7_);
      ++stats_.accepted;
      continue;
    }

    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const double norm = error_norm(y, y_new_, err_);

    if (std::isfinite(norm) && norm <= 1.0) {
      t = last ? t_end : t + h;
      std::swap(y, y_new_);
      std::swap(k1_, k7_);
      ++stats_.accepted;
      const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      // A step shortened to hit t_end says nothing about the natural step size.
      if (!last || h == h_) h_ = std::min(h * factor, options_.max_step);
    } else {
      ++stats_.rejected;
      const double factor = std::isfinite(norm) ? std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 1.0) : 0.2;
      h_ = h * factor;
    }
  }
}

}  // namespace qdmc
