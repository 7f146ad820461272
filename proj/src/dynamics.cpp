#include "qdmc/dynamics.hpp"

#include "qdmc/dormand_prince.hpp"
#include "qdmc/error.hpp"
#include "qdmc/units.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <string>

namespace qdmc {

namespace {

constexpr Level kLevels[] = {Level::g, Level::e};

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues().minCoeff();
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho, const DensityTolerances& tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  const double drift = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (drift > tol.hermiticity) {
    throw InvalidArgument("density matrix is not Hermitian (drift " + std::to_string(drift) + ")");
  }
  const double trace_error = std::abs(rho_.trace() - 1.0);
  if (trace_error > tol.trace) {
    throw InvalidArgument("density matrix trace differs from 1 by " + std::to_string(trace_error));
  }
  const double lowest = min_eigenvalue(0.5 * (rho_ + rho_.adjoint()));
  if (lowest < tol.min_eigenvalue) {
    throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidArgument("cannot build a density matrix from a zero vector");
  const StateVector unit = psi / norm;
  return trusted(unit * unit.adjoint());
}

std::string_view to_string(InitialState state) {
  switch (state) {
    case InitialState::vacuum: return "gg0";
    case InitialState::exciton_dot1: return "eg0";
    case InitialState::exciton_dot2: return "ge0";
    case InitialState::symmetric: return "sym";
  }
  return "?";
}

InitialState parse_initial_state(std::string_view tag) {
  if (tag == "gg0") return InitialState::vacuum;
  if (tag == "eg0") return InitialState::exciton_dot1;
  if (tag == "ge0") return InitialState::exciton_dot2;
  if (tag == "sym") return InitialState::symmetric;
  throw UsageError("unknown initial state '" + std::string(tag) + "' (valid: gg0, eg0, ge0, sym)");
}

DensityMatrix initial_density(const HilbertSpace& space, InitialState state) {
  switch (state) {
    case InitialState::vacuum: return DensityMatrix::pure(space.basis_state(Level::g, Level::g, 0));
    case InitialState::exciton_dot1: return DensityMatrix::pure(space.basis_state(Level::e, Level::g, 0));
    case InitialState::exciton_dot2: return DensityMatrix::pure(space.basis_state(Level::g, Level::e, 0));
    case InitialState::symmetric:
      return DensityMatrix::pure(space.basis_state(Level::e, Level::g, 0) +
                                 space.basis_state(Level::g, Level::e, 0));
  }
  throw InvalidArgument("unknown initial state");
}

StateDiagnostics diagnose(const HilbertSpace& space, const Eigen::MatrixXcd& rho) {
  StateDiagnostics d;
  d.trace_error = std::abs(rho.trace() - 1.0);
  d.hermiticity_drift = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.min_eigenvalue = min_eigenvalue(0.5 * (rho + rho.adjoint()));
  for (Level e1 : kLevels) {
    for (Level e2 : kLevels) {
      const Index i = space.index(e1, e2, space.n_max());
      d.top_fock += rho(i, i).real();
    }
  }
  return d;
}

double pump_profile(const PulseParams& pulse, double t) {
  const double x = (t - pulse.center()) / pulse.tau_p;
  return angular_from_ghz(pulse.p0_over_2pi) * std::exp(-0.5 * x * x);
}

LindbladGenerator::LindbladGenerator(const HilbertSpace& space, const SystemParams& params)
    : dim_(space.dim()), pulse_(params.pulse), pulsed_(params.pulse.p0_over_2pi > 0.0) {
  params.validate();
  const double kappa = angular_from_ghz(params.kappa_over_2pi);
  const double gamma = angular_from_ghz(params.gamma_over_2pi);
  const double pc = angular_from_ghz(params.pc_over_2pi);

  const OperatorMatrix a = annihilation(space);
  const OperatorMatrix sm1 = sigma_minus(space, 1);
  const OperatorMatrix sm2 = sigma_minus(space, 2);

  OperatorMatrix k = Complex(0.0, -1.0) * hamiltonian(space, params);
  auto add_channel = [&](const OperatorMatrix& op, double rate) {
    if (rate <= 0.0) return;
    k -= 0.5 * rate * (op.adjoint() * op);
    jumps_.push_back({nonzeros(op), rate});
  };
  add_channel(a, kappa);
  add_channel(sm1, gamma);
  add_channel(sm2, gamma);
  add_channel(a.adjoint(), pc);
  k_static_ = nonzeros(k);

  if (pulsed_) {
    const OperatorMatrix sp1 = sm1.adjoint();
    const OperatorMatrix sp2 = sm2.adjoint();
    k_pump_diag_ = -0.5 * (sm1 * sp1 + sm2 * sp2).diagonal();
    jumps_.push_back({nonzeros(sp1), 0.0});
    jumps_.push_back({nonzeros(sp2), 0.0});
  }
}

LindbladGenerator::Entries LindbladGenerator::nonzeros(const OperatorMatrix& m) {
  Entries out;
  for (Index col = 0; col < m.cols(); ++col)
    for (Index row = 0; row < m.rows(); ++row)
      if (m(row, col) != Complex(0.0)) out.push_back({row, col, m(row, col)});
  return out;
}

void LindbladGenerator::apply(const Eigen::MatrixXcd& rho, double t, Eigen::MatrixXcd& out) const {
  const double px = pulsed_ ? pump(t) : 0.0;
  const Index n = dim_;
  scratch_.setZero(n, n);

  // X = K(t) rho, column by column.
  for (Index j = 0; j < n; ++j) {
    const Complex* in = rho.col(j).data();
    Complex* x = scratch_.col(j).data();
    for (const Entry& e : k_static_) x[e.row] += e.value * in[e.col];
    if (pulsed_) {
      for (Index i = 0; i < n; ++i) x[i] += px * k_pump_diag_[i] * in[i];
    }
  }
  out = scratch_ + scratch_.adjoint();

  // rate * L rho L^dag, entry pairs of L.
  for (const Jump& jump : jumps_) {
    const double rate = jump.rate > 0.0 ? jump.rate : px;
    if (rate == 0.0) continue;
    for (const Entry& right : jump.op) {
      const Complex w = rate * std::conj(right.value);
      Complex* o = out.col(right.row).data();
      const Complex* in = rho.col(right.col).data();
      for (const Entry& left : jump.op) o[left.row] += left.value * w * in[left.col];
    }
  }
}

Eigen::MatrixXcd lindblad_rhs(const HilbertSpace& space, const SystemParams& params,
                              const DensityMatrix& rho, double t) {
  if (rho.dim() != space.dim()) {
    throw InvalidArgument("shape mismatch: density matrix is " + std::to_string(rho.dim()) +
                          "x" + std::to_string(rho.dim()) + ", space dimension is " +
                          std::to_string(space.dim()));
  }
  LindbladGenerator generator(space, params);
  Eigen::MatrixXcd out(space.dim(), space.dim());
  generator.apply(rho.matrix(), t, out);
  return out;
}

std::size_t sample_count(TimeSpan span, double sample_dt) {
  return static_cast<std::size_t>(std::floor((span.end - span.start) / sample_dt + 1e-9)) + 1;
}

Trajectory integrate(const HilbertSpace& space, const SystemParams& params,
                     const DensityMatrix& rho0, TimeSpan span, double sample_dt,
                     const IntegratorOptions& options) {
  if (rho0.dim() != space.dim()) throw InvalidArgument("shape mismatch between rho0 and space");
  if (!(span.end > span.start)) throw InvalidArgument("t_end must exceed t_start");
  if (!(sample_dt > 0.0)) throw InvalidArgument("sample_dt must be > 0");

  const LindbladGenerator generator(space, params);
  DormandPrince::Options stepper_options;
  stepper_options.rtol = options.rtol;
  stepper_options.atol = options.atol;
  stepper_options.fixed_step = options.fixed_step;
  stepper_options.max_step = options.max_step;
  DormandPrince stepper(
      [&generator](double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dydt) {
        generator.apply(y, t, dydt);
      },
      stepper_options);

  const std::size_t count = sample_count(span, sample_dt);
  Trajectory out;
  out.times.reserve(count);
  out.states.reserve(count);
  out.pump_values.reserve(count);
  out.diagnostics.reserve(count);

  Eigen::MatrixXcd rho = rho0.matrix();
  double t = span.start;
  for (std::size_t k = 0; k < count; ++k) {
    const double target = span.start + static_cast<double>(k) * sample_dt;
    if (k > 0) stepper.advance(t, rho, target);
    t = target;

    StateDiagnostics diag = diagnose(space, rho);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    stepper.invalidate();

    if (diag.trace_error > options.tolerances.trace || diag.min_eigenvalue < options.tolerances.min_eigenvalue ||
        diag.hermiticity_drift > options.tolerances.hermiticity) {
      std::ostringstream msg;
      msg << "integrated state left the density-matrix set at t = " << t << " ps (trace error "
          << diag.trace_error << ", min eigenvalue " << diag.min_eigenvalue << ", hermiticity drift "
          << diag.hermiticity_drift << ")";
      throw NumericalError(msg.str());
    }
    if (options.truncation_guard && diag.top_fock > options.truncation_limit) {
      std::ostringstream msg;
      msg << "Fock truncation too small: population of level n_max = " << space.n_max() << " is "
          << diag.top_fock << " at t = " << t << " ps (limit " << options.truncation_limit
          << "); increase n_max";
      throw TruncationError(msg.str(), t, diag.top_fock);
    }

    out.times.push_back(t);
    out.states.push_back(DensityMatrix::trusted(rho));
    out.pump_values.push_back(generator.pump(t));
    out.diagnostics.push_back(diag);
  }
  return out;
}

ObservableRow observables_at(const HilbertSpace& space, const Eigen::MatrixXcd& rho, double t) {
  ObservableRow row{t, 0.0, 0.0, 0.0, 0.0};
  for (Level e1 : kLevels) {
    for (Level e2 : kLevels) {
      for (int n = 0; n <= space.n_max(); ++n) {
        const Index i = space.index(e1, e2, n);
        const double p = rho(i, i).real();
        row.n_photon += n * p;
        if (e1 == Level::e) row.pop_x1 += p;
        if (e2 == Level::e) row.pop_x2 += p;
        if (n == space.n_max()) row.top_fock += p;
      }
    }
  }
  return row;
}

std::vector<ObservableRow> observables(const HilbertSpace& space, const Trajectory& trajectory) {
  if (trajectory.size() == 0) throw InvalidArgument("trajectory is empty");
  std::vector<ObservableRow> rows;
  rows.reserve(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    rows.push_back(observables_at(space, trajectory.states[k].matrix(), trajectory.times[k]));
  }
  return rows;
}

}  // namespace qdmc
