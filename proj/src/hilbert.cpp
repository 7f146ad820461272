#include "qdmc/hilbert.hpp"

#include "qdmc/error.hpp"

#include <cmath>
#include <string>

namespace qdmc {

namespace {

constexpr Level kLevels[] = {Level::g, Level::e};

}  // namespace

HilbertSpace make_space(int n_max) {
  if (n_max < 2) {
    throw InvalidArgument("invalid truncation: n_max must be >= 2, got " + std::to_string(n_max));
  }
  return HilbertSpace(n_max);
}

StateVector HilbertSpace::basis_state(Level e1, Level e2, int n) const {
  if (n < 0 || n > n_max_) {
    throw InvalidArgument("Fock level " + std::to_string(n) + " outside 0.." + std::to_string(n_max_));
  }
  StateVector v = StateVector::Zero(dim());
  v(index(e1, e2, n)) = 1.0;
  return v;
}

OperatorMatrix annihilation(const HilbertSpace& space) {
  OperatorMatrix a = OperatorMatrix::Zero(space.dim(), space.dim());
  for (Level e1 : kLevels) {
    for (Level e2 : kLevels) {
      for (int n = 1; n <= space.n_max(); ++n) {
        a(space.index(e1, e2, n - 1), space.index(e1, e2, n)) = std::sqrt(static_cast<double>(n));
      }
    }
  }
  return a;
}

OperatorMatrix creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

OperatorMatrix sigma_minus(const HilbertSpace& space, int dot) {
  if (dot != 1 && dot != 2) {
    throw InvalidArgument("invalid dot index " + std::to_string(dot) + " (expected 1 or 2)");
  }
  OperatorMatrix s = OperatorMatrix::Zero(space.dim(), space.dim());
  for (Level other : kLevels) {
    for (int n = 0; n <= space.n_max(); ++n) {
      if (dot == 1) {
        s(space.index(Level::g, other, n), space.index(Level::e, other, n)) = 1.0;
      } else {
        s(space.index(other, Level::g, n), space.index(other, Level::e, n)) = 1.0;
      }
    }
  }
  return s;
}

OperatorMatrix sigma_plus(const HilbertSpace& space, int dot) { return sigma_minus(space, dot).adjoint(); }

OperatorMatrix excitation_number(const HilbertSpace& space) {
  OperatorMatrix number = OperatorMatrix::Zero(space.dim(), space.dim());
  for (Level e1 : kLevels) {
    for (Level e2 : kLevels) {
      for (int n = 0; n <= space.n_max(); ++n) {
        number(space.index(e1, e2, n), space.index(e1, e2, n)) =
            n + static_cast<int>(e1) + static_cast<int>(e2);
      }
    }
  }
  return number;
}

}  // namespace qdmc
