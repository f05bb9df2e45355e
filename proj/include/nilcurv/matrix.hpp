#pragma once

// Dense complex matrix helpers over Eigen: the trace inner product
// (X, Y) = tr(X Y^*), commutators, and random ensembles used by the tests
// and the Monte Carlo layer.

#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "nilcurv/errors.hpp"
#include "nilcurv/random.hpp"

namespace nilcurv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// (X, Y) = tr(X Y^*).
inline Complex trace_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x.array() * y.conjugate().array()).sum();
}

inline double norm_sq(const ComplexMatrix& x) { return x.squaredNorm(); }

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

inline bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols() && a.rows() > 0; }

inline bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

inline void require_square_nonzero(const ComplexMatrix& a, const char* op) {
  if (!is_square(a)) throw domain_error(std::string(op) + ": matrix must be square and nonempty");
  if (!all_finite(a)) throw domain_error(std::string(op) + ": matrix has non-finite entries");
  if (norm_sq(a) == 0.0) throw domain_error(std::string(op) + ": zero matrix");
}

inline Eigen::VectorXd singular_values(const ComplexMatrix& a) {
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
}

inline double condition_number(const ComplexMatrix& a) {
  const auto s = singular_values(a);
  const double smallest = s(s.size() - 1);
  return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

/// Entries with independent real and imaginary parts ~ N(0, 1/2), so that
/// E|z|^2 = 1.
inline ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = random_gaussian(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

/// Random traceless matrix (a direction in sl(n, C)).
inline ComplexMatrix random_traceless(Eigen::Index n, Rng& rng) {
  ComplexMatrix g = random_gaussian(n, n, rng);
  const Complex shift = g.trace() / static_cast<double>(n);
  g.diagonal().array() -= shift;
  return g;
}

/// U = exp(S) for a random skew-Hermitian S = iH, computed through the
/// spectral decomposition of H so that U is unitary to rounding.
inline ComplexMatrix random_unitary(Eigen::Index n, Rng& rng, double spread = 3.0) {
  const ComplexMatrix h = random_hermitian(n, rng) * spread;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  ComplexMatrix phases = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) phases(i, i) = std::exp(Complex(0.0, eig.eigenvalues()(i)));
  return eig.eigenvectors() * phases * eig.eigenvectors().adjoint();
}

/// Ginibre matrix resampled until its condition number is at most max_cond.
inline ComplexMatrix random_conjugator(Eigen::Index n, Rng& rng, double max_cond = 1e4) {
  while (true) {
    ComplexMatrix g = random_gaussian(n, n, rng);
    if (condition_number(g) <= max_cond) return g;
  }
}

/// g A g^{-1}.
inline ComplexMatrix conjugate_by(const ComplexMatrix& g, const ComplexMatrix& a) {
  return g * a * g.partialPivLu().inverse();
}

/// exp(t eta) A exp(-t eta).
inline ComplexMatrix adjoint_flow(const ComplexMatrix& a, const ComplexMatrix& eta, double t) {
  const ComplexMatrix forward = (eta * t).exp();
  const ComplexMatrix backward = (eta * (-t)).exp();
  return forward * a * backward;
}

}  // namespace nilcurv
