#pragma once

// Standard nilpotents X^lambda, the moment map m(A) = [A, A^*] / |A|^2 and
// its square norm K, numerical Jordan type, and type-R matrices (block
// sub-diagonal with respect to a grading V_1 + ... + V_m, dim V_j = r_j).

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilcurv/combinatorics.hpp"
#include "nilcurv/matrix.hpp"
#include "nilcurv/random.hpp"

namespace nilcurv {

/// Subdiagonal weights sqrt(p (i - p)), p = 1..i-1, of the Jordan block J_i.
inline std::vector<double> jordan_block_weights(int size) {
  std::vector<double> w;
  for (int p = 1; p < size; ++p) w.push_back(std::sqrt(static_cast<double>(p) * (size - p)));
  return w;
}

/// X^lambda = diag(J_{lambda_1}, ..., J_{lambda_k}); J_i is lower
/// subdiagonal with weights sqrt(p (i - p)).
inline ComplexMatrix standard_nilpotent(const Partition& p) {
  if (p.empty()) throw domain_error("standard_nilpotent: empty partition");
  ComplexMatrix x = ComplexMatrix::Zero(p.total(), p.total());
  Eigen::Index offset = 0;
  for (int size : p.parts()) {
    const auto w = jordan_block_weights(size);
    for (std::size_t q = 0; q < w.size(); ++q) {
      const auto row = offset + static_cast<Eigen::Index>(q) + 1;
      x(row, row - 1) = w[q];
    }
    offset += size;
  }
  return x;
}

/// K(A) = |[A, A^*]|^2 / |A|^4. Invariant under scaling and unitary
/// conjugation.
inline double k_value(const ComplexMatrix& a) {
  require_square_nonzero(a, "k_value");
  const double n2 = norm_sq(a);
  return norm_sq(commutator(a, a.adjoint())) / (n2 * n2);
}

/// m(A) = [A, A^*] / |A|^2: traceless Hermitian with |m(A)|^2 = K(A).
inline ComplexMatrix moment(const ComplexMatrix& a) {
  require_square_nonzero(a, "moment");
  return commutator(a, a.adjoint()) / norm_sq(a);
}

/// Default relative rank tolerance n * 2^-40.
inline double default_rank_tolerance(Eigen::Index n) { return static_cast<double>(n) * std::ldexp(1.0, -40); }

/// Partition of kernel jumps dim ker A^p - dim ker A^{p-1}.
///
/// A singular value of A^p = A A^{p-1} counts as zero when it is at most
/// rank_tol * sigma_max(A) * sigma_max(A^{p-1}), the rounding scale of that
/// product; for p = 1 this is rank_tol * sigma_max(A).
inline Partition kernel_partition(const ComplexMatrix& a, std::optional<double> rank_tol = std::nullopt) {
  if (!is_square(a)) throw domain_error("kernel_partition: matrix must be square");
  const Eigen::Index n = a.rows();
  const double rel = rank_tol.value_or(default_rank_tolerance(n));
  const double sigma_max = singular_values(a)(0);
  std::vector<int> jumps;
  int previous = 0;
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  double previous_norm = 1.0;
  for (Eigen::Index p = 1; p <= n; ++p) {
    power = a * power;
    const double threshold = rel * sigma_max * previous_norm;
    const auto s = singular_values(power);
    previous_norm = s(0);
    int kernel = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) kernel += s(i) <= threshold ? 1 : 0;
    if (p == n && kernel != n) {
      throw not_nilpotent_error("matrix is not nilpotent at tolerance (A^n has rank " + std::to_string(n - kernel) +
                                ")");
    }
    if (kernel < previous) throw not_nilpotent_error("kernel dimensions of powers are not monotone");
    if (kernel - previous > 0) jumps.push_back(kernel - previous);
    previous = kernel;
    if (kernel == n) break;
  }
  try {
    return Partition(std::move(jumps));
  } catch (const domain_error&) {
    throw not_nilpotent_error("kernel jumps do not form a partition; rank tolerance too loose or tight");
  }
}

/// Jordan type of a nilpotent matrix: the conjugate of its kernel partition.
inline Partition jordan_type(const ComplexMatrix& a, std::optional<double> rank_tol = std::nullopt) {
  return conjugate_partition(kernel_partition(a, rank_tol));
}

struct RigidityResult {
  double a_est = 0.0;
  double residual = 0.0;
};

/// Criticality test for K on the adjoint orbit. With the neutral element
/// H = [A^*, A], critical points satisfy [H, A] = a A with a < 0;
/// a_est is the least-squares fit Re(H A, A) / |A|^2 and residual is
/// |[H, A] - a_est A|.
inline RigidityResult rigidity_residual(const ComplexMatrix& a) {
  require_square_nonzero(a, "rigidity_residual");
  const ComplexMatrix h = commutator(a.adjoint(), a);
  const ComplexMatrix bracket = commutator(h, a);
  RigidityResult out;
  out.a_est = trace_inner(bracket, a).real() / norm_sq(a);
  out.residual = (bracket - out.a_est * a).norm();
  return out;
}

/// max(|[H, X] + 2X|, |[H, X^*] - 2X^*|) for X = X^lambda, H = [X^*, X].
inline double sl2_check(const Partition& p) {
  if (p.is_degenerate()) throw degenerate_error("sl2_check: (" + p.to_string() + ") gives the zero matrix");
  const ComplexMatrix x = standard_nilpotent(p);
  const ComplexMatrix xs = x.adjoint();
  const ComplexMatrix h = commutator(xs, x);
  const double e1 = (commutator(h, x) + 2.0 * x).norm();
  const double e2 = (commutator(h, xs) - 2.0 * xs).norm();
  return std::max(e1, e2);
}

// Type-R matrices.

/// Start index of each graded piece V_j inside C^n.
inline std::vector<Eigen::Index> grading_offsets(const Composition& r) {
  std::vector<Eigen::Index> off(r.length() + 1, 0);
  for (std::size_t j = 0; j < r.length(); ++j) off[j + 1] = off[j] + r[j];
  return off;
}

/// A type-R matrix is nonzero only when some column of the diagram has a
/// run of length >= 2, i.e. R^t has a part >= 2.
inline void require_nondegenerate_type(const Composition& r, const char* op) {
  if (r.positive_count() < 2 || conjugate_composition(r).is_degenerate()) {
    throw degenerate_error(std::string(op) + ": (" + r.to_string() +
                           ") has no two consecutive positive entries; every type-R matrix vanishes");
  }
}

/// Block sub-diagonal matrix with standard complex Gaussian blocks
/// V_j -> V_{j+1} (shape r_{j+1} x r_j). Deterministic in seed.
inline ComplexMatrix random_type_R(const Composition& r, std::uint64_t seed) {
  require_nondegenerate_type(r, "random_type_R");
  Rng rng = stream_for(seed, 0);
  const auto off = grading_offsets(r);
  ComplexMatrix a = ComplexMatrix::Zero(r.total(), r.total());
  for (std::size_t j = 0; j + 1 < r.length(); ++j) {
    if (r[j] == 0 || r[j + 1] == 0) continue;
    a.block(off[j + 1], off[j], r[j + 1], r[j]) = random_gaussian(r[j + 1], r[j], rng);
  }
  return a;
}

/// True when every entry outside the blocks V_j -> V_{j+1} is at most tol.
inline bool is_type_R(const ComplexMatrix& a, const Composition& r, double tol = 0.0) {
  if (!is_square(a) || a.rows() != r.total()) return false;
  const auto off = grading_offsets(r);
  ComplexMatrix masked = a;
  for (std::size_t j = 0; j + 1 < r.length(); ++j) {
    masked.block(off[j + 1], off[j], r[j + 1], r[j]).setZero();
  }
  return masked.cwiseAbs().maxCoeff() <= tol;
}

/// A Jordan chain of the canonical assignment: line `column` (0-based) of
/// every row in the maximal run [first_row, last_row] (0-based rows) with
/// r_j > column.
struct Chain {
  int column = 0;
  int first_row = 0;
  int last_row = 0;
  int length() const { return last_row - first_row + 1; }
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Canonical chain assignment: one chain per run of each diagram column.
/// The multiset of chain lengths is R^t.
inline std::vector<Chain> chain_assignment(const Composition& r) {
  std::vector<Chain> chains;
  const int rows = static_cast<int>(r.length());
  for (int column = 0; column < r.largest(); ++column) {
    int start = -1;
    for (int j = 0; j <= rows; ++j) {
      const bool inside = j < rows && r[static_cast<std::size_t>(j)] > column;
      if (inside && start < 0) start = j;
      if (!inside && start >= 0) {
        chains.push_back({column, start, j - 1});
        start = -1;
      }
    }
  }
  return chains;
}

/// Type-R matrix supported on a chain assignment: for each chain and each
/// link j -> j+1 inside it, line `column` of V_j maps to line `column` of
/// V_{j+1} with weight weight(chain, j), j the 0-based row of the link.
template <typename WeightFn>
ComplexMatrix type_R_from_chains(const Composition& r, const std::vector<Chain>& chains, WeightFn&& weight) {
  const auto off = grading_offsets(r);
  ComplexMatrix a = ComplexMatrix::Zero(r.total(), r.total());
  for (const Chain& c : chains) {
    for (int j = c.first_row; j < c.last_row; ++j) {
      const auto src = off[static_cast<std::size_t>(j)] + c.column;
      const auto dst = off[static_cast<std::size_t>(j) + 1] + c.column;
      a(dst, src) = weight(c, j);
    }
  }
  return a;
}

/// Weight sqrt((j - j0 + 1)(j1 - j)) on link j of a chain over rows [j0, j1].
inline double extremal_link_weight(const Chain& c, int j) {
  return std::sqrt(static_cast<double>(j - c.first_row + 1) * static_cast<double>(c.last_row - j));
}

/// Equality case of K(A) >= C_{R^t} for type-R matrices: each chain of
/// length l carries the weights of J_l, so the matrix is unitarily a
/// permutation of X^{R^t}.
inline ComplexMatrix extremal_type_R(const Composition& r) {
  require_nondegenerate_type(r, "extremal_type_R");
  return type_R_from_chains(r, chain_assignment(r), extremal_link_weight);
}

/// weights[j][s]: weight on line s of the link V_j -> V_{j+1} (0 when that
/// line has no outgoing link), j = 0..m-2.
inline std::vector<std::vector<double>> extremal_weights(const Composition& r) {
  std::vector<std::vector<double>> w(r.length() > 0 ? r.length() - 1 : 0,
                                     std::vector<double>(static_cast<std::size_t>(r.largest()), 0.0));
  for (const Chain& c : chain_assignment(r)) {
    for (int j = c.first_row; j < c.last_row; ++j) {
      w[static_cast<std::size_t>(j)][static_cast<std::size_t>(c.column)] = extremal_link_weight(c, j);
    }
  }
  return w;
}

/// max |a_j^s - a_{m-j}^s| over links and lines (1-based links j); zero for
/// symmetric compositions.
inline double extremal_symmetry_defect(const Composition& r) {
  const auto w = extremal_weights(r);
  double defect = 0.0;
  const std::size_t links = w.size();
  for (std::size_t l = 0; l < links; ++l) {
    for (std::size_t s = 0; s < w[l].size(); ++s) defect = std::max(defect, std::abs(w[l][s] - w[links - 1 - l][s]));
  }
  return defect;
}

}  // namespace nilcurv
