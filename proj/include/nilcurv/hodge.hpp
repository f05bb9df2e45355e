#pragma once

// Curvature constants attached to Hodge numbers: the sharp horizontal
// bound -C_{R^t} for R = (h^{k,0}, ..., h^{0,k}), the weaker closed-form
// Calabi-Yau bound, the period-domain group G/V, the k-nilpotent bound,
// and the Riemann-surface constants (entropy floor, length scale).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilcurv/combinatorics.hpp"
#include "nilcurv/nilmat.hpp"
#include "nilcurv/rational.hpp"

namespace nilcurv {

/// Hodge numbers (h^{k,0}, h^{k-1,1}, ..., h^{0,k}) of a weight-k structure.
/// Construction does not require the palindrome h^{p,q} = h^{q,p}; the
/// curvature bounds check it.
class HodgeVector {
 public:
  HodgeVector(int weight, std::vector<int> numbers) : weight_(weight), numbers_(std::move(numbers)) {
    if (weight_ < 0) throw domain_error("Hodge weight must be nonnegative");
    if (numbers_.size() != static_cast<std::size_t>(weight_) + 1) {
      throw domain_error("weight " + std::to_string(weight_) + " needs " + std::to_string(weight_ + 1) +
                         " Hodge numbers, got " + std::to_string(numbers_.size()));
    }
    for (int h : numbers_) {
      if (h < 0) throw domain_error("Hodge numbers must be nonnegative");
    }
    if (total() < 1) throw domain_error("Hodge numbers must have a positive total");
  }

  /// Weight inferred as length - 1.
  explicit HodgeVector(const std::vector<int>& numbers) : HodgeVector(static_cast<int>(numbers.size()) - 1, numbers) {}

  static HodgeVector parse(std::string_view text) {
    auto numbers = detail::parse_int_list(text, "hodge vector");
    try {
      return HodgeVector(numbers);
    } catch (const domain_error& e) {
      throw parse_error(std::string("hodge vector '") + std::string(text) + "': " + e.what());
    }
  }

  int weight() const { return weight_; }
  const std::vector<int>& numbers() const { return numbers_; }
  int total() const {
    int t = 0;
    for (int h : numbers_) t += h;
    return t;
  }

  /// h^{p, k-p}.
  int h(int p) const { return numbers_[static_cast<std::size_t>(weight_ - p)]; }

  bool is_palindromic() const { return std::equal(numbers_.begin(), numbers_.end(), numbers_.rbegin()); }

  /// h^{k,0} = h^{0,k} = 1.
  bool is_calabi_yau() const { return weight_ >= 2 && numbers_.front() == 1 && numbers_.back() == 1; }

  Composition as_composition() const { return Composition(numbers_); }

  std::string to_string() const { return detail::join(numbers_); }

 private:
  int weight_ = 0;
  std::vector<int> numbers_;
};

inline void require_palindromic(const HodgeVector& h, const char* op) {
  if (!h.is_palindromic()) {
    throw domain_error(std::string(op) + ": Hodge numbers (" + h.to_string() + ") are not palindromic");
  }
}

/// -C_{R^t}, the sharp upper bound for holomorphic sectional curvature of
/// the period domain along horizontal directions.
inline Rational horizontal_curvature_bound(const HodgeVector& h) {
  require_palindromic(h, "horizontal_curvature_bound");
  const Partition rt = conjugate_composition(h.as_composition());
  if (rt.is_degenerate()) {
    throw degenerate_error("horizontal_curvature_bound: every chain of (" + h.to_string() + ") has length 1");
  }
  return -c_constant(rt);
}

/// The permutation of a Calabi-Yau vector used for the closed-form bound:
/// middle entry first (even weight), then the pairs h^{p,k-p}, h^{k-p,p}
/// moving outward, ending with n, n, 1, 1.
inline Composition interleaved_permutation(const HodgeVector& h) {
  const int k = h.weight();
  const int m = k / 2;
  std::vector<int> out;
  if (k % 2 == 0) {
    out.push_back(h.h(m));
    for (int q = 1; q <= m; ++q) {
      out.push_back(h.h(m - q));
      out.push_back(h.h(m + q));
    }
  } else {
    for (int q = 0; q <= m; ++q) {
      out.push_back(h.h(m - q));
      out.push_back(h.h(m + 1 + q));
    }
  }
  return Composition(std::move(out));
}

/// -2 / (k^2 + n (k-2)^2 + sum_{p=2}^{floor(k/2)} h^{p,k-p} (k-2p)^2) with
/// n = h^{k-1,1}; equals -D of interleaved_permutation(h).
inline Rational general_cy_bound(const HodgeVector& h) {
  require_palindromic(h, "general_cy_bound");
  if (!h.is_calabi_yau()) throw domain_error("general_cy_bound: (" + h.to_string() + ") is not a Calabi-Yau vector");
  const int k = h.weight();
  BigInt denom = BigInt(k) * k;
  if (k >= 3) denom += BigInt(h.h(k - 1)) * (k - 2) * (k - 2);
  for (int p = 2; p <= k / 2; ++p) denom += BigInt(h.h(p)) * (k - 2 * p) * (k - 2 * p);
  return Rational(BigInt(-2), denom);
}

struct PeriodDomainDescriptor {
  enum class Group { Symplectic, Orthogonal };
  Group group = Group::Symplectic;
  /// Sp(rank, R) with dim H = 2 rank.
  int rank = 0;
  /// SO(s, t).
  int s = 0;
  int t = 0;
  /// Compact isotropy factors, e.g. {"U(1)", "U(4)"} or {"U(1)", "SO(3)"}.
  std::vector<std::string> isotropy;

  std::string group_name() const {
    if (group == Group::Symplectic) return "Sp(" + std::to_string(rank) + ",R)";
    return "SO(" + std::to_string(s) + "," + std::to_string(t) + ")";
  }

  std::string isotropy_name() const {
    std::string out;
    for (std::size_t i = 0; i < isotropy.size(); ++i) out += (i ? "x" : "") + isotropy[i];
    return out;
  }
};

/// G/V for the period domain: odd weight 2m+1 gives Sp(n, R), dim H = 2n,
/// V = prod_{p<=m} U(h^{p,q}); even weight 2m gives SO(s, t) with s (t) the
/// sum of h^{p,q} over even (odd) p and V = prod_{p<m} U(h^{p,q}) x SO(h^{m,m}).
inline PeriodDomainDescriptor classify_period_domain(const HodgeVector& h) {
  PeriodDomainDescriptor d;
  const int k = h.weight();
  const int m = k / 2;
  if (k % 2 == 1) {
    d.group = PeriodDomainDescriptor::Group::Symplectic;
    for (int p = 0; p <= m; ++p) {
      d.rank += h.h(p);
      d.isotropy.push_back("U(" + std::to_string(h.h(p)) + ")");
    }
  } else {
    d.group = PeriodDomainDescriptor::Group::Orthogonal;
    for (int p = 0; p <= k; ++p) (p % 2 == 0 ? d.s : d.t) += h.h(p);
    for (int p = 0; p < m; ++p) d.isotropy.push_back("U(" + std::to_string(h.h(p)) + ")");
    d.isotropy.push_back("SO(" + std::to_string(h.h(m)) + ")");
  }
  return d;
}

/// -12 / (n (k^2 - 1) - s (k^2 - s^2)), s = n mod k: the bound for
/// k-nilpotent Higgs fields of rank n.
inline Rational k_nilpotent_bound(int n, int k) {
  if (k <= 1 || k > n) {
    throw domain_error("k_nilpotent_bound needs 1 < k <= n (got n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                       ")");
  }
  const BigInt bn = n;
  const BigInt bk = k;
  const BigInt s = n % k;
  return Rational(BigInt(-12), bn * (bk * bk - 1) - s * (bk * bk - s * s));
}

/// Square of the entropy floor sqrt(6 / (n (n^2 - 1))) for representations
/// of nilpotent polystable rank-n Higgs bundles; equals C_{(n)} / 2.
inline Rational entropy_lower_bound_squared(int n) {
  if (n < 2) throw domain_error("entropy_lower_bound needs n >= 2");
  return Rational(BigInt(6), BigInt(n) * (BigInt(n) * n - 1));
}

inline double entropy_lower_bound(int n) { return std::sqrt(entropy_lower_bound_squared(n).to_double()); }

/// (2 / C_lambda): translation lengths of tau_lambda o j are
/// sqrt(2 / C_lambda) times those of j.
inline Rational length_scale_squared(const Partition& p) { return Rational(2) / c_constant(p); }

inline double length_scale(const Partition& p) { return std::sqrt(length_scale_squared(p).to_double()); }

/// Builds the extremal type-R matrix for the Hodge numbers and returns
/// max(|K + bound|, reflection defect of the chain weights).
inline double verify_bound_attained(const HodgeVector& h) {
  const Rational bound = horizontal_curvature_bound(h);
  const Composition r = h.as_composition();
  const double k = k_value(extremal_type_R(r));
  return std::max(std::abs(k + bound.to_double()), extremal_symmetry_defect(r));
}

struct BoundReport {
  HodgeVector hodge;
  Partition conjugate;
  Rational sharp_bound;
  /// Present only for Calabi-Yau vectors.
  std::optional<Rational> general_bound;
  PeriodDomainDescriptor domain;
  std::string diagram;
};

inline BoundReport make_bound_report(const HodgeVector& h) {
  const Composition r = h.as_composition();
  BoundReport report{h, conjugate_composition(r), horizontal_curvature_bound(h), std::nullopt,
                     classify_period_domain(h), generalized_young_diagram(r)};
  if (h.is_calabi_yau()) report.general_bound = general_cy_bound(h);
  return report;
}

}  // namespace nilcurv
