#pragma once

// Partition and composition calculus: dominance, union, conjugation of
// partitions and of compositions (run lengths of the generalized Young
// diagram), and the exact constants C_lambda and D_R.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nilcurv/errors.hpp"
#include "nilcurv/rational.hpp"

namespace nilcurv {

/// Weakly decreasing positive parts. The empty partition (total 0) is the
/// identity for union.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw domain_error("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw domain_error("partition parts must be weakly decreasing");
      total_ += parts_[i];
    }
  }

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Sorts and drops zeros; for callers holding an unordered multiset.
  static Partition from_multiset(std::vector<int> parts) {
    std::erase(parts, 0);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return total_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// True when every part is 1 (including the empty partition): X^lambda = 0.
  bool is_degenerate() const { return largest() < 2; }

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// Ordered nonnegative entries with a positive total. Zeros may appear
/// anywhere; they break runs in the generalized Young diagram.
class Composition {
 public:
  explicit Composition(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
      if (e < 0) throw domain_error("composition entries must be nonnegative");
      total_ += e;
    }
    if (total_ <= 0) throw domain_error("composition total must be positive");
  }

  Composition(std::initializer_list<int> entries) : Composition(std::vector<int>(entries)) {}

  explicit Composition(const Partition& p) : Composition(p.parts()) {}

  static Composition parse(std::string_view text);

  const std::vector<int>& entries() const { return entries_; }
  int total() const { return total_; }
  std::size_t length() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int largest() const { return *std::max_element(entries_.begin(), entries_.end()); }

  std::size_t positive_count() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](int e) { return e > 0; }));
  }

  bool is_symmetric() const { return std::equal(entries_.begin(), entries_.end(), entries_.rbegin()); }

  std::string to_string() const;

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> entries_;
  int total_ = 0;
};

enum class Dominance { Equal, Dominates, DominatedBy, Incomparable };

inline std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::Equal: return "Equal";
    case Dominance::Dominates: return "Dominates";
    case Dominance::DominatedBy: return "DominatedBy";
    case Dominance::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  if (text.empty()) throw parse_error(std::string(what) + ": empty input");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty() || token.size() > 9 ||
        !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw parse_error(std::string(what) + ": malformed entry '" + std::string(token) + "' in '" +
                        std::string(text) + "'");
    }
    out.push_back(std::stoi(std::string(token)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::string join(std::span<const int> values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  return os.str();
}

/// Prefix sums of `values`, zero-extended to `length`.
inline std::vector<long long> prefix_sums(std::span<const int> values, std::size_t length) {
  std::vector<long long> out(length, 0);
  long long acc = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i < values.size()) acc += values[i];
    out[i] = acc;
  }
  return out;
}

inline Dominance compare_prefix_sums(std::span<const int> lhs, std::span<const int> rhs) {
  const std::size_t len = std::max(lhs.size(), rhs.size());
  const auto a = prefix_sums(lhs, len);
  const auto b = prefix_sums(rhs, len);
  bool some_greater = false;
  bool some_less = false;
  for (std::size_t i = 0; i < len; ++i) {
    some_greater |= a[i] > b[i];
    some_less |= a[i] < b[i];
  }
  if (some_greater && some_less) return Dominance::Incomparable;
  if (some_greater) return Dominance::Dominates;
  if (some_less) return Dominance::DominatedBy;
  return Dominance::Equal;
}

}  // namespace detail

inline Partition Partition::parse(std::string_view text) {
  auto parts = detail::parse_int_list(text, "partition");
  try {
    return Partition(std::move(parts));
  } catch (const domain_error& e) {
    throw parse_error(std::string("partition '") + std::string(text) + "': " + e.what());
  }
}

inline std::string Partition::to_string() const { return detail::join(parts_); }

inline Composition Composition::parse(std::string_view text) {
  auto entries = detail::parse_int_list(text, "composition");
  try {
    return Composition(std::move(entries));
  } catch (const domain_error& e) {
    throw parse_error(std::string("composition '") + std::string(text) + "': " + e.what());
  }
}

inline std::string Composition::to_string() const { return detail::join(entries_); }

/// Dominance order on partitions of the same total.
inline Dominance dominates(const Partition& lhs, const Partition& rhs) {
  if (lhs.total() != rhs.total()) {
    throw domain_error("dominance requires equal totals (" + std::to_string(lhs.total()) + " vs " +
                       std::to_string(rhs.total()) + ")");
  }
  return detail::compare_prefix_sums(lhs.parts(), rhs.parts());
}

/// Prefix-sum dominance extended to compositions of the same total.
inline Dominance dominates(const Composition& lhs, const Composition& rhs) {
  if (lhs.total() != rhs.total()) throw domain_error("dominance requires equal totals");
  return detail::compare_prefix_sums(lhs.entries(), rhs.entries());
}

/// Weak dominance lhs <= rhs.
inline bool dominated_or_equal(const Partition& lhs, const Partition& rhs) {
  const auto d = dominates(lhs, rhs);
  return d == Dominance::Equal || d == Dominance::DominatedBy;
}

/// Multiset union of parts.
inline Partition partition_union(const Partition& lhs, const Partition& rhs) {
  std::vector<int> merged;
  merged.reserve(lhs.length() + rhs.length());
  std::merge(lhs.parts().begin(), lhs.parts().end(), rhs.parts().begin(), rhs.parts().end(),
             std::back_inserter(merged), std::greater<>());
  return Partition(std::move(merged));
}

/// Transpose of the Young diagram: part j counts parts >= j.
inline Partition conjugate_partition(const Partition& p) {
  std::vector<int> out(static_cast<std::size_t>(p.largest()), 0);
  for (int part : p.parts()) {
    for (int j = 0; j < part; ++j) ++out[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(out));
}

/// Column i (1-based) of the generalized Young diagram of r, read as the
/// lengths of maximal runs of consecutive rows j with r_j >= i, top to bottom.
inline std::vector<std::vector<int>> conjugate_set_partition(const Composition& r) {
  std::vector<std::vector<int>> columns;
  const int height = r.largest();
  columns.reserve(static_cast<std::size_t>(height));
  for (int column = 1; column <= height; ++column) {
    std::vector<int> runs;
    int run = 0;
    for (int entry : r.entries()) {
      if (entry >= column) {
        ++run;
      } else if (run > 0) {
        runs.push_back(run);
        run = 0;
      }
    }
    if (run > 0) runs.push_back(run);
    columns.push_back(std::move(runs));
  }
  return columns;
}

/// The conjugate partition R^t: every run length of every column, sorted.
inline Partition conjugate_composition(const Composition& r) {
  std::vector<int> all;
  for (const auto& column : conjugate_set_partition(r)) all.insert(all.end(), column.begin(), column.end());
  return Partition::from_multiset(std::move(all));
}

/// Entries sorted decreasingly with zeros dropped.
inline Partition induced_partition(const Composition& r) { return Partition::from_multiset(r.entries()); }

/// Window-minimum profile a^1..a^m of a composition of length m:
///   a^i = sum_{l <= m-i} (r_l - min_{l <= t <= l+i} r_t) + sum_{p > m-i} r_p.
/// a^i is a lower bound for dim ker A^i of a type-R matrix, attained
/// generically; its successive differences form the conjugate of R^t.
inline std::vector<int> dual_profile(const Composition& r) {
  const auto& e = r.entries();
  const std::size_t m = e.size();
  std::vector<int> profile(m, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    int value = 0;
    for (std::size_t l = 0; l + i < m; ++l) {
      const int window_min = *std::min_element(e.begin() + static_cast<std::ptrdiff_t>(l),
                                               e.begin() + static_cast<std::ptrdiff_t>(l + i + 1));
      value += e[l] - window_min;
    }
    for (std::size_t p = m - i; p < m; ++p) value += e[p];
    profile[i - 1] = value;
  }
  return profile;
}

/// Successive differences of dual_profile with zeros discarded.
inline std::vector<int> dual_profile_differences(const Composition& r) {
  const auto profile = dual_profile(r);
  std::vector<int> diffs;
  int previous = 0;
  for (int a : profile) {
    if (a - previous != 0) diffs.push_back(a - previous);
    previous = a;
  }
  return diffs;
}

/// C_lambda = 12 / sum lambda_p (lambda_p^2 - 1), the minimum of K on the
/// nilpotent orbit of Jordan type lambda.
inline Rational c_constant(const Partition& p) {
  BigInt denom = 0;
  for (int part : p.parts()) {
    const BigInt x = part;
    denom += x * (x * x - 1);
  }
  if (denom == 0) throw degenerate_error("C is undefined for (" + p.to_string() + "): every part equals 1");
  return Rational(BigInt(12), denom);
}

/// D_R = 4 / sum p (p - 1) r_p with 1-based positions p.
inline Rational d_constant(const Composition& r) {
  BigInt denom = 0;
  for (std::size_t i = 0; i < r.length(); ++i) {
    const BigInt p = static_cast<long long>(i + 1);
    denom += p * (p - 1) * r[i];
  }
  if (denom == 0) throw degenerate_error("D is undefined for (" + r.to_string() + "): all mass at position 1");
  return Rational(BigInt(4), denom);
}

// Enumeration helpers.

/// All partitions of n in reverse lexicographic order ((n) first).
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

/// All 2^(n-1) compositions of n into positive entries.
inline std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  if (n <= 0) return out;
  const unsigned long count = 1UL << (n - 1);
  out.reserve(count);
  for (unsigned long mask = 0; mask < count; ++mask) {
    std::vector<int> entries;
    int run = 1;
    for (int bit = 0; bit < n - 1; ++bit) {
      if (mask & (1UL << bit)) {
        entries.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    entries.push_back(run);
    out.emplace_back(std::move(entries));
  }
  return out;
}

/// Largest partition of n with all parts <= k: (k^{n/k}, n mod k).
inline Partition max_bounded_partition(int n, int k) {
  std::vector<int> parts(static_cast<std::size_t>(n / k), k);
  if (n % k != 0) parts.push_back(n % k);
  return Partition(std::move(parts));
}

// Diagram rendering.

/// Young diagram, one row of '#' per part.
inline std::string young_diagram(const Partition& p, char box = '#') {
  std::string out;
  for (int part : p.parts()) {
    out.append(static_cast<std::size_t>(part), box);
    out.push_back('\n');
  }
  return out;
}

/// Generalized Young diagram: row j has r_j boxes, left aligned; empty rows
/// for zero entries are drawn as '.'.
inline std::string generalized_young_diagram(const Composition& r, char box = '#') {
  std::string out;
  for (int entry : r.entries()) {
    if (entry == 0) {
      out.push_back('.');
    } else {
      out.append(static_cast<std::size_t>(entry), box);
    }
    out.push_back('\n');
  }
  return out;
}

/// Column box counts of a rendered diagram; inverse of young_diagram up to
/// conjugation.
inline std::vector<int> diagram_column_counts(std::string_view diagram, char box = '#') {
  std::vector<int> counts;
  std::size_t col = 0;
  for (char c : diagram) {
    if (c == '\n') {
      col = 0;
      continue;
    }
    if (c == box) {
      if (counts.size() <= col) counts.resize(col + 1, 0);
      ++counts[col];
    }
    ++col;
  }
  return counts;
}

/// "({6}, {6}, {1, 2}, {1, 1})"
inline std::string format_set_partition(const std::vector<std::vector<int>>& columns) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? ", " : "") << '{';
    for (std::size_t j = 0; j < columns[i].size(); ++j) os << (j ? ", " : "") << columns[i][j];
    os << '}';
  }
  os << ')';
  return os.str();
}

}  // namespace nilcurv
