#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilcurv {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) : value_(make(num, den)) {}
  Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  double to_double() const { return value_.convert_to<double>(); }

  bool is_negative() const { return value_ < 0; }

  /// "p/q" in lowest terms; the sign sits on the numerator ("-2/13").
  std::string to_string() const {
    return numerator().str() + "/" + denominator().str();
  }

  Rational operator-() const { return Rational(-value_); }
  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(a.value_ / b.value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  /// Inverse of to_string(); accepts "p/q", "-p/q" or a bare integer.
  static Rational parse(const std::string& text);

 private:
  using Storage = boost::multiprecision::cpp_rational;
  explicit Rational(Storage v) : value_(std::move(v)) {}

  static Storage make(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return den < 0 ? Storage(-num, -den) : Storage(num, den);
  }
  Storage value_{0};
};

}  // namespace nilcurv

#include "nilcurv/errors.hpp"

namespace nilcurv {

inline Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in rational '" + text + "'");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw parse_error("malformed rational '" + text + "'");
  }
}

}  // namespace nilcurv
