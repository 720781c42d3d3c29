#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace dop {

// Counts and population sizes overflow 64 bits quickly (vocabulary^k), so the
// exact side of the engine runs on arbitrary precision throughout.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }
inline double to_double(double x) { return x; }

// log2-aware log so that rationals whose parts exceed double range still convert.
inline double log_bigint(const BigInt& n) {
  if (n <= 0) return -std::numeric_limits<double>::infinity();
  unsigned top = boost::multiprecision::msb(n);
  if (top < 900) return std::log(n.template convert_to<double>());
  BigInt head = n >> (top - 52);
  return std::log(head.template convert_to<double>()) +
         static_cast<double>(top - 52) * std::numbers::ln2_v<double>;
}

// Probability carried in natural-log space; zero is -inf. Multiplication is
// cheap, addition goes through log1p(exp(.)) to keep precision.
struct LogDouble {
  double lg = -std::numeric_limits<double>::infinity();

  LogDouble() = default;
  static LogDouble from_log(double l) {
    LogDouble w;
    w.lg = l;
    return w;
  }
  static LogDouble from_double(double v) {
    return from_log(v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity());
  }
  static LogDouble zero() { return LogDouble{}; }
  static LogDouble one() { return from_log(0.0); }

  bool is_zero() const { return std::isinf(lg) && lg < 0; }
  double value() const { return std::exp(lg); }

  friend LogDouble operator*(LogDouble a, LogDouble b) { return from_log(a.lg + b.lg); }
  friend LogDouble operator/(LogDouble a, LogDouble b) {
    if (a.is_zero()) return zero();
    return from_log(a.lg - b.lg);
  }
  friend LogDouble operator+(LogDouble a, LogDouble b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = std::max(a.lg, b.lg);
    double lo = std::min(a.lg, b.lg);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }
  LogDouble& operator*=(LogDouble o) {
    *this = *this * o;
    return *this;
  }
  LogDouble& operator+=(LogDouble o) {
    *this = *this + o;
    return *this;
  }
  friend bool operator<(LogDouble a, LogDouble b) { return a.lg < b.lg; }
  friend bool operator>(LogDouble a, LogDouble b) { return b < a; }
  friend bool operator<=(LogDouble a, LogDouble b) { return !(b < a); }
  friend bool operator>=(LogDouble a, LogDouble b) { return !(a < b); }
  friend bool operator==(LogDouble a, LogDouble b) {
    return a.lg == b.lg || (a.is_zero() && b.is_zero());
  }
  friend bool operator!=(LogDouble a, LogDouble b) { return !(a == b); }
};

inline double to_double(LogDouble w) { return w.value(); }

// The probability algorithms are templated on the scalar: Rational for exact
// test-mode arithmetic, LogDouble (or plain double) for run mode.
template <class Num> Num num_cast(const Rational& q);

template <> inline Rational num_cast<Rational>(const Rational& q) { return q; }
template <> inline double num_cast<double>(const Rational& q) { return to_double(q); }
template <> inline LogDouble num_cast<LogDouble>(const Rational& q) {
  if (q == 0) return LogDouble::zero();
  return LogDouble::from_log(log_bigint(boost::multiprecision::numerator(q)) -
                             log_bigint(boost::multiprecision::denominator(q)));
}

template <class Num> Num num_zero();
template <> inline Rational num_zero<Rational>() { return Rational(0); }
template <> inline double num_zero<double>() { return 0.0; }
template <> inline LogDouble num_zero<LogDouble>() { return LogDouble::zero(); }

template <class Num> Num num_one();
template <> inline Rational num_one<Rational>() { return Rational(1); }
template <> inline double num_one<double>() { return 1.0; }
template <> inline LogDouble num_one<LogDouble>() { return LogDouble::one(); }

}  // namespace dop
