#pragma once

// Scalar plumbing shared by the double and exact-rational code paths.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <type_traits>

#include "errors.hpp"

namespace tsl {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

template <class T>
struct is_exact : std::false_type {};
template <>
struct is_exact<Rational> : std::true_type {};
template <class T>
inline constexpr bool is_exact_v = is_exact<T>::value;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class T>
T abs_of(const T& x)
{
  return x < 0 ? T(-x) : x;
}

template <class T>
T from_double(double x)
{
  if constexpr (is_exact_v<T>) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InexactArithmetic, "non-finite value in exact mode");
    return Rational(x);
  } else {
    return x;
  }
}

// Shortest form that reads back to the same double.
inline std::string to_string(double x)
{
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}
inline std::string to_string(const Rational& x) { return x.str(); }

// Parses "3", "-2/7", "0.25" into an exact rational (decimals are read exactly
// as written, not through a binary double).
inline Rational parse_rational(const std::string& s)
{
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational nr = parse_rational(s.substr(0, slash)), dr = parse_rational(s.substr(slash + 1));
    if (boost::multiprecision::denominator(nr) != 1 || boost::multiprecision::denominator(dr) != 1)
      throw Error(ErrorCode::InvalidSpec, "bad fraction '" + s + "'");
    BigInt n = boost::multiprecision::numerator(nr), d = boost::multiprecision::numerator(dr);
    if (d == 0) throw Error(ErrorCode::InvalidSpec, "zero denominator in '" + s + "'");
    return Rational(n, d);
  }
  auto dot = s.find('.');
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) return Rational(std::stod(s));
  // cpp_int reads a leading 0 as octal.
  auto decimal = [&](std::string d) {
    bool neg = !d.empty() && (d[0] == '-' || d[0] == '+');
    bool minus = neg && d[0] == '-';
    if (neg) d.erase(0, 1);
    d.erase(0, std::min(d.find_first_not_of('0'), d.size()));
    if (d.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::InvalidSpec, "bad number '" + s + "'");
    BigInt v = d.empty() ? BigInt(0) : BigInt(d);
    return minus ? BigInt(-v) : v;
  };
  if (dot == std::string::npos) {
    if (s.empty() || s == "-" || s == "+") throw Error(ErrorCode::InvalidSpec, "bad number '" + s + "'");
    return Rational(decimal(s));
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac = s.size() - dot - 1;
  BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac));
  if (digits == "-" || digits.empty()) throw Error(ErrorCode::InvalidSpec, "bad number '" + s + "'");
  return Rational(decimal(digits), den);
}

// Positive exponent r = num/den, or +infinity (den == 0). `approx` marks an
// exponent that is only known as a double.
struct Exponent {
  std::int64_t num = 1;
  std::int64_t den = 1;
  bool approx = false;
  double approx_value = 1.0;

  static Exponent rational(std::int64_t n, std::int64_t d)
  {
    if (d == 0 || n <= 0 || d < 0) throw Error(ErrorCode::InvalidSpec, "exponent must be a positive fraction");
    auto g = std::gcd(n, d);
    Exponent e;
    e.num = n / g;
    e.den = d / g;
    e.approx_value = static_cast<double>(e.num) / static_cast<double>(e.den);
    return e;
  }
  static Exponent infinity()
  {
    Exponent e;
    e.num = 1;
    e.den = 0;
    e.approx_value = kInf;
    return e;
  }
  // Recovers a small fraction from a double (denominator up to 10^4); falls back
  // to an approximate exponent otherwise.
  static Exponent from_double(double x)
  {
    if (!(x > 0)) throw Error(ErrorCode::InvalidSpec, "exponent must be positive");
    if (std::isinf(x)) return infinity();
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 40; ++it) {
      double a = std::floor(r);
      auto ai = static_cast<std::int64_t>(a);
      std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
      if (k2 > 10000) break;
      h0 = h1;
      h1 = h2;
      k0 = k1;
      k1 = k2;
      if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-14 * x) return rational(h1, k1);
      double frac = r - a;
      if (frac < 1e-15) break;
      r = 1.0 / frac;
    }
    Exponent e;
    e.approx = true;
    e.approx_value = x;
    e.num = 0;
    e.den = 1;
    return e;
  }

  bool infinite() const { return den == 0 && !approx; }
  bool is_one() const { return !approx && !infinite() && num == 1 && den == 1; }
  double value() const { return approx_value; }
  std::string str() const
  {
    if (infinite()) return "inf";
    if (approx) return to_string(approx_value);
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// Conjugate exponent p* = p/(p-1); p = 1 gives infinity.
inline Exponent conjugate(const Exponent& p)
{
  if (p.infinite()) return Exponent::rational(1, 1);
  if (p.approx) {
    if (p.approx_value <= 1.0) throw Error(ErrorCode::InvalidSpec, "p must be >= 1");
    return Exponent::from_double(p.approx_value / (p.approx_value - 1.0));
  }
  if (p.num < p.den) throw Error(ErrorCode::InvalidSpec, "p must be >= 1");
  if (p.num == p.den) return Exponent::infinity();
  return Exponent::rational(p.num, p.num - p.den);
}

inline Exponent reciprocal(const Exponent& e)
{
  if (e.infinite()) throw Error(ErrorCode::InvalidSpec, "reciprocal of infinite exponent");
  if (e.approx) return Exponent::from_double(1.0 / e.approx_value);
  return Exponent::rational(e.den, e.num);
}

inline Exponent times(const Exponent& a, const Exponent& b)
{
  if (a.infinite() || b.infinite()) throw Error(ErrorCode::InvalidSpec, "product with an infinite exponent");
  if (a.approx || b.approx) return Exponent::from_double(a.value() * b.value());
  return Exponent::rational(a.num * b.num, a.den * b.den);
}

template <class T>
T ipow(const T& x, std::int64_t k)
{
  if (k < 0) return T(1) / ipow(x, -k);
  T r(1), b(x);
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

// Largest r >= 0 with r^k <= n.
inline BigInt integer_root(const BigInt& n, std::int64_t k)
{
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "root of negative integer");
  if (n < 2 || k == 1) return n;
  if (k == 2) return boost::multiprecision::sqrt(n);
  std::size_t bits = boost::multiprecision::msb(n) + 1;
  BigInt lo = 0, hi = BigInt(1) << (bits / static_cast<std::size_t>(k) + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) >> 1;
    if (ipow(mid, k) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline Rational exact_root(const Rational& x, std::int64_t k)
{
  if (k == 1) return x;
  BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  BigInt rn = integer_root(n, k), rd = integer_root(d, k);
  if (ipow(rn, k) != n || ipow(rd, k) != d)
    throw Error(ErrorCode::InexactArithmetic, "no exact " + std::to_string(k) + "-th root of " + x.str());
  return Rational(rn, rd);
}

// |x|^e. Exact mode throws InexactArithmetic when the result is irrational.
template <class T>
T pow_abs(const T& x, const Exponent& e)
{
  if (e.infinite()) throw Error(ErrorCode::InvalidSpec, "infinite exponent in pow_abs");
  if constexpr (is_exact_v<T>) {
    if (e.approx) throw Error(ErrorCode::InexactArithmetic, "approximate exponent in exact mode");
    return exact_root(ipow(abs_of(x), e.num), e.den);
  } else {
    if (!e.approx && e.den == 1) return ipow(std::fabs(x), e.num);
    return std::pow(std::fabs(x), e.value());
  }
}

}  // namespace tsl
