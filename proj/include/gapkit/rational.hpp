#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>

namespace gapkit {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// 40 decimal digits of working precision for boundary rechecks.
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;

inline std::string rational_str(const Rational& q) { return q.str(); }

inline Rational parse_rational(const std::string& s) { return Rational(s); }

// Shortest decimal string that round-trips the exact double.
inline std::string fmt_shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Fixed 20 significant digits; stable across runs and platforms with IEEE doubles.
inline std::string fmt_sig20(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.20g", v);
  return buf;
}

inline std::string fmt_g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

inline std::string decimal20(const BigFloat& v) { return v.str(20); }

inline std::string decimal20(const Rational& q) {
  return BigFloat(q).str(20);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad double literal: " + s);
  return v;
}

}  // namespace gapkit
