#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcs {

// All prices, bids, budgets and density thresholds are exact rationals so that
// tie-breaking and budget-boundary comparisons never depend on float rounding.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline long long floor_to_int(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q.convert_to<long long>();
}

// Accepts "3", "-3", "4.25", "1/4" and "3/8"-style strings.
Rational parse_rational(const std::string& text);

// Plain decimal rendering with up to `digits` fractional digits, exact
// fractions are rendered as "n/d" by operator<< already.
std::string to_decimal_string(const Rational& r, int digits = 12);

inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  std::string whole = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  bool neg = !whole.empty() && whole[0] == '-';
  if (whole == "-" || whole.empty()) whole = neg ? "-0" : "0";
  for (char c : frac)
    if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal: " + text);
  BigInt scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  BigInt num = BigInt(whole) * scale;
  BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
  num += neg ? -f : f;
  return Rational(num, scale);
}

inline std::string to_decimal_string(const Rational& r, int digits) {
  BigInt num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt whole = num / den;
  BigInt rem = num % den;
  std::string out = (neg ? "-" : "") + whole.str();
  if (rem == 0) return out;
  out += '.';
  for (int i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + (rem / den).convert_to<int>());
    rem %= den;
  }
  return out;
}

}  // namespace mcs
