#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "core/errors.h"

namespace tonemorph {

/// Exact rational with int64 terms, always normalized: den > 0, gcd(|num|, den) == 1.
/// Magnitudes stay small here (beat grids, bar lengths), so no overflow guards.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(int64_t n) : num(n), den(1) {}
  Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw Error("rational division by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }

  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }
  friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(Rational a, Rational b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator>(Rational a, Rational b) { return b < a; }
  friend bool operator>=(Rational a, Rational b) { return b <= a; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline Rational min(Rational a, Rational b) { return a < b ? a : b; }
inline Rational max(Rational a, Rational b) { return a < b ? b : a; }

/// Smallest integer >= a/b for b > 0.
inline int64_t ceil_div(int64_t a, int64_t b) { return a / b + ((a % b != 0 && (a ^ b) >= 0) ? 1 : 0); }

/// Parses "3", "3/4" or a plain decimal like "0.5". Throws ParseError otherwise.
inline Rational parse_rational(const std::string& text) {
  auto fail = [&] { throw ParseError("bad rational '" + text + "'"); };
  if (text.empty()) fail();
  size_t slash = text.find('/');
  size_t dot = text.find('.');
  try {
    if (slash != std::string::npos) {
      size_t used = 0;
      int64_t n = std::stoll(text.substr(0, slash), &used);
      if (used != slash) fail();
      int64_t d = std::stoll(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1 || d == 0) fail();
      return Rational(n, d);
    }
    if (dot != std::string::npos) {
      std::string frac = text.substr(dot + 1);
      if (frac.size() > 9) fail();
      size_t used = 0;
      int64_t whole = std::stoll(text.substr(0, dot), &used);
      if (used != dot) fail();
      int64_t den = 1;
      int64_t part = 0;
      if (!frac.empty()) {
        part = std::stoll(frac, &used);
        if (used != frac.size() || part < 0) fail();
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
      }
      bool neg = text[0] == '-';
      int64_t num = (whole < 0 ? -whole : whole) * den + part;
      return Rational(neg ? -num : num, den);
    }
    size_t used = 0;
    int64_t n = std::stoll(text, &used);
    if (used != text.size()) fail();
    return Rational(n);
  } catch (const std::invalid_argument&) {
    fail();
  } catch (const std::out_of_range&) {
    fail();
  }
  return Rational();  // unreachable
}

}  // namespace tonemorph
