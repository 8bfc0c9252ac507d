// Exact rational arithmetic for the drift enumeration and anywhere a
// result is asserted "exactly".
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dualips {

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
  friend Rational operator*(Rational a, long long k) { return Rational(a.num * k, a.den); }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::domain_error("Rational: division by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }
  Rational operator-() const { return Rational(-num, den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "2", "-3/4" or a finite decimal like "1.9" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(text.substr(0, slash));
    long long d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  std::string intpart = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  if (frac.size() > 15) throw std::invalid_argument("parse_rational: too many decimal digits");
  bool negative = !intpart.empty() && intpart[0] == '-';
  long long ip = intpart.empty() || intpart == "-" ? 0 : std::stoll(intpart);
  long long scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  long long fp = frac.empty() ? 0 : std::stoll(frac);
  long long num = (negative ? -1 : 1) * ((ip < 0 ? -ip : ip) * scale + fp);
  return Rational(num, scale);
}

}  // namespace dualips
