#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace toughham {

// Exact rational with a dedicated +infinity value (den == 0, num == 1).
// Toughness of a complete graph is +infinity; everything else in the
// library stays finite and small, so int64 components with 128-bit
// cross-multiplication comparisons are safe.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    normalize();
  }

  static Rational infinity() {
    Rational r;
    r.num = 1;
    r.den = 0;
    return r;
  }

  bool is_infinite() const { return den == 0; }

  void normalize() {
    if (den == 0) {
      if (num <= 0) throw std::invalid_argument("rational: 0/0 or negative infinity");
      num = 1;
      return;
    }
    if (den < 0) {
      den = -den;
      num = -num;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.is_infinite()) return infinity();
    if (b.is_infinite()) throw std::invalid_argument("rational: subtracting infinity");
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_infinite()) return Rational(0);
    if (b.num == 0) throw std::invalid_argument("rational: division by zero");
    if (a.is_infinite()) return infinity();
    return Rational(a.num * b.den, a.den * b.num);
  }

  // floor(p/q) for finite values (used for s = floor(t/2)).
  std::int64_t floor() const {
    if (is_infinite()) throw std::invalid_argument("rational: floor of infinity");
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Parses "p", "p/q" or "inf". Throws std::invalid_argument on junk.
  static Rational parse(const std::string& s) {
    if (s == "inf" || s == "INF" || s == "infinity") return infinity();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      std::int64_t p = std::stoll(s.substr(0, slash));
      std::int64_t q = std::stoll(s.substr(slash + 1));
      if (q == 0) throw std::invalid_argument("zero denominator");
      return Rational(p, q);
    } catch (const std::exception&) {
      throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
  }
};

// |a| >= t * b with exact arithmetic; b is a count (component count).
inline bool at_least_times(std::int64_t a, const Rational& t, std::int64_t b) {
  if (t.is_infinite()) return b == 0;
  return static_cast<__int128>(a) * t.den >= static_cast<__int128>(t.num) * b;
}

}  // namespace toughham
