#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mwav {

// Exact rational arithmetic. Magnitudes stay tiny at desk scale, but
// comparisons go through 128-bit products so no pair of in-range values
// can overflow.
struct Ratio {
  long long num = 0;
  long long den = 1;

  Ratio() = default;
  Ratio(long long n) : num(n), den(1) {}
  Ratio(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.num, a.den * b.den);
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// A nonnegative ratio extended with +infinity, for approximation ratios.
struct ExtRatio {
  bool infinite = false;
  Ratio value;

  ExtRatio() = default;
  ExtRatio(Ratio v) : infinite(false), value(v) {}
  static ExtRatio inf() {
    ExtRatio r;
    r.infinite = true;
    return r;
  }

  friend bool operator==(const ExtRatio& a, const ExtRatio& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator<(const ExtRatio& a, const ExtRatio& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtRatio& a, const ExtRatio& b) { return !(b < a); }

  std::string str() const { return infinite ? "inf" : value.str(); }
};

}  // namespace mwav
