#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgrad/errors.hpp"

namespace pgrad {

// Exact rational with arbitrary-precision integer parts, always in lowest
// terms with a positive denominator. All gradient values flow through this
// type; no floating point appears anywhere in the value path.
class Rational {
public:
  using Int = boost::multiprecision::cpp_int;

  Rational() : num_(0), den_(1) {}
  Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  // Serialized "num/den", e.g. "-1/4", "1/1".
  std::string str() const { return num_.str() + "/" + den_.str(); }

  // Accepts "num/den" or a bare integer.
  static Rational parse(const std::string& s) {
    size_t slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Int(s));
      return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw UsageError("invalid rational '" + s + "'");
    }
  }

  // Smallest integer >= *this.
  Int ceil() const {
    Int q = num_ / den_;
    if (num_ > 0 && num_ % den_ != 0) ++q;
    return q;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw UsageError("division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
  void normalize() {
    if (den_ == 0) throw UsageError("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_;
  Int den_;
};

}  // namespace pgrad
