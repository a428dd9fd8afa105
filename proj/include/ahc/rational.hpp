#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ahc {

/// Exact rational on 64-bit integers, always kept reduced with positive
/// denominator.  Only used for the combinatorial coefficients, whose
/// factorials stay tiny at the supported dimensions.
class Rational {
public:
  Rational() = default;
  Rational(long long num) : num_(num) {}
  Rational(long long num, long long den) : num_(num), den_(den) { reduce(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  friend Rational operator+(const Rational &a, const Rational &b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational &a, const Rational &b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational &a, const Rational &b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational &a, const Rational &b) {
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rational factorial(int m) {
    if (m < 0)
      throw std::invalid_argument("factorial of negative integer");
    long long f = 1;
    for (int i = 2; i <= m; ++i)
      f *= i;
    return Rational(f);
  }

private:
  long long num_ = 0;
  long long den_ = 1;

  void reduce() {
    if (den_ == 0)
      throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }
};

} // namespace ahc
