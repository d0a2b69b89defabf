#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sld {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic for satisfaction values, thresholds and
// discount values. Always stored in lowest terms with a positive
// denominator; every comparison is an exact integer cross product.
// Decimal output is display-only.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(BigInt(n)) {}
  Rational(int n) : v_(BigInt(n)) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0)
      throw std::invalid_argument("rational: zero denominator");
    // boost's pair constructor wants the sign on the numerator
    if (den < 0)
      v_ = Raw(-num, -den);
    else
      v_ = Raw(num, den);
  }
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  // Accepts "p/q", "-p/q" or a plain integer.
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos)
        return Rational(BigInt(text), BigInt(1));
      return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("rational: cannot parse '" + text + "'");
    }
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }
  bool in_unit_interval() const { return v_ >= 0 && v_ <= 1; }

  Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero())
      throw std::invalid_argument("rational: division by zero");
    return Rational(v_ / o.v_);
  }
  Rational operator-() const { return Rational(-v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  Rational pow(unsigned long e) const {
    Rational acc = one();
    Rational base = *this;
    while (e > 0) {
      if (e & 1)
        acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::string str() const {
    if (denominator() == 1)
      return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  // Display-only approximation.
  double approx() const {
    BigInt n = numerator(), d = denominator();
    bool neg = n < 0;
    if (neg)
      n = -n;
    if (n == 0)
      return 0.0;
    // Shift both operands into double range before converting.
    unsigned long nb = boost::multiprecision::msb(n);
    unsigned long db = boost::multiprecision::msb(d);
    unsigned long top = nb > db ? nb : db;
    if (top > 512) {
      unsigned long shift = top - 512;
      n >>= shift;
      d >>= shift;
      if (d == 0)
        return neg ? -std::numeric_limits<double>::infinity()
                   : std::numeric_limits<double>::infinity();
      if (n == 0)
        return 0.0;
    }
    double r = static_cast<double>(n) / static_cast<double>(d);
    return neg ? -r : r;
  }

private:
  using Raw = boost::multiprecision::cpp_rational;
  explicit Rational(Raw v) : v_(std::move(v)) {}
  Raw v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace sld
