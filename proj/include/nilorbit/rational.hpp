#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nilorbit/errors.hpp"

namespace nilorbit {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. All arithmetic is exact.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
    static Rational parse(const std::string &s);

    const mpz_class &num() const { return v_.get_num(); }
    const mpz_class &den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.v_ >= b.v_; }

    Rational abs() const { return v_ < 0 ? -*this : *this; }
    Rational inverse() const;

    /// Serializes as "p/q", or "p" when the denominator is 1.
    std::string str() const;
    double to_double() const { return v_.get_d(); }

    const mpq_class &raw() const { return v_; }

  private:
    mpq_class v_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

/// Solves slope*t + offset = target exactly. Throws ZeroSlope when slope = 0.
Rational solve_affine(const Rational &slope, const Rational &offset, const Rational &target);

} // namespace nilorbit
