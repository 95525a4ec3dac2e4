#include "nilorbit/rational.hpp"

#include <ostream>

namespace nilorbit {

Rational::Rational(long num, long den) {
    if (den == 0)
        throw Error(ErrorKind::parse, "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string &s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty())
        throw Error(ErrorKind::parse, "empty rational literal");
    mpq_class v;
    if (v.set_str(t, 10) != 0)
        throw Error(ErrorKind::parse, "bad rational literal: '" + s + "'");
    if (v.get_den() == 0)
        throw Error(ErrorKind::parse, "rational with zero denominator: '" + s + "'");
    v.canonicalize();
    return Rational(std::move(v));
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero())
        throw Error(ErrorKind::zero_slope, "division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero())
        throw Error(ErrorKind::zero_slope, "inverse of zero");
    return Rational(mpq_class(1) / v_);
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_str();
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

Rational solve_affine(const Rational &slope, const Rational &offset, const Rational &target) {
    if (slope.is_zero())
        throw Error(ErrorKind::zero_slope, "solve_affine: slope is zero");
    return (target - offset) / slope;
}

} // namespace nilorbit
