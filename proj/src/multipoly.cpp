#include "nilorbit/multipoly.hpp"

#include <numeric>
#include <sstream>

#include "nilorbit/errors.hpp"

namespace nilorbit {

bool GrlexLess::operator()(const Exponents &a, const Exponents &b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return a < b;
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, Rational c) {
    MultiPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(Exponents(p.vars_.size(), 0), std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index) {
    MultiPoly p(std::move(vars));
    if (index >= p.vars_.size())
        throw Error(ErrorKind::arity_mismatch, "variable index out of range");
    Exponents e(p.vars_.size(), 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Exponents(vars_.size(), 0);
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant())
        throw Error(ErrorKind::arity_mismatch, "constant_value of non-constant polynomial");
    return terms_.begin()->second;
}

unsigned MultiPoly::total_degree() const {
    if (terms_.empty()) return 0;
    const Exponents &e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0u);
}

unsigned MultiPoly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto &[e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

bool MultiPoly::uses_var(std::size_t var) const {
    for (const auto &[e, c] : terms_)
        if (e[var] > 0) return true;
    return false;
}

void MultiPoly::add_term(const Exponents &exp, const Rational &coeff) {
    if (exp.size() != vars_.size())
        throw Error(ErrorKind::arity_mismatch, "exponent vector arity mismatch");
    if (coeff.is_zero()) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::check_compatible(const MultiPoly &o) const {
    if (vars_ != o.vars_)
        throw Error(ErrorKind::arity_mismatch, "polynomials over different variable lists");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p(vars_);
    for (const auto &[e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &o) {
    check_compatible(o);
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly &MultiPoly::operator-=(const MultiPoly &o) {
    check_compatible(o);
    for (const auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
    a.check_compatible(b);
    MultiPoly p(a.vars_);
    for (const auto &[ea, ca] : a.terms_)
        for (const auto &[eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

MultiPoly MultiPoly::operator*(const Rational &c) const {
    MultiPoly p(vars_);
    if (c.is_zero()) return p;
    for (const auto &[e, k] : terms_) p.terms_.emplace(e, k * c);
    return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(vars_, Rational(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

Rational MultiPoly::eval(const std::vector<Rational> &point) const {
    if (point.size() != vars_.size())
        throw Error(ErrorKind::arity_mismatch, "evaluation point arity mismatch");
    Rational sum(0);
    for (const auto &[e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

std::map<unsigned, MultiPoly> MultiPoly::collect(std::size_t var) const {
    std::map<unsigned, MultiPoly> out;
    for (const auto &[e, c] : terms_) {
        unsigned k = e[var];
        Exponents rest = e;
        rest[var] = 0;
        auto [it, fresh] = out.try_emplace(k, MultiPoly(vars_));
        it->second.add_term(rest, c);
    }
    return out;
}

MultiPoly MultiPoly::reindexed(std::vector<std::string> new_vars,
                               const std::vector<std::size_t> &index_map) const {
    if (index_map.size() != vars_.size())
        throw Error(ErrorKind::arity_mismatch, "reindex map arity mismatch");
    MultiPoly p(std::move(new_vars));
    for (const auto &[e, c] : terms_) {
        Exponents ne(p.vars_.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (index_map[i] >= ne.size())
                throw Error(ErrorKind::arity_mismatch, "reindex map out of range");
            ne[index_map[i]] += e[i];
        }
        p.add_term(ne, c);
    }
    return p;
}

Rational MultiPoly::content() const {
    if (terms_.empty()) return Rational(1);
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto &[e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    return Rational(mpq_class(num_gcd, den_lcm));
}

MultiPoly MultiPoly::content_normalized() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (terms_.rbegin()->second.sign() < 0) c = -c;
    return *this * c.inverse();
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        bool has_vars = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (has_vars) mono << "*";
            mono << vars_[i];
            if (e[i] > 1) mono << "^" << e[i];
            has_vars = true;
        }
        if (!has_vars) {
            os << a.str();
        } else if (a.is_one()) {
            os << mono.str();
        } else {
            os << a.str() << "*" << mono.str();
        }
        first = false;
    }
    return os.str();
}

RatFunction::RatFunction(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.vars(), Rational(1))) {
    normalize();
}

RatFunction::RatFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.vars() != den_.vars())
        throw Error(ErrorKind::arity_mismatch, "rational function over mixed variable lists");
    normalize();
}

void RatFunction::normalize() {
    if (den_.is_zero())
        throw Error(ErrorKind::zero_slope, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(num_.vars(), Rational(1));
        return;
    }
    // Joint content: after scaling, numerator and denominator are integer
    // polynomials with coprime coefficient sets, denominator leading
    // coefficient positive.
    Rational cn = num_.content(), cd = den_.content();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), cn.num().get_mpz_t(), cd.num().get_mpz_t());
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), cn.den().get_mpz_t(), cd.den().get_mpz_t());
    Rational joint{mpq_class(g, l)};
    if (den_.terms().rbegin()->second.sign() < 0) joint = -joint;
    Rational inv = joint.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
}

RatFunction RatFunction::operator-() const {
    RatFunction r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunction operator+(const RatFunction &a, const RatFunction &b) {
    if (a.den_ == b.den_) return RatFunction(a.num_ + b.num_, a.den_);
    return RatFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunction operator-(const RatFunction &a, const RatFunction &b) {
    if (a.den_ == b.den_) return RatFunction(a.num_ - b.num_, a.den_);
    return RatFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunction operator*(const RatFunction &a, const RatFunction &b) {
    return RatFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunction operator/(const RatFunction &a, const RatFunction &b) {
    if (b.is_zero())
        throw Error(ErrorKind::zero_slope, "division by zero rational function");
    return RatFunction(a.num_ * b.den_, a.den_ * b.num_);
}

bool RatFunction::equivalent(const RatFunction &o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

Rational RatFunction::eval(const std::vector<Rational> &point) const {
    Rational d = den_.eval(point);
    if (d.is_zero())
        throw Error(ErrorKind::zero_slope, "rational function denominator vanishes at point");
    return num_.eval(point) / d;
}

RatFunction RatFunction::substituted(std::size_t var, const RatFunction &value) const {
    if (value.vars() != num_.vars())
        throw Error(ErrorKind::arity_mismatch, "substitution over a different variable list");
    auto subst_poly = [&](const MultiPoly &p) {
        RatFunction acc = RatFunction::constant(value.vars(), Rational(0));
        for (const auto &[k, coeff] : p.collect(var)) {
            RatFunction term{coeff};
            for (unsigned i = 0; i < k; ++i) term = term * value;
            acc = acc + term;
        }
        return acc;
    };
    return subst_poly(num_) / subst_poly(den_);
}

RatFunction RatFunction::reindexed(std::vector<std::string> new_vars,
                                   const std::vector<std::size_t> &index_map) const {
    return RatFunction(num_.reindexed(new_vars, index_map), den_.reindexed(new_vars, index_map));
}

std::string RatFunction::str() const {
    if (is_polynomial()) {
        Rational d = den_.constant_value();
        if (d.is_one()) return num_.str();
        return "(" + num_.str() + ")/" + d.str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunction subst_all(const MultiPoly &p, const std::vector<RatFunction> &values) {
    if (values.size() != p.vars().size())
        throw Error(ErrorKind::arity_mismatch, "subst_all arity mismatch");
    std::vector<std::string> out_vars =
        values.empty() ? p.vars() : values.front().vars();
    RatFunction acc = RatFunction::constant(out_vars, Rational(0));
    for (const auto &[e, c] : p.terms()) {
        RatFunction term = RatFunction::constant(out_vars, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term = term * values[i];
        acc = acc + term;
    }
    return acc;
}

} // namespace nilorbit
