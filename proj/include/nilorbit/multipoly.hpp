#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilorbit/rational.hpp"

namespace nilorbit {

using Exponents = std::vector<unsigned>;

/// Graded lexicographic order on exponent vectors: lower total degree sorts
/// first, ties broken lexicographically. Fixed globally so term maps and
/// printed forms are canonical.
struct GrlexLess {
    bool operator()(const Exponents &a, const Exponents &b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, Rational c);
    static MultiPoly variable(std::vector<std::string> vars, std::size_t index);

    const std::vector<std::string> &vars() const { return vars_; }
    const std::map<Exponents, Rational, GrlexLess> &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;
    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    bool uses_var(std::size_t var) const;

    void add_term(const Exponents &exp, const Rational &coeff);

    MultiPoly operator-() const;
    MultiPoly &operator+=(const MultiPoly &o);
    MultiPoly &operator-=(const MultiPoly &o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly &b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b);
    MultiPoly operator*(const Rational &c) const;
    MultiPoly pow(unsigned e) const;

    friend bool operator==(const MultiPoly &a, const MultiPoly &b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Exact evaluation; point length must equal the variable count.
    Rational eval(const std::vector<Rational> &point) const;

    /// Collects the polynomial as a map power-of-var -> coefficient
    /// polynomial (in the same variable list, with that variable absent).
    std::map<unsigned, MultiPoly> collect(std::size_t var) const;

    /// The same polynomial over a larger variable list; index_map[i] is the
    /// position of old variable i in new_vars.
    MultiPoly reindexed(std::vector<std::string> new_vars,
                        const std::vector<std::size_t> &index_map) const;

    /// Unique positive rational c such that (*this)/c has coprime integer
    /// coefficients. Zero polynomial yields 1.
    Rational content() const;

    /// Divides out the content and flips sign so the graded-lex leading
    /// coefficient is positive.
    MultiPoly content_normalized() const;

    /// Canonical rendering, terms in descending graded-lex order.
    std::string str() const;

  private:
    std::vector<std::string> vars_;
    std::map<Exponents, Rational, GrlexLess> terms_;

    void check_compatible(const MultiPoly &o) const;
};

/// Quotient of two polynomials over the same variables. Kept content-
/// normalized: numerator and denominator have integer coefficients with no
/// common integer factor and the denominator's leading coefficient is
/// positive. No polynomial-factor cancellation is attempted.
class RatFunction {
  public:
    RatFunction() = default;
    explicit RatFunction(MultiPoly num);
    RatFunction(MultiPoly num, MultiPoly den);

    static RatFunction constant(std::vector<std::string> vars, Rational c) {
        return RatFunction(MultiPoly::constant(std::move(vars), std::move(c)));
    }
    static RatFunction variable(std::vector<std::string> vars, std::size_t index) {
        return RatFunction(MultiPoly::variable(std::move(vars), index));
    }

    const MultiPoly &num() const { return num_; }
    const MultiPoly &den() const { return den_; }
    const std::vector<std::string> &vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunction operator-() const;
    friend RatFunction operator+(const RatFunction &a, const RatFunction &b);
    friend RatFunction operator-(const RatFunction &a, const RatFunction &b);
    friend RatFunction operator*(const RatFunction &a, const RatFunction &b);
    friend RatFunction operator/(const RatFunction &a, const RatFunction &b);

    /// Literal equality of the normalized representations.
    friend bool operator==(const RatFunction &a, const RatFunction &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Semantic equality via cross multiplication.
    bool equivalent(const RatFunction &o) const;

    /// Exact evaluation; throws ZeroSlope if the denominator vanishes at the
    /// point (the function is not defined there; no continuity extension).
    Rational eval(const std::vector<Rational> &point) const;

    /// Substitutes `value` for the given variable.
    RatFunction substituted(std::size_t var, const RatFunction &value) const;

    RatFunction reindexed(std::vector<std::string> new_vars,
                          const std::vector<std::size_t> &index_map) const;

    std::string str() const;

  private:
    MultiPoly num_, den_;

    void normalize();
};

/// Substitutes RatFunction values for the variables of a polynomial.
/// values[i] substitutes variable i; all values share one variable list,
/// which becomes the variable list of the result.
RatFunction subst_all(const MultiPoly &p, const std::vector<RatFunction> &values);

} // namespace nilorbit
