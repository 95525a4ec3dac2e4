#include <doctest.h>

#include "nilorbit/errors.hpp"
#include "nilorbit/multipoly.hpp"
#include "nilorbit/prng.hpp"
#include "nilorbit/rat_matrix.hpp"

using namespace nilorbit;

namespace {

RatMatrix from_longs(std::size_t rows, std::size_t cols, std::vector<long> vals) {
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = Rational(vals[r * cols + c]);
    return m;
}

} // namespace

TEST_CASE("rational basics and parsing") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational::parse("3/6").str() == "1/2");
    CHECK(Rational::parse("-7").str() == "-7");
    CHECK(Rational::parse(" 5 / 10 ").str() == "1/2");
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)).str() == "3/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("abc"), Error);
    CHECK(Rational(7, 2).den() == 2);
    CHECK(Rational(-7, 2).den() == 2); // denominator stays positive
}

TEST_CASE("solve_affine") {
    CHECK(solve_affine(Rational(1), Rational(0), Rational(5)) == Rational(5));
    CHECK(solve_affine(Rational(2), Rational(1), Rational(0)) == Rational(-1, 2));
    CHECK_THROWS_AS(solve_affine(Rational(0), Rational(1), Rational(0)), Error);
}

TEST_CASE("rref on worked examples") {
    auto id = RatMatrix::identity(2);
    auto r1 = rref(id);
    CHECK(r1.matrix == id);
    CHECK(r1.rank == 2);
    CHECK(r1.pivot_columns == std::vector<std::size_t>{0, 1});

    auto m2 = from_longs(2, 2, {0, 1, 0, 0});
    auto r2 = rref(m2);
    CHECK(r2.matrix == m2);
    CHECK(r2.rank == 1);
    CHECK(r2.pivot_columns == std::vector<std::size_t>{1});

    auto m3 = from_longs(2, 2, {1, 2, 2, 4});
    auto r3 = rref(m3);
    CHECK(r3.matrix == from_longs(2, 2, {1, 2, 0, 0}));
    CHECK(r3.rank == 1);
    CHECK(r3.pivot_columns == std::vector<std::size_t>{0});
}

TEST_CASE("kernel_basis worked examples") {
    CHECK(kernel_basis(RatMatrix::identity(3)).empty());

    auto zero23 = RatMatrix(2, 3);
    auto k0 = kernel_basis(zero23);
    CHECK(k0.size() == 3);

    RatMatrix m(1, 3);
    m.at(0, 0) = Rational(1);
    m.at(0, 2) = Rational(-1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 2);
    CHECK(k[0] == RatVector{Rational(1), Rational(0), Rational(1)});
    CHECK(k[1] == RatVector{Rational(0), Rational(1), Rational(0)});
}

TEST_CASE("rref idempotence and rank-nullity on random matrices") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t rows = 1 + rng.next() % 5, cols = 1 + rng.next() % 5;
        RatMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng.next() % 3 != 0) m.at(r, c) = rng.nonzero_digit();
        auto r1 = rref(m);
        auto r2 = rref(r1.matrix);
        CHECK(r2.matrix == r1.matrix);
        CHECK(r1.rank + kernel_basis(m).size() == cols);
        // m x = 0 for every kernel vector, exactly
        for (const auto &v : kernel_basis(m)) {
            auto img = m.apply(v);
            for (const auto &e : img) CHECK(e.is_zero());
        }
    }
}

TEST_CASE("poly_eval worked examples") {
    std::vector<std::string> xy{"x", "y"};
    auto three = MultiPoly::constant(xy, Rational(3));
    CHECK(three.eval({Rational(11), Rational(-4)}) == Rational(3));

    auto x = MultiPoly::variable(xy, 0);
    auto y = MultiPoly::variable(xy, 1);
    CHECK((x * y).eval({Rational(2), Rational(3)}) == Rational(6));
    CHECK((x * x - y).eval({Rational(3), Rational(4)}) == Rational(5));
    CHECK_THROWS_AS(x.eval({Rational(1)}), Error);
}

TEST_CASE("polynomial ring distributivity at random points") {
    std::vector<std::string> vars{"x", "y", "z"};
    SplitMix64 rng(7);
    auto random_poly = [&]() {
        MultiPoly p(vars);
        for (int t = 0; t < 4; ++t) {
            Exponents e{unsigned(rng.next() % 3), unsigned(rng.next() % 3),
                        unsigned(rng.next() % 2)};
            p.add_term(e, rng.nonzero_digit());
        }
        return p;
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_poly(), q = random_poly(), r = random_poly();
        auto lhs = (p + q) * r;
        auto rhs = p * r + q * r;
        CHECK(lhs == rhs);
        std::vector<Rational> pt{rng.nonzero_digit(), rng.nonzero_digit(),
                                 rng.nonzero_digit()};
        CHECK(lhs.eval(pt) == p.eval(pt) * r.eval(pt) + q.eval(pt) * r.eval(pt));
    }
}

TEST_CASE("grlex term order gives canonical strings") {
    std::vector<std::string> vars{"x", "y"};
    auto x = MultiPoly::variable(vars, 0);
    auto y = MultiPoly::variable(vars, 1);
    auto p = y + x * x + x * y * Rational(-2) + MultiPoly::constant(vars, Rational(1));
    CHECK(p.str() == "x^2 - 2*x*y + y + 1");
}

TEST_CASE("rational function normalization is canonical") {
    std::vector<std::string> vars{"x", "y"};
    auto x = MultiPoly::variable(vars, 0);
    auto y = MultiPoly::variable(vars, 1);

    RatFunction a(x * Rational(2), y * Rational(2)); // (2x)/(2y)
    RatFunction b(x, y);
    CHECK(a == b);

    // negative denominators are flipped
    RatFunction c(x, y * Rational(-1));
    RatFunction d(-x, y);
    CHECK(c == d);

    // arithmetic keeps exactness: x/y + x/y = 2x/y
    CHECK((b + b) == RatFunction(x * Rational(2), y));
    CHECK((b - b).is_zero());
    CHECK((b / b).equivalent(RatFunction(MultiPoly::constant(vars, Rational(1)))));

    CHECK_THROWS_AS(RatFunction(x, MultiPoly(vars)), Error);
}

TEST_CASE("rational function evaluation refuses vanishing denominators") {
    std::vector<std::string> vars{"x"};
    RatFunction f(MultiPoly::constant(vars, Rational(1)), MultiPoly::variable(vars, 0));
    CHECK(f.eval({Rational(2)}) == Rational(1, 2));
    CHECK_THROWS_AS(f.eval({Rational(0)}), Error);
}

TEST_CASE("content normalization") {
    std::vector<std::string> vars{"x", "y"};
    auto x = MultiPoly::variable(vars, 0);
    auto y = MultiPoly::variable(vars, 1);
    auto p = x * Rational(4, 3) + y * Rational(2, 3);
    auto n = p.content_normalized();
    CHECK(n == x * Rational(2) + y);
    auto neg = (-p).content_normalized();
    CHECK(neg == x * Rational(2) + y); // sign fixed by the leading term
}
