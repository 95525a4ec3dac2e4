#include <doctest.h>

#include "nilorbit/catalog.hpp"
#include "nilorbit/errors.hpp"
#include "nilorbit/io.hpp"
#include "nilorbit/prng.hpp"

using namespace nilorbit;

namespace {

Vector random_vector(const AlgebraPtr &alg, SplitMix64 &rng) {
    return Vector(alg, rng.nonzero_coords(alg->dim()));
}

Covector random_covector(const AlgebraPtr &alg, SplitMix64 &rng) {
    return Covector(alg, rng.nonzero_coords(alg->dim()));
}

std::vector<AlgebraPtr> all_catalog_algebras() {
    std::vector<AlgebraPtr> out;
    for (const auto &e : catalog_entries())
        if (e.params == 0) out.push_back(catalog_algebra(e.name));
    return out;
}

} // namespace

TEST_CASE("validation accepts the catalog and rejects bad structures") {
    auto h3 = catalog_algebra("h3");
    CHECK(h3->dim() == 3);
    CHECK(h3->nilpotency_class() == 2);

    auto f4 = catalog_algebra("f4");
    CHECK(f4->nilpotency_class() == 3);

    // k <= max(i,j)
    StructureMap bad;
    bad[{1, 2, 1}] = Rational(1);
    CHECK_THROWS_WITH_AS(NilpotentLieAlgebra::validated("bad", 2, bad),
                         doctest::Contains("TriangularityViolation(1,2,1)"), Error);

    // triangular but Jacobi fails: [Z1,Z2]=Z3, [Z2,Z3]=Z4, [Z1,Z4]=Z5
    StructureMap nj;
    nj[{1, 2, 3}] = Rational(1);
    nj[{2, 3, 4}] = Rational(1);
    nj[{1, 4, 5}] = Rational(1);
    CHECK_THROWS_WITH_AS(NilpotentLieAlgebra::validated("nj", 5, nj),
                         doctest::Contains("JacobiViolation"), Error);

    CHECK_THROWS_AS(NilpotentLieAlgebra::validated("empty", 0, {}), Error);
}

TEST_CASE("bracket on h3 and antisymmetry") {
    auto h3 = catalog_algebra("h3");
    auto z1 = Vector::basis(h3, 1), z2 = Vector::basis(h3, 2), z3 = Vector::basis(h3, 3);
    CHECK(bracket(z1, z2) == z3);
    CHECK(bracket(z2, z1) == -z3);
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto x = random_vector(h3, rng);
        CHECK(bracket(x, x).is_zero());
    }
    auto h5 = catalog_algebra("h5");
    CHECK_THROWS_AS(bracket(Vector::basis(h5, 1), z1), Error); // AlgebraMismatch
}

TEST_CASE("ad matrices are nilpotent") {
    auto h3 = catalog_algebra("h3");
    CHECK(ad_matrix(Vector::basis(h3, 3)).is_zero());
    auto ad1 = ad_matrix(Vector::basis(h3, 1));
    CHECK(ad1.at(2, 1) == Rational(1)); // Z2 -> Z3
    SplitMix64 rng(6);
    for (const auto &alg : all_catalog_algebras()) {
        auto x = random_vector(alg, rng);
        RatMatrix p = ad_matrix(x);
        for (std::size_t k = 1; k < alg->dim(); ++k) p = p * ad_matrix(x);
        CHECK(p.is_zero());
    }
}

TEST_CASE("Ad_exp examples and inverse law") {
    auto h3 = catalog_algebra("h3");
    CHECK(ad_exp(Vector::zero(h3)) == RatMatrix::identity(3));
    auto m = ad_exp(Vector::basis(h3, 1));
    // Z2 -> Z2 + Z3
    CHECK(m.at(1, 1) == Rational(1));
    CHECK(m.at(2, 1) == Rational(1));
    SplitMix64 rng(7);
    for (const auto &alg : all_catalog_algebras()) {
        auto x = random_vector(alg, rng);
        CHECK(ad_exp(x) * ad_exp(-x) == RatMatrix::identity(alg->dim()));
    }
}

TEST_CASE("coadjoint worked examples") {
    auto h3 = catalog_algebra("h3");
    auto l = Covector::dual_basis(h3, 3);
    CHECK(coadjoint(Vector::zero(h3), l) == l);
    // Ad*(exp tZ1) Z3* = Z3* - t Z2*
    Rational t(5, 3);
    auto moved = coadjoint(Vector::basis(h3, 1).scaled(t), l);
    CHECK(moved.coords() == RatVector{Rational(0), -t, Rational(1)});
    // central coordinate is invariant along the orbit
    SplitMix64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        auto x = random_vector(h3, rng);
        CHECK(coadjoint(x, l).coords()[2] == Rational(1));
    }
}

TEST_CASE("bch worked examples") {
    auto h3 = catalog_algebra("h3");
    SplitMix64 rng(9);
    auto x = random_vector(h3, rng);
    CHECK(bch(x, Vector::zero(h3)) == x);
    CHECK(bch(Vector::zero(h3), x) == x);
    CHECK(bch(x, -x).is_zero());

    Rational a(3), b(7, 2);
    auto lhs = bch(Vector::basis(h3, 1).scaled(a), Vector::basis(h3, 2).scaled(b));
    RatVector expect{a, b, a * b / Rational(2)};
    CHECK(lhs.coords() == expect);

    // cubic term on f4: log(e^{Z1} e^{Z2}) = Z1 + Z2 + 1/2 Z3 + 1/12 Z4
    // ([Z1,[Z1,Z2]] = Z4, [Z2,[Z2,Z1]] = 0)
    auto f4 = catalog_algebra("f4");
    auto cubic = bch(Vector::basis(f4, 1), Vector::basis(f4, 2));
    CHECK(cubic.coords() ==
          RatVector{Rational(1), Rational(1), Rational(1, 2), Rational(1, 12)});
}

TEST_CASE("group law properties on all catalog algebras") {
    SplitMix64 rng(10);
    for (const auto &alg : all_catalog_algebras()) {
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_vector(alg, rng);
            auto y = random_vector(alg, rng);
            auto z = random_vector(alg, rng);
            CHECK(bch(bch(x, y), z) == bch(x, bch(y, z)));
            CHECK(ad_exp(bch(x, y)) == ad_exp(x) * ad_exp(y));
            auto l = random_covector(alg, rng);
            CHECK(coadjoint(x, coadjoint(y, l)) == coadjoint(bch(x, y), l));
        }
    }
}

TEST_CASE("descending central series terminates") {
    for (const auto &alg : all_catalog_algebras()) {
        auto series = descending_central_series(alg);
        CHECK(series.back().dim() == 0);
        CHECK(series.size() <= alg->dim() + 1);
        for (std::size_t i = 1; i < series.size(); ++i)
            CHECK(series[i - 1].contains_subspace(series[i]));
    }
}

TEST_CASE("variable family: validation, evaluation") {
    auto fam = catalog_family("beta_h3");
    CHECK(fam.param_count() == 1);

    auto at1 = fam.evaluate({Rational(1)});
    CHECK(at1->structurally_equal(*catalog_algebra("h3")));

    auto at0 = fam.evaluate({Rational(0)});
    CHECK(at0->structure().empty()); // abelian

    auto at2 = fam.evaluate({Rational(2)});
    CHECK(at2->coeff(1, 2, 3) == Rational(2));

    CHECK_THROWS_AS(fam.evaluate({}), Error);

    // identically non-Jacobi family is rejected as a polynomial identity
    std::vector<std::string> vars{"b1"};
    VariableFamily::FamilyStructure bad;
    bad.emplace(StructureKey{1, 2, 3}, MultiPoly::variable(vars, 0));
    bad.emplace(StructureKey{2, 3, 4}, MultiPoly::variable(vars, 0));
    bad.emplace(StructureKey{1, 4, 5}, MultiPoly::constant(vars, Rational(1)));
    CHECK_THROWS_AS(VariableFamily::validated("badfam", 5, 1, std::move(bad)), Error);
}

TEST_CASE("subspace canonical form decides equality") {
    auto h3 = catalog_algebra("h3");
    auto z2 = Vector::basis(h3, 2), z3 = Vector::basis(h3, 3);
    auto a = Subspace::span(h3, {z2 + z3.scaled(Rational(4)), z3});
    auto b = Subspace::span(h3, {z3, z2});
    CHECK(a == b);
    CHECK(a.dim() == 2);
    CHECK(a.contains(z2 - z3.scaled(Rational(99))));
    CHECK_FALSE(a.contains(Vector::basis(h3, 1)));
    CHECK(a.is_subalgebra());
    CHECK(a.is_ideal());
}

TEST_CASE("definition JSON round trip") {
    for (const auto &e : catalog_entries()) {
        if (e.params != 0) continue;
        auto alg = catalog_algebra(e.name);
        auto back = parse_definition(algebra_to_json(*alg));
        REQUIRE(std::holds_alternative<AlgebraPtr>(back));
        CHECK(std::get<AlgebraPtr>(back)->structurally_equal(*alg));
    }
    auto fam = catalog_family("beta_h3");
    auto back = parse_definition(family_to_json(fam));
    REQUIRE(std::holds_alternative<VariableFamily>(back));
    CHECK(std::get<VariableFamily>(back).evaluate({Rational(3)})->coeff(1, 2, 3) ==
          Rational(3));
}

TEST_CASE("polynomial expression parser") {
    std::vector<std::string> vars{"b1", "b2"};
    auto p = parse_poly("2*b1^2 - b2 + 1/2", vars);
    CHECK(p.eval({Rational(3), Rational(4)}) == Rational(29, 2));
    CHECK(parse_poly("-(b1 - b2)*b1", vars).eval({Rational(2), Rational(5)}) ==
          Rational(6));
    CHECK_THROWS_AS(parse_poly("b3 + 1", vars), Error);
    CHECK_THROWS_AS(parse_poly("2 +", vars), Error);
}
