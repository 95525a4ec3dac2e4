#include <doctest.h>

#include "nilorbit/catalog.hpp"
#include "nilorbit/prng.hpp"
#include "nilorbit/stratification.hpp"

using namespace nilorbit;

namespace {

IndexSet make_index(std::initializer_list<std::pair<unsigned, unsigned>> pairs) {
    return IndexSet{std::vector<std::pair<unsigned, unsigned>>(pairs)};
}

MultiPoly dual_variable(std::size_t n, std::size_t index) {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= n; ++i) vars.push_back("l" + std::to_string(i));
    return MultiPoly::variable(vars, index);
}

} // namespace

TEST_CASE("index_of worked examples") {
    auto h3 = catalog_algebra("h3");
    CHECK(index_of(Covector::dual_basis(h3, 3)) == make_index({{2, 1}}));
    CHECK(index_of(Covector::dual_basis(h3, 1)).empty());

    auto f4 = catalog_algebra("f4");
    CHECK(index_of(Covector::dual_basis(f4, 4)) == make_index({{3, 1}}));
}

TEST_CASE("lex_compare follows the length-then-pairwise rule") {
    auto empty = make_index({});
    auto i21 = make_index({{2, 1}});
    auto i31 = make_index({{3, 1}});
    auto i32 = make_index({{3, 2}});
    CHECK(lex_compare(empty, i21) < 0);
    CHECK(lex_compare(i21, i31) < 0);
    CHECK(lex_compare(i31, i32) < 0);
    CHECK(lex_compare(i31, i31) == 0);
    CHECK(lex_compare(make_index({{4, 3}, {2, 1}}), i31) > 0); // longer sorts larger

    // total order on a set of index sets: antisymmetry and transitivity
    std::vector<IndexSet> sets{empty, i21, i31, i32, make_index({{4, 3}, {2, 1}})};
    for (const auto &a : sets)
        for (const auto &b : sets) {
            CHECK(lex_compare(a, b) == -lex_compare(b, a));
            for (const auto &c : sets)
                if (lex_compare(a, b) <= 0 && lex_compare(b, c) <= 0)
                    CHECK(lex_compare(a, c) <= 0);
        }
}

TEST_CASE("layer polynomials of worked examples") {
    auto h3 = catalog_algebra("h3");
    auto d = layer_polynomial(h3, make_index({{2, 1}}));
    CHECK(d.P == dual_variable(3, 2)); // l3
    CHECK(d.section_constraints == std::vector<unsigned>{2, 1});

    auto f4 = catalog_algebra("f4");
    CHECK(layer_polynomial(f4, make_index({{3, 1}})).P == dual_variable(4, 3)); // l4

    CHECK_THROWS_AS(layer_polynomial(h3, make_index({{3, 1}})), Error);

    // empty index set: the empty product
    CHECK(layer_polynomial(h3, make_index({})).P.is_constant());

    // h5 generic layer: both step scalars are l5
    auto h5 = catalog_algebra("h5");
    auto d5 = layer_polynomial(h5, make_index({{4, 3}, {2, 1}}));
    CHECK(d5.P == dual_variable(5, 4) * dual_variable(5, 4)); // l5^2
}

TEST_CASE("enumerate_layers finds generic and degenerate layers") {
    auto ab = catalog_algebra("abelian3");
    auto layers_ab = enumerate_layers(ab, 25, 3);
    REQUIRE(layers_ab.size() == 1);
    CHECK(layers_ab[0].index_set.empty());

    auto h3 = catalog_algebra("h3");
    auto layers_h3 = enumerate_layers(h3, 25, 3);
    REQUIRE(layers_h3.size() == 2);
    CHECK(layers_h3[0].index_set == make_index({{2, 1}})); // maximal first
    CHECK(layers_h3[1].index_set.empty());

    auto f4 = catalog_algebra("f4");
    auto layers_f4 = enumerate_layers(f4, 40, 3);
    CHECK(layers_f4.front().index_set == make_index({{3, 1}}));
    // degeneration l4 -> 0 lands in the ((2,1)) layer, then l3 -> 0 in the empty one
    bool has21 = false, has_empty = false;
    for (const auto &d : layers_f4) {
        if (d.index_set == make_index({{2, 1}})) has21 = true;
        if (d.index_set.empty()) has_empty = true;
    }
    CHECK(has21);
    CHECK(has_empty);
}

TEST_CASE("enumerate_layers is deterministic and thread-invariant") {
    auto h5 = catalog_algebra("h5");
    auto a = enumerate_layers(h5, 30, 9, 1);
    auto b = enumerate_layers(h5, 30, 9, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].index_set == b[i].index_set);
        CHECK(a[i].witness == b[i].witness);
        CHECK(a[i].P == b[i].P);
    }
    auto c = enumerate_layers(h5, 30, 10, 1);
    // a different seed draws different witnesses
    bool same_witnesses = true;
    for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
        if (!(a[i].witness == c[i].witness)) same_witnesses = false;
    CHECK_FALSE(same_witnesses);
}

TEST_CASE("partition and semicontinuity consistency on witnesses") {
    SplitMix64 rng(21);
    for (const char *name : {"h3", "f4", "h5"}) {
        auto alg = catalog_algebra(name);
        auto layers = enumerate_layers(alg, 30, 4);
        for (const auto &d : layers) {
            // witness index matches and P_I is nonzero on it
            CHECK(index_of(d.witness) == d.index_set);
            CHECK_FALSE(d.P.eval(d.witness.coords()).is_zero());
            // degenerating the witness along the coordinates named in P_I
            // lands in a strictly smaller layer and kills P_I
            std::vector<std::size_t> named;
            for (std::size_t v = 0; v < alg->dim(); ++v)
                if (d.P.uses_var(v)) named.push_back(v);
            if (named.empty()) continue;
            RatVector coords = d.witness.coords();
            for (std::size_t v : named) coords[v] = Rational(0);
            Covector degenerate(alg, coords);
            CHECK(d.P.eval(coords).is_zero());
            CHECK(lex_compare(index_of(degenerate), d.index_set) < 0);
        }
    }
}

TEST_CASE("index sets are invariant under the coadjoint action") {
    SplitMix64 rng(22);
    for (const char *name : {"h3", "h5", "f4"}) {
        auto alg = catalog_algebra(name);
        auto layers = enumerate_layers(alg, 15, 5);
        for (const auto &d : layers)
            for (int move = 0; move < 6; ++move) {
                Vector x(alg, rng.nonzero_coords(alg->dim()));
                CHECK(index_of(coadjoint(x, d.witness)) == d.index_set);
            }
    }
}

TEST_CASE("in_pukanszky_section worked examples") {
    auto h3 = catalog_algebra("h3");
    auto I = make_index({{2, 1}});
    CHECK(in_pukanszky_section(Covector::dual_basis(h3, 3), I));

    Covector mixed(h3, {Rational(1), Rational(0), Rational(1)});
    CHECK_FALSE(in_pukanszky_section(mixed, I));

    auto ab = catalog_algebra("abelian3");
    SplitMix64 rng(23);
    CHECK(in_pukanszky_section(Covector(ab, rng.nonzero_coords(3)), make_index({})));
}
