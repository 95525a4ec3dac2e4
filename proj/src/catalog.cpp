#include "nilorbit/catalog.hpp"

#include "nilorbit/errors.hpp"

namespace nilorbit {

namespace {

AlgebraPtr make_abelian(std::size_t n) {
    return NilpotentLieAlgebra::validated("abelian" + std::to_string(n), n, {});
}

AlgebraPtr make_h3() {
    StructureMap s;
    s[{1, 2, 3}] = Rational(1);
    return NilpotentLieAlgebra::validated("h3", 3, std::move(s));
}

AlgebraPtr make_h5() {
    StructureMap s;
    s[{1, 2, 5}] = Rational(1);
    s[{3, 4, 5}] = Rational(1);
    return NilpotentLieAlgebra::validated("h5", 5, std::move(s));
}

AlgebraPtr make_f4() {
    StructureMap s;
    s[{1, 2, 3}] = Rational(1);
    s[{1, 3, 4}] = Rational(1);
    return NilpotentLieAlgebra::validated("f4", 4, std::move(s));
}

VariableFamily make_beta_h3() {
    std::vector<std::string> vars{"b1"};
    VariableFamily::FamilyStructure s;
    s.emplace(StructureKey{1, 2, 3}, MultiPoly::variable(vars, 0));
    return VariableFamily::validated("beta_h3", 3, 1, std::move(s));
}

} // namespace

const std::vector<CatalogEntry> &catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"abelian1", 1, 0}, {"abelian2", 2, 0}, {"abelian3", 3, 0}, {"abelian4", 4, 0},
        {"abelian5", 5, 0}, {"abelian6", 6, 0}, {"h3", 3, 0},       {"h5", 5, 0},
        {"f4", 4, 0},       {"beta_h3", 3, 1},
    };
    return entries;
}

bool catalog_has_algebra(const std::string &name) {
    for (const auto &e : catalog_entries())
        if (e.name == name && e.params == 0) return true;
    return false;
}

bool catalog_has_family(const std::string &name) {
    for (const auto &e : catalog_entries())
        if (e.name == name && e.params > 0) return true;
    return false;
}

AlgebraPtr catalog_algebra(const std::string &name) {
    if (name == "h3") {
        static const AlgebraPtr a = make_h3();
        return a;
    }
    if (name == "h5") {
        static const AlgebraPtr a = make_h5();
        return a;
    }
    if (name == "f4") {
        static const AlgebraPtr a = make_f4();
        return a;
    }
    for (std::size_t n = 1; n <= 6; ++n)
        if (name == "abelian" + std::to_string(n)) {
            static AlgebraPtr cache[7];
            if (!cache[n]) cache[n] = make_abelian(n);
            return cache[n];
        }
    throw Error(ErrorKind::parse, "unknown catalog algebra '" + name + "'");
}

VariableFamily catalog_family(const std::string &name) {
    if (name == "beta_h3") return make_beta_h3();
    throw Error(ErrorKind::parse, "unknown catalog family '" + name + "'");
}

} // namespace nilorbit
