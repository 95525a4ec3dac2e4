#include "nilorbit/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "nilorbit/catalog.hpp"
#include "nilorbit/errors.hpp"

namespace nilorbit {

std::vector<Rational> parse_rational_list(const std::string &csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(Rational::parse(tok));
    if (out.empty())
        throw Error(ErrorKind::parse, "empty rational list");
    return out;
}

std::vector<unsigned> parse_label_list(const std::string &csv) {
    std::vector<unsigned> out;
    for (const auto &r : parse_rational_list(csv)) {
        if (!r.is_integer() || r.sign() <= 0)
            throw Error(ErrorKind::parse, "labels must be positive integers");
        out.push_back(static_cast<unsigned>(r.num().get_ui()));
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string &src;
    const std::vector<std::string> &vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string &what) {
        throw Error(ErrorKind::parse, "polynomial '" + src + "': " + what + " at offset " +
                                          std::to_string(pos));
    }

    MultiPoly parse() {
        MultiPoly p = parse_expr();
        skip_ws();
        if (pos != src.size()) fail("trailing input");
        return p;
    }

    MultiPoly parse_expr() {
        MultiPoly acc = parse_term();
        for (;;) {
            if (eat('+')) acc += parse_term();
            else if (eat('-')) acc -= parse_term();
            else return acc;
        }
    }

    MultiPoly parse_term() {
        MultiPoly acc = parse_factor();
        for (;;) {
            if (eat('*')) acc = acc * parse_factor();
            else return acc;
        }
    }

    MultiPoly parse_factor() {
        MultiPoly base = parse_atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            if (start == pos) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(src.substr(start, pos - start))));
        }
        return base;
    }

    MultiPoly parse_atom() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end");
        char c = src[pos];
        if (c == '(') {
            ++pos;
            MultiPoly inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos;
            return -parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/'))
                ++pos;
            return MultiPoly::constant(vars, Rational::parse(src.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                        src[pos] == '_'))
                ++pos;
            std::string name = src.substr(start, pos - start);
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return MultiPoly::variable(vars, i);
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character");
    }
};

} // namespace

MultiPoly parse_poly(const std::string &src, const std::vector<std::string> &vars) {
    PolyParser p{src, vars};
    return p.parse();
}

AlgebraOrFamily parse_definition(const Json &j) {
    try {
        if (!j.is_object()) throw Error(ErrorKind::parse, "definition must be a JSON object");
        std::string name = j.value("name", std::string("unnamed"));
        if (!j.contains("dim") || !j["dim"].is_number_unsigned())
            throw Error(ErrorKind::parse, "missing or bad 'dim'");
        std::size_t dim = j["dim"].get<std::size_t>();
        std::size_t params = 0;
        if (j.contains("params")) {
            if (!j["params"].is_number_unsigned())
                throw Error(ErrorKind::parse, "bad 'params'");
            params = j["params"].get<std::size_t>();
        }
        std::vector<std::string> vars;
        for (std::size_t i = 1; i <= params; ++i) vars.push_back("b" + std::to_string(i));

        StructureMap plain;
        VariableFamily::FamilyStructure fam;
        if (j.contains("brackets")) {
            if (!j["brackets"].is_array()) throw Error(ErrorKind::parse, "bad 'brackets'");
            for (const auto &b : j["brackets"]) {
                if (!b.is_object() || !b.contains("i") || !b.contains("j") ||
                    !b.contains("terms"))
                    throw Error(ErrorKind::parse, "bad bracket entry");
                unsigned i = b["i"].get<unsigned>();
                unsigned jj = b["j"].get<unsigned>();
                if (i >= jj)
                    throw Error(ErrorKind::parse,
                                "bracket requires i < j, got (" + std::to_string(i) + "," +
                                    std::to_string(jj) + ")");
                for (const auto &[kstr, value] : b["terms"].items()) {
                    unsigned k = 0;
                    try {
                        k = static_cast<unsigned>(std::stoul(kstr));
                    } catch (const std::logic_error &) {
                        throw Error(ErrorKind::parse, "bad term index '" + kstr + "'");
                    }
                    if (!value.is_string())
                        throw Error(ErrorKind::parse, "term coefficients must be strings");
                    if (params == 0)
                        plain[{i, jj, k}] = Rational::parse(value.get<std::string>());
                    else
                        fam.emplace(StructureKey{i, jj, k},
                                    parse_poly(value.get<std::string>(), vars));
                }
            }
        }
        if (params == 0)
            return NilpotentLieAlgebra::validated(std::move(name), dim, std::move(plain));
        return VariableFamily::validated(std::move(name), dim, params, std::move(fam));
    } catch (const Json::exception &e) {
        throw Error(ErrorKind::parse, std::string("bad definition JSON: ") + e.what());
    }
}

AlgebraOrFamily load_definition(const std::string &uri) {
    constexpr const char *prefix = "catalog:";
    if (uri.rfind(prefix, 0) == 0) {
        std::string name = uri.substr(std::string(prefix).size());
        if (catalog_has_algebra(name)) return catalog_algebra(name);
        if (catalog_has_family(name)) return catalog_family(name);
        throw Error(ErrorKind::parse, "unknown catalog entry '" + name + "'");
    }
    std::ifstream in(uri);
    if (!in)
        throw Error(ErrorKind::parse, "cannot open algebra definition file '" + uri + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception &e) {
        throw Error(ErrorKind::parse, std::string("bad JSON in '") + uri + "': " + e.what());
    }
    return parse_definition(j);
}

AlgebraPtr load_algebra(const std::string &uri,
                        const std::optional<std::vector<Rational>> &beta) {
    AlgebraOrFamily def = load_definition(uri);
    if (std::holds_alternative<AlgebraPtr>(def)) {
        if (beta)
            throw Error(ErrorKind::parse, "--beta given but '" + uri + "' is not a family");
        return std::get<AlgebraPtr>(def);
    }
    const auto &fam = std::get<VariableFamily>(def);
    if (!beta)
        throw Error(ErrorKind::parse,
                    "'" + uri + "' is a parametrized family; provide --beta");
    return fam.evaluate(*beta);
}

Json algebra_to_json(const NilpotentLieAlgebra &alg) {
    Json j;
    j["name"] = alg.name();
    j["dim"] = alg.dim();
    Json brackets = Json::array();
    // group by (i,j)
    std::map<std::pair<unsigned, unsigned>, Json> groups;
    for (const auto &[key, coeff] : alg.structure()) {
        auto [i, jj, k] = key;
        groups[{i, jj}][std::to_string(k)] = coeff.str();
    }
    for (const auto &[ij, terms] : groups) {
        Json b;
        b["i"] = ij.first;
        b["j"] = ij.second;
        b["terms"] = terms;
        brackets.push_back(std::move(b));
    }
    j["brackets"] = std::move(brackets);
    return j;
}

Json family_to_json(const VariableFamily &fam) {
    Json j;
    j["name"] = fam.name();
    j["dim"] = fam.dim();
    j["params"] = fam.param_count();
    Json brackets = Json::array();
    std::map<std::pair<unsigned, unsigned>, Json> groups;
    for (const auto &[key, poly] : fam.structure()) {
        auto [i, jj, k] = key;
        groups[{i, jj}][std::to_string(k)] = poly.str();
    }
    for (const auto &[ij, terms] : groups) {
        Json b;
        b["i"] = ij.first;
        b["j"] = ij.second;
        b["terms"] = terms;
        brackets.push_back(std::move(b));
    }
    j["brackets"] = std::move(brackets);
    return j;
}

Json covector_to_json(const Covector &l) {
    Json arr = Json::array();
    for (const auto &c : l.coords()) arr.push_back(c.str());
    return arr;
}

Json subspace_to_json(const Subspace &s) {
    Json arr = Json::array();
    for (const auto &v : s.basis_vectors()) {
        Json row = Json::array();
        for (const auto &c : v.coords()) row.push_back(c.str());
        arr.push_back(std::move(row));
    }
    return arr;
}

} // namespace nilorbit
