#pragma once

#include <optional>
#include <variant>

#include <json.hpp>

#include "nilorbit/algebra.hpp"

namespace nilorbit {

using Json = nlohmann::ordered_json;

/// Parses "a1,a2,...,an" of rationals.
std::vector<Rational> parse_rational_list(const std::string &csv);

/// Parses "1,2,5" of 1-based labels.
std::vector<unsigned> parse_label_list(const std::string &csv);

/// Small exact-arithmetic polynomial expressions: rationals, named
/// variables, + - * ^ and parentheses. Used for family coefficients.
MultiPoly parse_poly(const std::string &src, const std::vector<std::string> &vars);

using AlgebraOrFamily = std::variant<AlgebraPtr, VariableFamily>;

/// Algebra definition format:
/// {"name": str, "dim": int,
///  "brackets": [{"i": int, "j": int, "terms": {"k": "p/q", ...}}, ...]}
/// with 1-based indices and i < j; families add "params": m and polynomial
/// coefficient strings in b1..bm.
AlgebraOrFamily parse_definition(const Json &j);

/// Resolves "catalog:<name>" or a filesystem path.
AlgebraOrFamily load_definition(const std::string &uri);

/// Convenience: loads and, for families, evaluates at beta (required then).
AlgebraPtr load_algebra(const std::string &uri,
                        const std::optional<std::vector<Rational>> &beta);

Json algebra_to_json(const NilpotentLieAlgebra &alg);
Json family_to_json(const VariableFamily &fam);

Json covector_to_json(const Covector &l);
Json subspace_to_json(const Subspace &s);

} // namespace nilorbit
