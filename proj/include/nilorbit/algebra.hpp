#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "nilorbit/multipoly.hpp"
#include "nilorbit/rat_matrix.hpp"

namespace nilorbit {

/// Key (i,j,k): coefficient of Z_k in [Z_i,Z_j], 1-based, only i<j stored.
using StructureKey = std::tuple<unsigned, unsigned, unsigned>;
using StructureMap = std::map<StructureKey, Rational>;

/// A nilpotent Lie algebra presented by exact structure constants in a fixed
/// Jordan-Hoelder basis Z_1..Z_n: [Z_i,Z_j] = sum_k a^k_ij Z_k with
/// a^k_ij = 0 for k <= max(i,j). Construction validates triangularity and
/// the Jacobi identity exactly; instances are immutable afterwards.
class NilpotentLieAlgebra {
  public:
    /// Validates and constructs. Throws TriangularityViolation(i,j,k),
    /// JacobiViolation(i,j,k) or ParseError on malformed input.
    static std::shared_ptr<const NilpotentLieAlgebra>
    validated(std::string name, std::size_t dim, StructureMap structure);

    const std::string &name() const { return name_; }
    std::size_t dim() const { return dim_; }
    const StructureMap &structure() const { return structure_; }

    /// Coefficient of Z_k in [Z_i,Z_j] for arbitrary i,j (antisymmetry applied).
    Rational coeff(unsigned i, unsigned j, unsigned k) const;

    /// Coordinates of [Z_i,Z_j], any i,j in 1..n.
    RatVector bracket_basis(unsigned i, unsigned j) const;

    /// Length of the descending central series before it reaches zero.
    std::size_t nilpotency_class() const { return nilpotency_class_; }

    bool structurally_equal(const NilpotentLieAlgebra &o) const {
        return dim_ == o.dim_ && structure_ == o.structure_;
    }

  private:
    NilpotentLieAlgebra(std::string name, std::size_t dim, StructureMap structure)
        : name_(std::move(name)), dim_(dim), structure_(std::move(structure)) {}

    std::string name_;
    std::size_t dim_;
    StructureMap structure_;
    std::size_t nilpotency_class_ = 1;
};

using AlgebraPtr = std::shared_ptr<const NilpotentLieAlgebra>;

class Vector {
  public:
    Vector(AlgebraPtr algebra, RatVector coords);

    static Vector zero(AlgebraPtr algebra);
    static Vector basis(AlgebraPtr algebra, unsigned label); // Z_label, 1-based

    const AlgebraPtr &algebra() const { return algebra_; }
    const RatVector &coords() const { return coords_; }
    bool is_zero() const;

    Vector operator+(const Vector &o) const;
    Vector operator-(const Vector &o) const;
    Vector operator-() const;
    Vector scaled(const Rational &c) const;

    friend bool operator==(const Vector &a, const Vector &b) {
        return a.coords_ == b.coords_;
    }

  private:
    AlgebraPtr algebra_;
    RatVector coords_;
};

class Covector {
  public:
    Covector(AlgebraPtr algebra, RatVector coords);

    static Covector zero(AlgebraPtr algebra);
    static Covector dual_basis(AlgebraPtr algebra, unsigned label); // Z_label^*

    const AlgebraPtr &algebra() const { return algebra_; }
    const RatVector &coords() const { return coords_; }
    bool is_zero() const;

    friend bool operator==(const Covector &a, const Covector &b) {
        return a.coords_ == b.coords_;
    }

  private:
    AlgebraPtr algebra_;
    RatVector coords_;
};

/// Throws AlgebraMismatch unless both values live on structurally equal algebras.
void require_same_algebra(const AlgebraPtr &a, const AlgebraPtr &b);

Rational pairing(const Covector &l, const Vector &x);

Vector bracket(const Vector &x, const Vector &y);

/// Matrix of ad(x): column j holds bracket(x, Z_j).
RatMatrix ad_matrix(const Vector &x);

/// Ad(exp x) = sum_{k<n} ad(x)^k / k!, exact by nilpotency.
RatMatrix ad_exp(const Vector &x);

/// Ad*(exp x) l, the covector y -> <l, Ad(exp -x) y>.
Covector coadjoint(const Vector &x, const Covector &l);

/// log(exp x * exp y) by the Dynkin expansion truncated at the nilpotency
/// class; the truncation is exact, not approximate.
Vector bch(const Vector &x, const Vector &y);

/// Linear subspace in canonical echelon form; equality of subspaces is
/// entry-wise equality of the canonical bases.
class Subspace {
  public:
    static Subspace span(AlgebraPtr algebra, const std::vector<Vector> &vectors);
    static Subspace full(AlgebraPtr algebra);
    static Subspace zero(AlgebraPtr algebra);

    const AlgebraPtr &algebra() const { return algebra_; }
    std::size_t dim() const { return basis_.rows(); }
    std::vector<Vector> basis_vectors() const;
    const RatMatrix &basis_matrix() const { return basis_; }

    bool contains(const Vector &v) const;
    bool contains_subspace(const Subspace &o) const;
    Subspace sum(const Subspace &o) const;

    friend bool operator==(const Subspace &a, const Subspace &b) {
        return a.basis_ == b.basis_;
    }

    bool is_subalgebra() const;
    bool is_ideal() const;
    bool is_isotropic_for(const Covector &l) const;

  private:
    Subspace(AlgebraPtr algebra, RatMatrix basis)
        : algebra_(std::move(algebra)), basis_(std::move(basis)) {}

    AlgebraPtr algebra_;
    RatMatrix basis_; // canonical RREF rows
};

/// g = g^(1) >= [g,g] >= [g,[g,g]] >= ... down to and including {0}.
std::vector<Subspace> descending_central_series(const AlgebraPtr &algebra);

/// Structure constants polynomial in parameters b1..bm; triangularity and
/// Jacobi hold identically as polynomials, verified on construction.
class VariableFamily {
  public:
    using FamilyStructure = std::map<StructureKey, MultiPoly>;

    static VariableFamily validated(std::string name, std::size_t dim,
                                    std::size_t param_count, FamilyStructure structure);

    const std::string &name() const { return name_; }
    std::size_t dim() const { return dim_; }
    std::size_t param_count() const { return param_count_; }
    const FamilyStructure &structure() const { return structure_; }

    /// Evaluates every coefficient polynomial at beta and validates the result.
    AlgebraPtr evaluate(const std::vector<Rational> &beta) const;

  private:
    VariableFamily() = default;

    std::string name_;
    std::size_t dim_ = 0;
    std::size_t param_count_ = 0;
    FamilyStructure structure_;
};

} // namespace nilorbit
