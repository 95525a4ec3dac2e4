#include "nilorbit/algebra.hpp"

#include <functional>

#include "nilorbit/errors.hpp"

namespace nilorbit {

namespace {

std::string ijk(unsigned i, unsigned j, unsigned k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

} // namespace

std::shared_ptr<const NilpotentLieAlgebra>
NilpotentLieAlgebra::validated(std::string name, std::size_t dim, StructureMap structure) {
    if (dim < 1)
        throw Error(ErrorKind::parse, "algebra dimension must be >= 1");
    for (auto it = structure.begin(); it != structure.end();) {
        auto [i, j, k] = it->first;
        if (i < 1 || j > dim || k < 1 || k > dim || i >= j)
            throw Error(ErrorKind::parse, "bad structure index " + ijk(i, j, k));
        if (it->second.is_zero()) {
            it = structure.erase(it);
            continue;
        }
        if (k <= j) // i < j, so max(i,j) = j
            throw Error(ErrorKind::triangularity_violation,
                        "TriangularityViolation" + ijk(i, j, k));
        ++it;
    }

    auto alg = std::shared_ptr<NilpotentLieAlgebra>(
        new NilpotentLieAlgebra(std::move(name), dim, std::move(structure)));

    // Jacobi: [[Zi,Zj],Zk] + [[Zj,Zk],Zi] + [[Zk,Zi],Zj] = 0 for i<j<k.
    auto bracket_coords = [&](const RatVector &v, unsigned k) {
        RatVector out(dim);
        for (unsigned m = 1; m <= dim; ++m) {
            if (v[m - 1].is_zero()) continue;
            RatVector bm = alg->bracket_basis(m, k);
            for (std::size_t t = 0; t < dim; ++t)
                if (!bm[t].is_zero()) out[t] += v[m - 1] * bm[t];
        }
        return out;
    };
    for (unsigned i = 1; i <= dim; ++i)
        for (unsigned j = i + 1; j <= dim; ++j)
            for (unsigned k = j + 1; k <= dim; ++k) {
                RatVector s(dim);
                RatVector t1 = bracket_coords(alg->bracket_basis(i, j), k);
                RatVector t2 = bracket_coords(alg->bracket_basis(j, k), i);
                RatVector t3 = bracket_coords(alg->bracket_basis(k, i), j);
                bool zero = true;
                for (std::size_t m = 0; m < dim; ++m) {
                    Rational v = t1[m] + t2[m] + t3[m];
                    if (!v.is_zero()) { zero = false; break; }
                }
                if (!zero)
                    throw Error(ErrorKind::jacobi_violation, "JacobiViolation" + ijk(i, j, k));
            }

    // Nilpotency class from the descending central series; triangularity
    // already guarantees termination.
    AlgebraPtr self = alg;
    auto series = descending_central_series(self);
    alg->nilpotency_class_ = series.size() - 1; // last entry is {0}
    if (alg->nilpotency_class_ == 0) alg->nilpotency_class_ = 1;
    return alg;
}

Rational NilpotentLieAlgebra::coeff(unsigned i, unsigned j, unsigned k) const {
    if (i == j) return Rational(0);
    if (i < j) {
        auto it = structure_.find({i, j, k});
        return it == structure_.end() ? Rational(0) : it->second;
    }
    auto it = structure_.find({j, i, k});
    return it == structure_.end() ? Rational(0) : -it->second;
}

RatVector NilpotentLieAlgebra::bracket_basis(unsigned i, unsigned j) const {
    RatVector out(dim_);
    if (i == j) return out;
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto lo = structure_.lower_bound({i, j, 0});
    auto hi = structure_.upper_bound({i, j, static_cast<unsigned>(dim_) + 1});
    for (auto it = lo; it != hi; ++it) {
        unsigned k = std::get<2>(it->first);
        out[k - 1] = flip ? -it->second : it->second;
    }
    return out;
}

Vector::Vector(AlgebraPtr algebra, RatVector coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_->dim())
        throw Error(ErrorKind::arity_mismatch, "vector coordinate count != algebra dimension");
}

Vector Vector::zero(AlgebraPtr algebra) {
    RatVector c(algebra->dim());
    return Vector(std::move(algebra), std::move(c));
}

Vector Vector::basis(AlgebraPtr algebra, unsigned label) {
    RatVector c(algebra->dim());
    c.at(label - 1) = Rational(1);
    return Vector(std::move(algebra), std::move(c));
}

bool Vector::is_zero() const {
    for (const auto &c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

Vector Vector::operator+(const Vector &o) const {
    require_same_algebra(algebra_, o.algebra_);
    RatVector c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
    return Vector(algebra_, std::move(c));
}

Vector Vector::operator-(const Vector &o) const { return *this + (-o); }

Vector Vector::operator-() const {
    RatVector c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return Vector(algebra_, std::move(c));
}

Vector Vector::scaled(const Rational &r) const {
    RatVector c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * r;
    return Vector(algebra_, std::move(c));
}

Covector::Covector(AlgebraPtr algebra, RatVector coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_->dim())
        throw Error(ErrorKind::arity_mismatch, "covector coordinate count != algebra dimension");
}

Covector Covector::zero(AlgebraPtr algebra) {
    RatVector c(algebra->dim());
    return Covector(std::move(algebra), std::move(c));
}

Covector Covector::dual_basis(AlgebraPtr algebra, unsigned label) {
    RatVector c(algebra->dim());
    c.at(label - 1) = Rational(1);
    return Covector(std::move(algebra), std::move(c));
}

bool Covector::is_zero() const {
    for (const auto &c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

void require_same_algebra(const AlgebraPtr &a, const AlgebraPtr &b) {
    if (a == b) return;
    if (!a || !b || !a->structurally_equal(*b))
        throw Error(ErrorKind::algebra_mismatch, "values belong to different algebras");
}

Rational pairing(const Covector &l, const Vector &x) {
    require_same_algebra(l.algebra(), x.algebra());
    Rational s(0);
    for (std::size_t i = 0; i < l.coords().size(); ++i)
        if (!l.coords()[i].is_zero() && !x.coords()[i].is_zero())
            s += l.coords()[i] * x.coords()[i];
    return s;
}

Vector bracket(const Vector &x, const Vector &y) {
    require_same_algebra(x.algebra(), y.algebra());
    const auto &alg = *x.algebra();
    const std::size_t n = alg.dim();
    RatVector out(n);
    for (unsigned i = 1; i <= n; ++i) {
        if (x.coords()[i - 1].is_zero()) continue;
        for (unsigned j = 1; j <= n; ++j) {
            if (i == j || y.coords()[j - 1].is_zero()) continue;
            Rational f = x.coords()[i - 1] * y.coords()[j - 1];
            RatVector b = alg.bracket_basis(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (!b[k].is_zero()) out[k] += f * b[k];
        }
    }
    return Vector(x.algebra(), std::move(out));
}

RatMatrix ad_matrix(const Vector &x) {
    const std::size_t n = x.algebra()->dim();
    RatMatrix m(n, n);
    for (unsigned j = 1; j <= n; ++j) {
        Vector col = bracket(x, Vector::basis(x.algebra(), j));
        for (std::size_t r = 0; r < n; ++r) m.at(r, j - 1) = col.coords()[r];
    }
    return m;
}

RatMatrix ad_exp(const Vector &x) {
    const std::size_t n = x.algebra()->dim();
    RatMatrix ad = ad_matrix(x);
    RatMatrix result = RatMatrix::identity(n);
    RatMatrix power = RatMatrix::identity(n);
    Rational fact(1);
    for (std::size_t k = 1; k < n; ++k) {
        power = power * ad;
        if (power.is_zero()) break;
        fact *= Rational(static_cast<long>(k));
        RatMatrix term = power;
        Rational inv = fact.inverse();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (!term.at(r, c).is_zero()) result.at(r, c) += term.at(r, c) * inv;
    }
    return result;
}

Covector coadjoint(const Vector &x, const Covector &l) {
    require_same_algebra(x.algebra(), l.algebra());
    // <Ad*(exp x) l, y> = <l, Ad(exp -x) y>, so coords transform by the
    // transpose of Ad(exp -x).
    RatMatrix m = ad_exp(-x).transposed();
    return Covector(l.algebra(), m.apply(l.coords()));
}

namespace {

// Dynkin expansion of log(exp x exp y): sum over block sequences
// ((p_1,q_1),...,(p_k,q_k)), p_i+q_i >= 1, of
//   (-1)^(k-1)/k * 1/(m * prod p_i! q_i!) * [word]
// where m is the total letter count and [word] is the right-nested bracket
// of the word x^p_1 y^q_1 ... x^p_k y^q_k. Words of length > nilpotency
// class vanish identically, so the truncation at m <= class is exact.
struct DynkinAccumulator {
    const Vector &x, &y;
    std::size_t max_degree;
    Vector result;
    std::vector<std::pair<unsigned, unsigned>> blocks;

    DynkinAccumulator(const Vector &x_, const Vector &y_, std::size_t maxd)
        : x(x_), y(y_), max_degree(maxd), result(Vector::zero(x_.algebra())) {}

    static long factorial(unsigned v) {
        long f = 1;
        for (unsigned i = 2; i <= v; ++i) f *= i;
        return f;
    }

    void emit(unsigned m) {
        // Right-nested bracket of the word; the innermost pair [a,a] would
        // vanish, skip those words outright.
        const auto &last = blocks.back();
        if (last.second >= 2 || (last.second == 0 && last.first >= 2)) return;

        std::vector<const Vector *> letters;
        letters.reserve(m);
        for (const auto &[p, q] : blocks) {
            for (unsigned i = 0; i < p; ++i) letters.push_back(&x);
            for (unsigned i = 0; i < q; ++i) letters.push_back(&y);
        }
        Vector w = *letters.back();
        for (std::size_t i = letters.size() - 1; i-- > 0;) w = bracket(*letters[i], w);
        if (w.is_zero()) return;

        long denom = static_cast<long>(m);
        for (const auto &[p, q] : blocks) denom *= factorial(p) * factorial(q);
        Rational coeff(1, denom);
        if (blocks.size() % 2 == 0) coeff = -coeff;
        coeff /= Rational(static_cast<long>(blocks.size()));
        result = result + w.scaled(coeff);
    }

    void recurse(unsigned used) {
        if (used > 0) emit(used);
        if (used == max_degree) return;
        for (unsigned total = 1; total <= max_degree - used; ++total)
            for (unsigned p = 0; p <= total; ++p) {
                blocks.emplace_back(p, total - p);
                recurse(used + total);
                blocks.pop_back();
            }
    }
};

} // namespace

Vector bch(const Vector &x, const Vector &y) {
    require_same_algebra(x.algebra(), y.algebra());
    DynkinAccumulator acc(x, y, x.algebra()->nilpotency_class());
    acc.recurse(0);
    return acc.result;
}

Subspace Subspace::span(AlgebraPtr algebra, const std::vector<Vector> &vectors) {
    std::vector<RatVector> rows;
    rows.reserve(vectors.size());
    for (const auto &v : vectors) {
        require_same_algebra(algebra, v.algebra());
        rows.push_back(v.coords());
    }
    RrefResult r = rref(RatMatrix::from_rows(rows, algebra->dim()));
    RatMatrix basis(r.rank, algebra->dim());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t c = 0; c < algebra->dim(); ++c) basis.at(i, c) = r.matrix.at(i, c);
    return Subspace(std::move(algebra), std::move(basis));
}

Subspace Subspace::full(AlgebraPtr algebra) {
    std::size_t n = algebra->dim();
    return Subspace(std::move(algebra), RatMatrix::identity(n));
}

Subspace Subspace::zero(AlgebraPtr algebra) {
    std::size_t n = algebra->dim();
    return Subspace(std::move(algebra), RatMatrix(0, n));
}

std::vector<Vector> Subspace::basis_vectors() const {
    std::vector<Vector> out;
    out.reserve(basis_.rows());
    for (std::size_t r = 0; r < basis_.rows(); ++r) out.emplace_back(algebra_, basis_.row(r));
    return out;
}

bool Subspace::contains(const Vector &v) const {
    // Reduce v against the echelon basis; membership iff the residual is 0.
    RatVector residual = v.coords();
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t piv = 0;
        while (piv < basis_.cols() && basis_.at(r, piv).is_zero()) ++piv;
        if (piv == basis_.cols()) continue;
        if (residual[piv].is_zero()) continue;
        Rational f = residual[piv]; // pivot entries are 1 in RREF
        for (std::size_t c = 0; c < basis_.cols(); ++c)
            residual[c] -= f * basis_.at(r, c);
    }
    for (const auto &c : residual)
        if (!c.is_zero()) return false;
    return true;
}

bool Subspace::contains_subspace(const Subspace &o) const {
    for (const auto &v : o.basis_vectors())
        if (!contains(v)) return false;
    return true;
}

Subspace Subspace::sum(const Subspace &o) const {
    auto vs = basis_vectors();
    auto os = o.basis_vectors();
    vs.insert(vs.end(), os.begin(), os.end());
    return span(algebra_, vs);
}

bool Subspace::is_subalgebra() const {
    auto vs = basis_vectors();
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!contains(bracket(vs[a], vs[b]))) return false;
    return true;
}

bool Subspace::is_ideal() const {
    auto vs = basis_vectors();
    for (unsigned i = 1; i <= algebra_->dim(); ++i) {
        Vector zi = Vector::basis(algebra_, i);
        for (const auto &v : vs)
            if (!contains(bracket(zi, v))) return false;
    }
    return true;
}

bool Subspace::is_isotropic_for(const Covector &l) const {
    auto vs = basis_vectors();
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!pairing(l, bracket(vs[a], vs[b])).is_zero()) return false;
    return true;
}

std::vector<Subspace> descending_central_series(const AlgebraPtr &algebra) {
    std::vector<Subspace> series;
    series.push_back(Subspace::full(algebra));
    while (series.back().dim() > 0) {
        std::vector<Vector> gens;
        for (unsigned i = 1; i <= algebra->dim(); ++i) {
            Vector zi = Vector::basis(algebra, i);
            for (const auto &b : series.back().basis_vectors()) {
                Vector w = bracket(zi, b);
                if (!w.is_zero()) gens.push_back(std::move(w));
            }
        }
        Subspace next = Subspace::span(algebra, gens);
        if (next == series.back())
            throw Error(ErrorKind::jacobi_violation, "central series does not descend");
        series.push_back(std::move(next));
    }
    return series;
}

VariableFamily VariableFamily::validated(std::string name, std::size_t dim,
                                         std::size_t param_count, FamilyStructure structure) {
    if (dim < 1)
        throw Error(ErrorKind::parse, "family dimension must be >= 1");
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= param_count; ++i) vars.push_back("b" + std::to_string(i));

    for (auto it = structure.begin(); it != structure.end();) {
        auto [i, j, k] = it->first;
        if (i < 1 || j > dim || k < 1 || k > dim || i >= j)
            throw Error(ErrorKind::parse, "bad structure index " + ijk(i, j, k));
        if (it->second.vars() != vars)
            throw Error(ErrorKind::parse, "family coefficient over wrong parameter list");
        if (it->second.is_zero()) {
            it = structure.erase(it);
            continue;
        }
        if (k <= j)
            throw Error(ErrorKind::triangularity_violation,
                        "TriangularityViolation" + ijk(i, j, k));
        ++it;
    }

    // Jacobi as polynomial identities in the parameters.
    auto fam_coeff = [&](unsigned i, unsigned j, unsigned k) -> MultiPoly {
        if (i == j) return MultiPoly(vars);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = structure.find({i, j, k});
        if (it == structure.end()) return MultiPoly(vars);
        return flip ? -it->second : it->second;
    };
    auto jacobi_term = [&](unsigned a, unsigned b, unsigned c, unsigned m) {
        // coefficient of Z_m in [[Z_a,Z_b],Z_c]
        MultiPoly sum(vars);
        for (unsigned t = 1; t <= dim; ++t) {
            MultiPoly f = fam_coeff(a, b, t);
            if (f.is_zero()) continue;
            MultiPoly g = fam_coeff(t, c, m);
            if (g.is_zero()) continue;
            sum += f * g;
        }
        return sum;
    };
    for (unsigned i = 1; i <= dim; ++i)
        for (unsigned j = i + 1; j <= dim; ++j)
            for (unsigned k = j + 1; k <= dim; ++k)
                for (unsigned m = 1; m <= dim; ++m) {
                    MultiPoly s = jacobi_term(i, j, k, m);
                    s += jacobi_term(j, k, i, m);
                    s += jacobi_term(k, i, j, m);
                    if (!s.is_zero())
                        throw Error(ErrorKind::jacobi_violation,
                                    "JacobiViolation" + ijk(i, j, k) + " as polynomial identity");
                }

    VariableFamily fam;
    fam.name_ = std::move(name);
    fam.dim_ = dim;
    fam.param_count_ = param_count;
    fam.structure_ = std::move(structure);
    return fam;
}

AlgebraPtr VariableFamily::evaluate(const std::vector<Rational> &beta) const {
    if (beta.size() != param_count_)
        throw Error(ErrorKind::arity_mismatch, "family parameter count mismatch");
    StructureMap s;
    for (const auto &[key, poly] : structure_) {
        Rational v = poly.eval(beta);
        if (!v.is_zero()) s.emplace(key, v);
    }
    std::string nm = name_ + "(";
    for (std::size_t i = 0; i < beta.size(); ++i)
        nm += (i ? "," : "") + beta[i].str();
    nm += ")";
    return NilpotentLieAlgebra::validated(nm, dim_, std::move(s));
}

} // namespace nilorbit
