#include "nilorbit/polarization.hpp"

#include "nilorbit/errors.hpp"

namespace nilorbit {

RatMatrix skew_matrix(const Covector &l) {
    const auto &alg = l.algebra();
    const std::size_t n = alg->dim();
    RatMatrix b(n, n);
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j) {
            RatVector br = alg->bracket_basis(i, j);
            Rational v(0);
            for (std::size_t k = 0; k < n; ++k)
                if (!br[k].is_zero()) v += l.coords()[k] * br[k];
            b.at(i - 1, j - 1) = v;
            b.at(j - 1, i - 1) = -v;
        }
    return b;
}

Subspace stabilizer(const Covector &l) {
    auto kern = kernel_basis(skew_matrix(l));
    std::vector<Vector> vs;
    vs.reserve(kern.size());
    for (auto &v : kern) vs.emplace_back(l.algebra(), std::move(v));
    return Subspace::span(l.algebra(), vs);
}

Subspace maximal_ideal_in(const Subspace &s) {
    const auto &alg = s.algebra();
    const std::size_t n = alg->dim();
    Subspace current = s;
    for (;;) {
        if (current.dim() == 0) return current;
        // Linear condition on x in current-basis coordinates: the residual
        // of [Z_i, x] after reduction mod current must vanish for every i.
        auto basis = current.basis_vectors();
        const std::size_t d = basis.size();
        std::vector<RatVector> rows; // constraint rows over coefficient space
        for (unsigned i = 1; i <= n; ++i) {
            Vector zi = Vector::basis(alg, i);
            std::vector<RatVector> residuals;
            residuals.reserve(d);
            bool any = false;
            for (const auto &b : basis) {
                Vector w = bracket(zi, b);
                // residual of w modulo current
                RatVector r = w.coords();
                const RatMatrix &bm = current.basis_matrix();
                for (std::size_t br = 0; br < bm.rows(); ++br) {
                    std::size_t piv = 0;
                    while (piv < n && bm.at(br, piv).is_zero()) ++piv;
                    if (piv == n || r[piv].is_zero()) continue;
                    Rational f = r[piv];
                    for (std::size_t c = 0; c < n; ++c) r[c] -= f * bm.at(br, c);
                }
                for (const auto &c : r)
                    if (!c.is_zero()) { any = true; break; }
                residuals.push_back(std::move(r));
            }
            if (!any) continue;
            for (std::size_t coord = 0; coord < n; ++coord) {
                RatVector row(d);
                bool nz = false;
                for (std::size_t m = 0; m < d; ++m) {
                    row[m] = residuals[m][coord];
                    if (!row[m].is_zero()) nz = true;
                }
                if (nz) rows.push_back(std::move(row));
            }
        }
        if (rows.empty()) return current; // already an ideal
        auto coeff_kernel = kernel_basis(RatMatrix::from_rows(rows, d));
        std::vector<Vector> next;
        for (const auto &coeffs : coeff_kernel) {
            Vector v = Vector::zero(alg);
            for (std::size_t m = 0; m < d; ++m)
                if (!coeffs[m].is_zero()) v = v + basis[m].scaled(coeffs[m]);
            next.push_back(std::move(v));
        }
        Subspace refined = Subspace::span(alg, next);
        if (refined == current) return current;
        current = refined;
    }
}

namespace {

// Stabilizer of l restricted to the subalgebra spanned by `basis`, expressed
// in that basis, then the maximal ideal of the subalgebra inside it. Returns
// the ideal as an ambient subspace.
Subspace level_maximal_ideal(const Covector &l, const std::vector<Vector> &basis) {
    const auto &alg = l.algebra();
    const std::size_t d = basis.size();
    RatMatrix b(d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = a + 1; c < d; ++c) {
            Rational v = pairing(l, bracket(basis[a], basis[c]));
            b.at(a, c) = v;
            b.at(c, a) = -v;
        }
    auto kern = kernel_basis(b);
    std::vector<Vector> stab;
    for (const auto &coeffs : kern) {
        Vector v = Vector::zero(alg);
        for (std::size_t m = 0; m < d; ++m)
            if (!coeffs[m].is_zero()) v = v + basis[m].scaled(coeffs[m]);
        stab.push_back(std::move(v));
    }
    Subspace stab_space = Subspace::span(alg, stab);

    // Fixpoint within the subalgebra: brackets against the subalgebra basis.
    Subspace current = stab_space;
    for (;;) {
        if (current.dim() == 0) return current;
        auto cb = current.basis_vectors();
        const std::size_t cd = cb.size();
        std::vector<RatVector> rows;
        const std::size_t n = alg->dim();
        for (const auto &gen : basis) {
            std::vector<RatVector> residuals;
            bool any = false;
            for (const auto &v : cb) {
                Vector w = bracket(gen, v);
                RatVector r = w.coords();
                const RatMatrix &bm = current.basis_matrix();
                for (std::size_t br = 0; br < bm.rows(); ++br) {
                    std::size_t piv = 0;
                    while (piv < n && bm.at(br, piv).is_zero()) ++piv;
                    if (piv == n || r[piv].is_zero()) continue;
                    Rational f = r[piv];
                    for (std::size_t c = 0; c < n; ++c) r[c] -= f * bm.at(br, c);
                }
                for (const auto &c : r)
                    if (!c.is_zero()) { any = true; break; }
                residuals.push_back(std::move(r));
            }
            if (!any) continue;
            for (std::size_t coord = 0; coord < n; ++coord) {
                RatVector row(cd);
                bool nz = false;
                for (std::size_t m = 0; m < cd; ++m) {
                    row[m] = residuals[m][coord];
                    if (!row[m].is_zero()) nz = true;
                }
                if (nz) rows.push_back(std::move(row));
            }
        }
        if (rows.empty()) return current;
        auto coeff_kernel = kernel_basis(RatMatrix::from_rows(rows, cd));
        std::vector<Vector> next;
        for (const auto &coeffs : coeff_kernel) {
            Vector v = Vector::zero(alg);
            for (std::size_t m = 0; m < cd; ++m)
                if (!coeffs[m].is_zero()) v = v + cb[m].scaled(coeffs[m]);
            next.push_back(std::move(v));
        }
        Subspace refined = Subspace::span(alg, next);
        if (refined == current) return current;
        current = refined;
    }
}

} // namespace

LZTrace ludwig_zahir(const Covector &l) {
    const auto &alg = l.algebra();
    const std::size_t n = alg->dim();

    std::vector<Vector> basis;
    std::vector<unsigned> labels;
    for (unsigned i = 1; i <= n; ++i) {
        basis.push_back(Vector::basis(alg, i));
        labels.push_back(i);
    }

    LZTrace trace{l, {}, {}, Subspace::zero(alg), stabilizer(l)};

    for (;;) {
        Subspace ideal = level_maximal_ideal(l, basis);
        if (ideal.dim() == basis.size()) break; // l is a character here

        // j: maximal surviving label whose basis vector is outside the ideal.
        std::size_t j_pos = basis.size();
        for (std::size_t p = basis.size(); p-- > 0;) {
            if (!ideal.contains(basis[p])) { j_pos = p; break; }
        }
        if (j_pos == basis.size())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "ludwig_zahir: ideal is proper but contains the whole basis");
        const Vector &y = basis[j_pos];

        // k: maximal label with <l,[Y, Z_k]> != 0.
        std::size_t k_pos = basis.size();
        for (std::size_t p = basis.size(); p-- > 0;) {
            if (!pairing(l, bracket(y, basis[p])).is_zero()) { k_pos = p; break; }
        }
        if (k_pos == basis.size())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "ludwig_zahir: no admissible k index for chosen j; "
                        "adapted basis lost triangularity");

        LZStep step{labels[j_pos], labels[k_pos], basis[k_pos], y,
                    pairing(l, bracket(basis[k_pos], y)), {}, {}};

        std::vector<Vector> next_basis;
        std::vector<unsigned> next_labels;
        Rational cinv = step.c.inverse();
        for (std::size_t p = 0; p < basis.size(); ++p) {
            if (p == k_pos) continue;
            Rational coeff = pairing(l, bracket(basis[p], y)) * cinv;
            next_basis.push_back(coeff.is_zero() ? basis[p]
                                                 : basis[p] - step.X.scaled(coeff));
            next_labels.push_back(labels[p]);
        }
        step.next_basis = next_basis;
        step.next_labels = next_labels;
        trace.index_pairs.emplace_back(step.j_label, step.k_label);
        trace.steps.push_back(std::move(step));

        basis = std::move(next_basis);
        labels = std::move(next_labels);
    }

    trace.polarization = Subspace::span(alg, basis);
    return trace;
}

Subspace vergne_polarization(const Covector &l) {
    const auto &alg = l.algebra();
    const std::size_t n = alg->dim();
    Subspace result = Subspace::zero(alg);
    for (unsigned k = 1; k <= n; ++k) {
        // g_k(l_k) = kernel of the pairing on span{Z_k..Z_n}
        const std::size_t d = n - k + 1;
        RatMatrix m(d, d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) {
                RatVector br = alg->bracket_basis(k + a, k + b);
                Rational v(0);
                for (std::size_t t = 0; t < n; ++t)
                    if (!br[t].is_zero()) v += l.coords()[t] * br[t];
                m.at(a, b) = v;
                m.at(b, a) = -v;
            }
        std::vector<Vector> vs;
        for (const auto &coeffs : kernel_basis(m)) {
            RatVector full(n);
            for (std::size_t a = 0; a < d; ++a) full[k - 1 + a] = coeffs[a];
            vs.emplace_back(alg, std::move(full));
        }
        result = result.sum(Subspace::span(alg, vs));
    }
    return result;
}

CrosscheckReport crosscheck_polarizations(const Covector &l) {
    CrosscheckReport rep{false, ludwig_zahir(l).polarization, vergne_polarization(l)};
    rep.agree = rep.lz_polarization == rep.vergne;
    return rep;
}

} // namespace nilorbit
