#include "nilorbit/rat_matrix.hpp"

#include "nilorbit/errors.hpp"

namespace nilorbit {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector> &rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(ErrorKind::arity_mismatch, "row length does not match column count");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

RatVector RatMatrix::row(std::size_t r) const {
    RatVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix &o) const {
    if (cols_ != o.rows_)
        throw Error(ErrorKind::arity_mismatch, "matrix product shape mismatch");
    RatMatrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational &a = at(r, k);
            if (a.is_zero()) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) {
                const Rational &b = o.at(k, c);
                if (!b.is_zero()) p.at(r, c) += a * b;
            }
        }
    return p;
}

RatVector RatMatrix::apply(const RatVector &v) const {
    if (v.size() != cols_)
        throw Error(ErrorKind::arity_mismatch, "matrix-vector shape mismatch");
    RatVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    return out;
}

bool RatMatrix::is_zero() const {
    for (const auto &e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

Rational RatMatrix::determinant() const {
    if (rows_ != cols_)
        throw Error(ErrorKind::arity_mismatch, "determinant of non-square matrix");
    RatMatrix m = *this;
    const std::size_t n = rows_;
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m.at(piv, col).is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        Rational inv = m.at(col, col).inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

RrefResult rref(const RatMatrix &m) {
    RrefResult res;
    res.matrix = m;
    RatMatrix &a = res.matrix;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows; ++col) {
        std::size_t piv = lead;
        while (piv < rows && a.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != lead)
            for (std::size_t c = 0; c < cols; ++c) std::swap(a.at(piv, c), a.at(lead, c));
        Rational inv = a.at(lead, col).inverse();
        for (std::size_t c = 0; c < cols; ++c) a.at(lead, c) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || a.at(r, col).is_zero()) continue;
            Rational f = a.at(r, col);
            for (std::size_t c = 0; c < cols; ++c) a.at(r, c) -= f * a.at(lead, c);
        }
        res.pivot_columns.push_back(col);
        ++lead;
    }
    res.rank = res.pivot_columns.size();
    return res;
}

std::vector<RatVector> kernel_basis(const RatMatrix &m) {
    RrefResult r = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : r.pivot_columns) is_pivot[p] = true;

    std::vector<RatVector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(cols);
        v[free_col] = Rational(1);
        for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
            v[r.pivot_columns[i]] = -r.matrix.at(i, free_col);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return basis;

    // Canonicalize: the echelon form of the spanning set is the unique
    // reduced basis of the null space.
    RrefResult canon = rref(RatMatrix::from_rows(basis, cols));
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < canon.rank; ++i) out.push_back(canon.matrix.row(i));
    return out;
}

} // namespace nilorbit
