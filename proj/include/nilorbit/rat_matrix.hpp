#pragma once

#include <cstddef>
#include <vector>

#include "nilorbit/rational.hpp"

namespace nilorbit {

using RatVector = std::vector<Rational>;

/// Dense matrix of rationals, row-major. Row reduction is exact; the reduced
/// row echelon form is the canonical representative of a row space, so
/// subspace equality elsewhere in the library reduces to entry-wise equality.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<RatVector> &rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational &at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational &at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    RatVector row(std::size_t r) const;

    RatMatrix transposed() const;
    RatMatrix operator*(const RatMatrix &o) const;
    RatVector apply(const RatVector &v) const;

    friend bool operator==(const RatMatrix &a, const RatMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    bool is_zero() const;

    Rational determinant() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

struct RrefResult {
    RatMatrix matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form with rank and pivot columns; input unchanged.
RrefResult rref(const RatMatrix &m);

/// Canonical (echelon) basis of the right null space {x : m x = 0}.
/// Empty when the map is injective.
std::vector<RatVector> kernel_basis(const RatMatrix &m);

} // namespace nilorbit
