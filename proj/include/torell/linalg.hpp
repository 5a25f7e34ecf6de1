#pragma once
#include <vector>

#include "torell/rational.hpp"

namespace torell {

// Dense matrix over Q for the exact rank/kernel computations; row major.
class QMatrix {
  public:
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Q(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Q& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Q& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    QMatrix operator*(const QMatrix& o) const;
    // Columns of `o` appended on the right.
    QMatrix augmented(const QMatrix& o) const;

  private:
    std::size_t rows_, cols_;
    std::vector<Q> a_;
};

std::size_t rank(QMatrix m);
// Basis of { x : M x = 0 }, one kernel vector per column of the result.
QMatrix nullspace(const QMatrix& m);
// Whether every column of `v` lies in the column span of `m`.
bool columns_in_span(const QMatrix& m, const QMatrix& v);

} // namespace torell
