#include "torell/linalg.hpp"

#include <utility>

namespace torell {

bool QMatrix::is_zero() const {
    for (const Q& x : a_)
        if (x != 0)
            return false;
    return true;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_)
        throw DomainError("QMatrix: dimension mismatch in product");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Q& x = at(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o.at(k, j) != 0)
                    r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::augmented(const QMatrix& o) const {
    if (rows_ != o.rows_)
        throw DomainError("QMatrix: row mismatch in augmentation");
    QMatrix r(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j)
            r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m.at(pivot, j), m.at(row, j));
        const Q inv = 1 / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0)
                continue;
            const Q f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(QMatrix m) { return rref(m).size(); }

QMatrix nullspace(const QMatrix& m) {
    QMatrix r = m;
    const std::vector<std::size_t> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);

    QMatrix basis(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t fc = free_cols[k];
        basis.at(fc, k) = Q(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis.at(pivots[i], k) = -r.at(i, fc);
    }
    return basis;
}

bool columns_in_span(const QMatrix& m, const QMatrix& v) {
    return rank(m) == rank(m.augmented(v));
}

} // namespace torell
