#ifndef KNLAB_LINALG_HPP
#define KNLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "knlab/rational.hpp"

namespace knlab {

/// Dense matrix over Rational with exact Gaussian elimination.
/// Pivoting is deterministic: first nonzero entry in column order.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void append_row(const std::vector<Rational>& row);
    std::vector<Rational> row(std::size_t i) const;

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

/// One solution of A x = b, if any.
std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b);

/// Basis of the right nullspace of A.
std::vector<std::vector<Rational>> nullspace(const QMatrix& a);

/// Incremental row-space tracker. Feeding rows one at a time reports, for
/// each row, whether it enlarged the span; dependent rows come with the
/// coefficients expressing them in terms of the previously accepted rows.
class RowSpan {
public:
    explicit RowSpan(std::size_t cols) : cols_(cols) {}

    struct Feed {
        bool independent;
        std::vector<Rational> combination;  // over accepted rows, empty if independent
    };
    Feed feed(std::vector<Rational> row);

    std::size_t rank() const { return basis_.size(); }

private:
    std::size_t cols_;
    std::vector<std::vector<Rational>> basis_;      // echelonized accepted rows
    std::vector<std::size_t> pivot_;                // pivot column per basis row
    std::vector<std::vector<Rational>> history_;    // expression of basis rows in fed accepted rows
    std::size_t accepted_ = 0;
};

}  // namespace knlab

#endif
