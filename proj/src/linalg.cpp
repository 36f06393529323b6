#include "knlab/linalg.hpp"

#include <stdexcept>

namespace knlab {

void QMatrix::append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("QMatrix::append_row: width mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<Rational> QMatrix::row(std::size_t i) const {
    return std::vector<Rational>(a_.begin() + static_cast<long>(i * cols_),
                                 a_.begin() + static_cast<long>((i + 1) * cols_));
}

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        const Rational inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            const Rational f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // row [0..0|1]
    std::vector<Rational> x(a.cols(), Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, a.cols());
    return x;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& a) {
    QMatrix m = a;
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_c = 0; free_c < a.cols(); ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rational> v(a.cols(), Rational(0));
        v[free_c] = Rational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(k, free_c);
        basis.push_back(std::move(v));
    }
    return basis;
}

RowSpan::Feed RowSpan::feed(std::vector<Rational> row) {
    if (row.size() != cols_) throw std::invalid_argument("RowSpan::feed: width mismatch");
    std::vector<Rational> expr(accepted_, Rational(0));  // combination of accepted rows equal to the reduced part
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Rational f = row[pivot_[k]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * basis_[k][j];
        for (std::size_t j = 0; j < history_[k].size(); ++j) expr[j] += f * history_[k][j];
    }
    std::size_t p = 0;
    while (p < cols_ && row[p].is_zero()) ++p;
    if (p == cols_) {
        return {false, std::move(expr)};
    }
    const Rational inv = row[p].inverse();
    for (auto& v : row) v *= inv;
    // history of the new basis row: (fed_row - expr)/pivot
    std::vector<Rational> h(accepted_ + 1, Rational(0));
    for (std::size_t j = 0; j < accepted_; ++j) h[j] = -expr[j] * inv;
    h[accepted_] = inv;
    basis_.push_back(std::move(row));
    pivot_.push_back(p);
    history_.push_back(std::move(h));
    ++accepted_;
    return {true, {}};
}

}  // namespace knlab
