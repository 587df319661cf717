#include "orbimf/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace orbimf {

std::vector<std::size_t> rref(QMatrix& m, const std::vector<std::size_t>* col_order) {
    std::vector<std::size_t> order;
    if (col_order) {
        order = *col_order;
    } else {
        order.resize(m.cols());
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    mpq_class f;
    for (std::size_t col : order) {
        if (row >= m.rows()) break;
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        mpq_class inv = 1 / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(row, j) != 0) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::optional<std::vector<mpq_class>> solve(const QMatrix& a, const std::vector<mpq_class>& b,
                                            const std::vector<std::size_t>* col_order) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> order;
    if (col_order) {
        order = *col_order;
    } else {
        order.resize(a.cols());
        std::iota(order.begin(), order.end(), 0);
    }
    auto piv = rref(aug, &order);
    for (std::size_t i = piv.size(); i < a.rows(); ++i)
        if (aug(i, a.cols()) != 0) return std::nullopt;
    std::vector<mpq_class> x(a.cols(), 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
    return x;
}

std::vector<std::vector<mpq_class>> nullspace(const QMatrix& a) {
    QMatrix m = a;
    auto piv = rref(m);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<mpq_class>> out;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_piv[free]) continue;
        std::vector<mpq_class> v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, free);
        out.push_back(std::move(v));
    }
    return out;
}

mpq_class determinant(QMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    const std::size_t n = m.rows();
    mpq_class det = 1, f;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

}  // namespace orbimf
