#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace orbimf {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<mpq_class> a_;
};

// In-place reduced row echelon form; returns pivot columns. Columns are visited
// in the order given by col_order (default: left to right).
std::vector<std::size_t> rref(QMatrix& m, const std::vector<std::size_t>* col_order = nullptr);

std::size_t rank(QMatrix m);

// One solution of A x = b (free variables set to zero), or nullopt.
std::optional<std::vector<mpq_class>> solve(const QMatrix& a, const std::vector<mpq_class>& b,
                                            const std::vector<std::size_t>* col_order = nullptr);

std::vector<std::vector<mpq_class>> nullspace(const QMatrix& a);

mpq_class determinant(QMatrix m);

}  // namespace orbimf
