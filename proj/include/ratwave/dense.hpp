#ifndef RATWAVE_DENSE_HPP
#define RATWAVE_DENSE_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ratwave/rational.hpp"

namespace ratwave {

/// Small row-major dense matrix. Sizes here never exceed a few dozen, so
/// there is no attempt at blocking or expression templates.
template <Scalar T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        DenseMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend std::vector<T> operator*(const DenseMatrix& a, const std::vector<T>& x) {
        std::vector<T> y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
        return y;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Solves a x = b by Gaussian elimination. Exact scalars eliminate without
/// pivoting and require nonzero leading principal minors (true for SPD
/// input); floating point uses partial pivoting.
template <Scalar T>
std::vector<T> gaussian_solve(DenseMatrix<T> a, std::vector<T> b) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        if constexpr (!is_exact_v<T>) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
                std::swap(b[col], b[piv]);
            }
            if (!(std::fabs(a(col, col)) > 0.0) || !std::isfinite(a(col, col)))
                throw SingularSystem("gaussian_solve: zero pivot at column " + std::to_string(col));
        } else {
            if (is_zero(a(col, col)))
                throw SingularSystem("gaussian_solve: zero leading principal minor at column " + std::to_string(col));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(a(r, col))) continue;
            const T f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<T> x(n);
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

} // namespace ratwave

#endif // RATWAVE_DENSE_HPP
