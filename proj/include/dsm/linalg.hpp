#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dsm {

using Real = double;
using Vector = std::vector<Real>;

/// Dense row-major matrix. Everything in this library is desk-scale
/// (n <= 10), so plain loops beat anything clever.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Real fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Real operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Real>& data() const { return data_; }

    /// y = A x
    Vector apply(const Vector& x) const;
    /// y = A^T x
    Vector apply_transposed(const Vector& x) const;

    Matrix transposed() const;
    bool all_finite() const;
    Real frobenius_norm() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Real> data_;
};

// Vector helpers (Euclidean structure of H = R^n).
Real dot(const Vector& a, const Vector& b);
Real norm2(const Vector& a);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, Real s);
/// y += s * x
void axpy(Vector& y, Real s, const Vector& x);
bool all_finite(const Vector& a);
void require_finite(const Vector& a, const std::string& context);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);

/// Largest singular value, by power iteration on A^T A.
/// Tolerance 1e-10 on the Rayleigh quotient, at most 1e4 iterations.
Real spectral_norm(const Matrix& a);

} // namespace dsm
