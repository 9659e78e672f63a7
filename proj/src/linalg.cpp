#include "dsm/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "dsm/errors.hpp"

namespace dsm {

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        Real s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector Matrix::apply_transposed(const Vector& x) const {
    if (x.size() != rows_) throw std::invalid_argument("Matrix::apply_transposed: dimension mismatch");
    Vector y(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Real xi = x[i];
        for (std::size_t j = 0; j < cols_; ++j) y[j] += data_[i * cols_ + j] * xi;
    }
    return y;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::all_finite() const {
    for (Real x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

Real Matrix::frobenius_norm() const {
    Real s = 0.0;
    for (Real x : data_) s += x * x;
    return std::sqrt(s);
}

Real dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Real s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Real norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

Vector add(const Vector& a, const Vector& b) {
    Vector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vector sub(const Vector& a, const Vector& b) {
    Vector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vector scaled(const Vector& a, Real s) {
    Vector r(a);
    for (auto& x : r) x *= s;
    return r;
}

void axpy(Vector& y, Real s, const Vector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

bool all_finite(const Vector& a) {
    for (Real x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

void require_finite(const Vector& a, const std::string& context) {
    if (!all_finite(a)) throw NonFiniteOutput(context + ": non-finite entries");
}

Matrix add(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Real aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Real spectral_norm(const Matrix& a) {
    const std::size_t n = a.cols();
    if (n == 0 || a.rows() == 0) return 0.0;

    // Deterministic start vector, not axis-aligned.
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i + 1);
    Real nv = norm2(v);
    for (auto& x : v) x /= nv;

    Real lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector w = a.apply_transposed(a.apply(v)); // (A^T A) v
        const Real next = dot(v, w);               // Rayleigh quotient, ||v|| = 1
        const Real wn = norm2(w);
        if (wn <= 0.0) return 0.0; // v in the null space and nothing else to find
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
        if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

} // namespace dsm
