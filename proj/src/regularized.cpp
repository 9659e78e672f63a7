#include "dsm/regularized.hpp"

#include <cmath>
#include <stdexcept>

#include "dsm/errors.hpp"

namespace dsm {
namespace {

/// Householder QR of the (m+n) x n augmented matrix [A; sqrt(a) I],
/// returning only the n x n upper-triangular R with R^T R = A^T A + a I.
Matrix augmented_r_factor(const Matrix& a_mat, Real a) {
    const std::size_t m = a_mat.rows();
    const std::size_t n = a_mat.cols();
    const std::size_t big = m + n;
    const Real sqrt_a = std::sqrt(a);

    Matrix b(big, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = a_mat(i, j);
    for (std::size_t j = 0; j < n; ++j) b(m + j, j) = sqrt_a;

    Vector v(big);
    for (std::size_t k = 0; k < n; ++k) {
        Real sigma = 0.0;
        for (std::size_t i = k; i < big; ++i) sigma += b(i, k) * b(i, k);
        sigma = std::sqrt(sigma);
        if (sigma == 0.0) continue; // cannot happen for a > 0, kept as a guard

        const Real alpha = b(k, k) >= 0.0 ? -sigma : sigma;
        v[k] = b(k, k) - alpha;
        for (std::size_t i = k + 1; i < big; ++i) v[i] = b(i, k);
        const Real vtv = sigma * (sigma + std::abs(b(k, k))) * 2.0;
        if (vtv == 0.0) continue;

        for (std::size_t j = k + 1; j < n; ++j) {
            Real s = 0.0;
            for (std::size_t i = k; i < big; ++i) s += v[i] * b(i, j);
            const Real f = 2.0 * s / vtv;
            for (std::size_t i = k; i < big; ++i) b(i, j) -= f * v[i];
        }
        b(k, k) = alpha;
        for (std::size_t i = k + 1; i < big; ++i) b(i, k) = 0.0;
    }

    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) r(i, j) = b(i, j);
    return r;
}

} // namespace

Vector regularized_solve(const Matrix& a_mat, Real a, const Vector& rhs) {
    if (!(a > 0.0)) throw DegenerateRegularization("regularized_solve: a must be positive, got " + std::to_string(a));
    const std::size_t n = a_mat.cols();
    if (rhs.size() != n) throw std::invalid_argument("regularized_solve: rhs dimension mismatch");
    require_finite(rhs, "regularized_solve rhs");
    if (!a_mat.all_finite()) throw NonFiniteOutput("regularized_solve: matrix has non-finite entries");

    if (n == 1) {
        Real t = a;
        for (std::size_t i = 0; i < a_mat.rows(); ++i) t += a_mat(i, 0) * a_mat(i, 0);
        return {rhs[0] / t};
    }

    const Matrix r = augmented_r_factor(a_mat, a);

    // R^T w = rhs (forward), then R x = w (backward).
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real s = rhs[i];
        for (std::size_t j = 0; j < i; ++j) s -= r(j, i) * w[j];
        w[i] = s / r(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Real s = w[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
        x[ii] = s / r(ii, ii);
    }
    require_finite(x, "regularized_solve result");
    return x;
}

Vector regularized_pullback(const Matrix& a_mat, Real a, const Vector& w) {
    if (!(a > 0.0)) throw DegenerateRegularization("regularized_pullback: a must be positive, got " + std::to_string(a));
    if (w.size() != a_mat.rows()) throw std::invalid_argument("regularized_pullback: w dimension mismatch");

    const Vector x = regularized_solve(a_mat, a, a_mat.apply_transposed(w));

    // ||T_a^{-1} A^T w|| <= ||w|| / (2 sqrt(a)) holds for every matrix;
    // exceeding it means the solve itself broke down.
    const Real bound = norm2(w) / (2.0 * std::sqrt(a));
    if (norm2(x) > bound * (1.0 + 1e-9))
        throw NonFiniteOutput("regularized_pullback: operator bound violated, solve unreliable");
    return x;
}

Matrix regularized_resolvent_difference(const Matrix& a_mat, const Matrix& a_tilde, Real a) {
    const std::size_t n = a_mat.cols();
    if (a_tilde.cols() != n) throw std::invalid_argument("regularized_resolvent_difference: column mismatch");

    Matrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector ej(n, 0.0);
        ej[j] = 1.0;
        // column j of Ttilde
        const Vector tcol = a_tilde.apply_transposed(a_tilde.apply(ej));
        const Vector x = regularized_solve(a_mat, a, tcol);
        const Vector y = regularized_solve(a_tilde, a, tcol);
        for (std::size_t i = 0; i < n; ++i) out(i, j) = x[i] - y[i];
    }
    return out;
}

} // namespace dsm
