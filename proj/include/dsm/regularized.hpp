#pragma once

#include "dsm/linalg.hpp"

namespace dsm {

/// Solves (A^T A + a I) x = rhs for a > 0.
///
/// Implemented as two triangular solves against the R factor of the
/// augmented matrix [A; sqrt(a) I] (R^T R = A^T A + a I), so the
/// conditioning seen by the factorization is sqrt of the normal-equation
/// conditioning. Scalar unknowns (n == 1) use the normal equation
/// directly — a sum of positives, exact where the spec's equality
/// examples demand it.
Vector regularized_solve(const Matrix& a_mat, Real a, const Vector& rhs);

/// T_a^{-1} A^T w. Guaranteed ||result|| <= ||w|| / (2 sqrt(a)); the
/// implementation checks the bound and refuses to return a violation.
Vector regularized_pullback(const Matrix& a_mat, Real a, const Vector& w);

/// Explicitly assembles (T_a^{-1} - Ttilde_a^{-1}) Ttilde where
/// T = A^T A and Ttilde = Atilde^T Atilde, column by column. Used by the
/// perturbation-bound property checks.
Matrix regularized_resolvent_difference(const Matrix& a_mat, const Matrix& a_tilde, Real a);

} // namespace dsm
