#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "dsm/linalg.hpp"

namespace dsm {

/// A nonlinear map F : R^n -> R^m with the data the flow needs: the
/// initial point, the ball radius on which smoothness bounds are taken,
/// and (benchmark mode only) a known solution y with F(y) = 0.
struct Problem {
    std::function<Vector(const Vector&)> eval;
    std::function<Matrix(const Vector&)> jac; // empty => central finite differences
    Vector u0;
    Real radius = 1.0;
    std::optional<Vector> known_solution;
    std::size_t dim_domain = 0;
    std::size_t dim_range = 0;
};

/// Estimated (or closed-form) suprema of ||F||, ||F'||, ||F''|| over
/// B(u0, R), plus the derived constants the convergence proofs use.
struct SmoothnessBounds {
    Real m0 = 0.0;
    Real m1 = 0.0;
    Real m2 = 0.0;
    Real c0 = 0.0; // M2 / 4
    Real c1 = 0.0; // 2 M1 M2

    static SmoothnessBounds from_m(Real m0, Real m1, Real m2) {
        SmoothnessBounds b;
        b.m0 = m0;
        b.m1 = m1;
        b.m2 = m2;
        b.c0 = m2 / 4.0;
        b.c1 = 2.0 * m1 * m2;
        return b;
    }

    /// Sampling underestimates suprema; scale before trusting (default 1.5).
    SmoothnessBounds scaled(Real factor) const { return from_m(m0 * factor, m1 * factor, m2 * factor); }
};

/// F(u), with dimension and finiteness guards on both sides.
Vector evaluate(const Problem& p, const Vector& u);

/// F'(u): analytic when supplied, otherwise central differences with
/// per-coordinate step cbrt(eps) * max(1, |u_i|).
Matrix jacobian(const Problem& p, const Vector& u);

/// Max of ||F||, ||F'||_spec and the difference quotient
/// ||F'(u + h d) - F'(u)||_spec / h over `samples` points drawn uniformly
/// from B(u0, R), one unit direction d per point. Deterministic for a
/// fixed seed regardless of thread count.
SmoothnessBounds estimate_bounds(const Problem& p, int samples, std::uint64_t rng_seed);

/// Serial reference for the OpenMP kernel above; must agree bitwise.
SmoothnessBounds estimate_bounds_serial(const Problem& p, int samples, std::uint64_t rng_seed);

/// Returns (||F(u) - F(y) - F'(u)(u - y)||, M2 ||u - y||^2 / 2).
/// Callers assert remainder <= bound * (1 + 1e-6).
std::pair<Real, Real> taylor_remainder_check(const Problem& p, const Vector& u, const Vector& y,
                                             const SmoothnessBounds& bounds);

} // namespace dsm
