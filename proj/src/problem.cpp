#include "dsm/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dsm/errors.hpp"
#include "dsm/rng.hpp"

namespace dsm {

Vector evaluate(const Problem& p, const Vector& u) {
    if (u.size() != p.dim_domain) throw std::invalid_argument("evaluate: dim(u) != dim_domain");
    require_finite(u, "evaluate input");
    Vector f = p.eval(u);
    if (f.size() != p.dim_range) throw std::invalid_argument("evaluate: F(u) has wrong dimension");
    require_finite(f, "F(u)");
    return f;
}

Matrix jacobian(const Problem& p, const Vector& u) {
    if (p.jac) {
        Matrix j = p.jac(u);
        if (j.rows() != p.dim_range || j.cols() != p.dim_domain)
            throw std::invalid_argument("jacobian: analytic Jacobian has wrong shape");
        if (!j.all_finite()) throw NonFiniteOutput("F'(u): non-finite entries");
        return j;
    }

    // Central differences, column by column.
    static const Real h0 = std::cbrt(std::numeric_limits<Real>::epsilon());
    Matrix j(p.dim_range, p.dim_domain);
    Vector up = u, um = u;
    for (std::size_t k = 0; k < p.dim_domain; ++k) {
        const Real h = h0 * std::max(1.0, std::abs(u[k]));
        up[k] = u[k] + h;
        um[k] = u[k] - h;
        const Vector fp = evaluate(p, up);
        const Vector fm = evaluate(p, um);
        const Real inv = 1.0 / (2.0 * h);
        for (std::size_t i = 0; i < p.dim_range; ++i) j(i, k) = (fp[i] - fm[i]) * inv;
        up[k] = u[k];
        um[k] = u[k];
    }
    return j;
}

namespace {

struct BoundSamples {
    std::vector<Vector> points;
    std::vector<Vector> directions;
    std::vector<Real> steps;
};

// Sample points/directions are drawn serially so parallel evaluation sees
// exactly the same inputs as the serial reference.
BoundSamples draw_samples(const Problem& p, int samples, std::uint64_t seed) {
    BoundSamples s;
    s.points.reserve(samples);
    s.directions.reserve(samples);
    s.steps.reserve(samples);
    Rng rng(seed);
    static const Real h0 = std::cbrt(std::numeric_limits<Real>::epsilon());
    for (int k = 0; k < samples; ++k) {
        Vector u = rng.in_ball(p.u0, p.radius);
        Vector d = rng.unit_vector(p.dim_domain);
        s.steps.push_back(h0 * std::max(1.0, norm2(u)));
        s.points.push_back(std::move(u));
        s.directions.push_back(std::move(d));
    }
    return s;
}

struct SampleMax {
    Real m0, m1, m2;
};

SampleMax eval_sample(const Problem& p, const Vector& u, const Vector& d, Real h) {
    SampleMax r;
    r.m0 = norm2(evaluate(p, u));
    const Matrix j = jacobian(p, u);
    r.m1 = spectral_norm(j);
    Vector shifted(u);
    axpy(shifted, h, d);
    const Matrix j2 = jacobian(p, shifted);
    r.m2 = spectral_norm(sub(j2, j)) / h;
    return r;
}

} // namespace

SmoothnessBounds estimate_bounds_serial(const Problem& p, int samples, std::uint64_t rng_seed) {
    if (samples < 1) throw std::invalid_argument("estimate_bounds: samples must be >= 1");
    const BoundSamples s = draw_samples(p, samples, rng_seed);
    Real m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int k = 0; k < samples; ++k) {
        const SampleMax r = eval_sample(p, s.points[k], s.directions[k], s.steps[k]);
        m0 = std::max(m0, r.m0);
        m1 = std::max(m1, r.m1);
        m2 = std::max(m2, r.m2);
    }
    return SmoothnessBounds::from_m(m0, m1, m2);
}

SmoothnessBounds estimate_bounds(const Problem& p, int samples, std::uint64_t rng_seed) {
    if (samples < 1) throw std::invalid_argument("estimate_bounds: samples must be >= 1");
    const BoundSamples s = draw_samples(p, samples, rng_seed);
    Real m0 = 0.0, m1 = 0.0, m2 = 0.0;
    bool failed = false;
    // max-reduction is order-independent, so the result is bitwise equal
    // to the serial reference for any thread count. Exceptions must not
    // cross the parallel region; failures are collected and rethrown.
#pragma omp parallel for schedule(static) reduction(max : m0, m1, m2) reduction(|| : failed)
    for (int k = 0; k < samples; ++k) {
        try {
            const SampleMax r = eval_sample(p, s.points[k], s.directions[k], s.steps[k]);
            m0 = std::max(m0, r.m0);
            m1 = std::max(m1, r.m1);
            m2 = std::max(m2, r.m2);
        } catch (...) {
            failed = true;
        }
    }
    if (failed) throw NonFiniteOutput("estimate_bounds: a sample evaluation failed");
    return SmoothnessBounds::from_m(m0, m1, m2);
}

std::pair<Real, Real> taylor_remainder_check(const Problem& p, const Vector& u, const Vector& y,
                                             const SmoothnessBounds& bounds) {
    if (norm2(sub(u, p.u0)) > p.radius)
        throw OutOfBall("taylor_remainder_check: u outside B(u0, R)");
    if (norm2(sub(y, p.u0)) > p.radius)
        throw OutOfBall("taylor_remainder_check: y outside B(u0, R)");

    const Vector w = sub(u, y);
    const Vector lhs = sub(sub(evaluate(p, u), evaluate(p, y)), jacobian(p, u).apply(w));
    const Real g2 = dot(w, w);
    return {norm2(lhs), bounds.m2 * g2 / 2.0};
}

} // namespace dsm
