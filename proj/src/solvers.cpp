#include "dsm/solvers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dsm/errors.hpp"
#include "dsm/regularized.hpp"

namespace dsm {
namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

void validate_common(const SolverConfig& cfg) {
    if (!(cfg.h > 0.0 && cfg.h < 1.0)) throw ConfigError("solver config: h must lie in (0,1)");
    if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw ConfigError("solver config: q must lie in (0,1)");
    if (!(cfg.q + cfg.h > 1.0)) throw ConfigError("solver config: q + h must exceed 1");
    if (!(cfg.t_max > 0.0)) throw ConfigError("solver config: t_max must be positive");
    if (cfg.n_max < 1) throw ConfigError("solver config: n_max must be >= 1");
    if (!(cfg.residual_tol > 0.0)) throw ConfigError("solver config: residual_tol must be positive");
    if (!(cfg.dt > 0.0)) throw ConfigError("solver config: dt must be positive");
    if (!(cfg.lambda > 0.0)) throw ConfigError("solver config: lambda must be positive");
}

InequalityCheck make_check(std::string name, Real lhs, Real rhs, bool evaluable, bool strict = false) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.evaluable = evaluable;
    c.holds = evaluable && (strict ? lhs < rhs : lhs <= rhs);
    c.margin = rhs - lhs;
    return c;
}

bool finish(CertificationReport& rep) {
    rep.all_certified = true;
    for (const auto& c : rep.checks)
        if (!c.evaluable || !c.holds) rep.all_certified = false;
    return rep.all_certified;
}

Real v_norm_of(const SolverConfig& cfg) { return cfg.v ? norm2(*cfg.v) : 0.0; }

void check_divergence(const Problem& p, const Vector& u) {
    if (norm2(sub(u, p.u0)) > 10.0 * p.radius)
        throw Diverged("trajectory left the expanded ball ||u - u0|| > 10 R");
}

/// Shared RK4 driver for the exact and noisy flows. `shifted_eval` is
/// F(u) or F(u) - f_delta.
template <typename EvalFn>
SolveResult integrate_flow(const Problem& p, const Schedule& s, const SolverConfig& cfg, const Vector& z,
                           EvalFn&& shifted_eval, Real t_end, bool stop_on_residual, bool certified,
                           Termination horizon_reason) {
    const auto rhs_at = [&](const Vector& u, Real t) {
        const Real a = eval_schedule(s, t).a;
        if (!(a > 0.0)) throw NonFiniteOutput("schedule underflowed to zero at t = " + std::to_string(t));
        const Matrix jac_u = jacobian(p, u);
        Vector r = jac_u.apply_transposed(shifted_eval(u));
        axpy(r, a, sub(u, z));
        return scaled(regularized_solve(jac_u, a, r), -1.0);
    };

    const std::optional<Vector>& y = p.known_solution;
    SolveResult out;
    out.bound_held = certified ? std::optional<bool>(true) : std::nullopt;

    Vector u = p.u0;
    Real t = 0.0;
    long i = 0;
    const Real t_eps = 1e-12 * std::max(1.0, t_end);

    const auto record = [&](Real residual) {
        TraceRow row;
        row.n = i;
        row.t = t;
        row.a = eval_schedule(s, t).a;
        row.residual = residual;
        if (y) {
            row.error = norm2(sub(u, *y));
            row.bound = std::sqrt(row.a) / cfg.lambda;
            if (certified && i >= 1 && !(*row.error < *row.bound) && *out.bound_held) {
                out.bound_held = false;
                out.first_violation = i;
            }
        }
        out.trace.rows.push_back(row);
    };

    Real residual = norm2(shifted_eval(u));
    record(residual);

    for (;;) {
        if (stop_on_residual && residual <= cfg.residual_tol) {
            out.termination = Termination::ResidualTol;
            break;
        }
        if (t_end - t <= t_eps) {
            out.termination = horizon_reason;
            break;
        }
        const Real dt_step = std::min(cfg.dt, t_end - t);
        const Vector k1 = rhs_at(u, t);
        Vector u2 = u;
        axpy(u2, dt_step / 2.0, k1);
        const Vector k2 = rhs_at(u2, t + dt_step / 2.0);
        Vector u3 = u;
        axpy(u3, dt_step / 2.0, k2);
        const Vector k3 = rhs_at(u3, t + dt_step / 2.0);
        Vector u4 = u;
        axpy(u4, dt_step, k3);
        const Vector k4 = rhs_at(u4, t + dt_step);

        axpy(u, dt_step / 6.0, k1);
        axpy(u, dt_step / 3.0, k2);
        axpy(u, dt_step / 3.0, k3);
        axpy(u, dt_step / 6.0, k4);
        t = (dt_step == cfg.dt) ? t + cfg.dt : t_end;
        ++i;

        check_divergence(p, u);
        residual = norm2(shifted_eval(u));
        record(residual);
    }

    out.u_final = u;
    if (y) out.fitted_rate = fit_geometric_rate(out.trace);
    return out;
}

} // namespace

Vector resolve_shift(const Problem& p, const SolverConfig& cfg) {
    switch (cfg.z_policy) {
    case ZPolicy::Explicit:
        if (cfg.z.size() != p.dim_domain) throw ConfigError("explicit z has wrong dimension");
        return cfg.z;
    case ZPolicy::EqualU0:
        return p.u0;
    case ZPolicy::FromV: {
        if (!p.known_solution)
            throw MissingOracle("z_policy from_v requires a known solution (benchmark mode)");
        if (!cfg.v) throw MissingOracle("z_policy from_v requires the source element v");
        if (cfg.v->size() != p.dim_domain) throw ConfigError("v has wrong dimension");
        const Matrix jac_y = jacobian(p, *p.known_solution);
        const Vector tv = jac_y.apply_transposed(jac_y.apply(*cfg.v));
        return sub(*p.known_solution, tv);
    }
    }
    throw std::logic_error("resolve_shift: unknown policy");
}

CertificationReport certify_continuous(const Problem& p, const SmoothnessBounds& b, const Schedule& s,
                                       const SolverConfig& cfg) {
    CertificationReport rep;
    rep.solver_kind = "continuous";
    const Real a0 = s.a0;
    const Real vn = v_norm_of(cfg);
    const bool has_v = cfg.v.has_value();
    const bool has_y = p.known_solution.has_value();
    const bool from_v = cfg.z_policy == ZPolicy::FromV && has_v && has_y;

    rep.checks.push_back(make_check("lambda >= 8 c0", 8.0 * b.c0, cfg.lambda, true));
    rep.checks.push_back(make_check("2 M1 M2 ||v|| <= 1/2", b.c1 * vn, 0.5, has_v));
    rep.checks.push_back(make_check("8 lambda sqrt(a0) ||v|| <= 1", 8.0 * cfg.lambda * std::sqrt(a0) * vn, 1.0, has_v));
    const Real g0 = has_y ? norm2(sub(p.u0, *p.known_solution)) : 0.0;
    rep.checks.push_back(make_check("g(0) lambda / sqrt(a0) < 1", g0 * cfg.lambda / std::sqrt(a0), 1.0, has_y, true));
    rep.checks.push_back(make_check("z constructed as y - Ttilde v", from_v ? 0.0 : 1.0, 0.0, true));
    finish(rep);
    return rep;
}

CertificationReport certify_iterative(const Problem& p, const SmoothnessBounds& b,
                                      const DiscreteSchedulePolicy& policy, const SolverConfig& cfg) {
    CertificationReport rep;
    rep.solver_kind = "iterative";
    const Real vn = v_norm_of(cfg);
    const bool has_v = cfg.v.has_value();
    const bool has_y = p.known_solution.has_value();
    const bool from_v = cfg.z_policy == ZPolicy::FromV && has_v && has_y;

    rep.checks.push_back(make_check("lambda >= 8 c0", 8.0 * b.c0, cfg.lambda, true));
    rep.checks.push_back(make_check("2 M1 M2 ||v|| <= 1/2", b.c1 * vn, 0.5, has_v));
    rep.checks.push_back(make_check("q + h > 1", 1.0, cfg.q + cfg.h, true, true));

    const Real m = has_y ? norm2(sub(p.u0, *p.known_solution)) : 0.0;
    const Real denom = 16.0 * policy.c0 * cfg.h * vn;
    const Real threshold = denom > 0.0 ? (cfg.q + cfg.h - 1.0) / denom : kInf;
    rep.checks.push_back(make_check("m < (q+h-1)/(16 c0 h ||v||)", m, threshold, has_y && has_v, true));
    rep.checks.push_back(make_check("g_0 = m <= R", m, p.radius, has_y));
    rep.checks.push_back(make_check("z constructed as y - Ttilde v", from_v ? 0.0 : 1.0, 0.0, true));
    finish(rep);
    return rep;
}

CertificationReport certify_noisy(const Problem& p, const SmoothnessBounds& b, const Schedule& s,
                                  const SolverConfig& cfg, Real delta) {
    CertificationReport rep;
    rep.solver_kind = "noisy";
    const Real a0 = s.a0;
    const Real vn = v_norm_of(cfg);
    const bool has_v = cfg.v.has_value();
    const bool has_y = p.known_solution.has_value();
    const bool from_v = cfg.z_policy == ZPolicy::FromV && has_v && has_y;

    rep.checks.push_back(make_check("lambda >= 8 c0", 8.0 * b.c0, cfg.lambda, true));
    rep.checks.push_back(make_check("2 M1 M2 ||v|| <= 1/2", b.c1 * vn, 0.5, has_v));
    rep.checks.push_back(make_check("8 lambda sqrt(a0) ||v|| <= 1/2", 8.0 * cfg.lambda * std::sqrt(a0) * vn, 0.5, has_v));
    const Real g0 = has_y ? norm2(sub(p.u0, *p.known_solution)) : 0.0;
    rep.checks.push_back(make_check("g(0) lambda / sqrt(a0) < 1", g0 * cfg.lambda / std::sqrt(a0), 1.0, has_y, true));
    rep.checks.push_back(make_check("8 lambda delta < a0 (t_delta > 0)", 8.0 * cfg.lambda * delta, a0, true, true));
    rep.checks.push_back(make_check("z constructed as y - Ttilde v", from_v ? 0.0 : 1.0, 0.0, true));
    finish(rep);
    return rep;
}

Vector dsm_rhs(const Problem& p, const Vector& u, Real a, const Vector& z) {
    if (!(a > 0.0)) throw DegenerateRegularization("dsm_rhs: a must be positive");
    const Matrix jac_u = jacobian(p, u);
    Vector r = jac_u.apply_transposed(evaluate(p, u));
    axpy(r, a, sub(u, z));
    return scaled(regularized_solve(jac_u, a, r), -1.0);
}

Vector step_iterative(const Problem& p, const Vector& u_n, Real a_n, Real h_n, const Vector& z) {
    if (!(h_n >= 0.0 && h_n <= 1.0)) throw ConfigError("step_iterative: h_n must lie in [0,1]");
    if (h_n == 0.0) return u_n;
    Vector u = u_n;
    axpy(u, h_n, dsm_rhs(p, u_n, a_n, z));
    require_finite(u, "step_iterative");
    return u;
}

SolveResult solve_continuous(const Problem& p, const Schedule& s, const SolverConfig& cfg,
                             const CertificationReport* cert) {
    validate_common(cfg);
    const ValidityCertificate vc = validate_schedule(s);
    if (!vc.valid) throw ConfigError("invalid schedule: " + vc.reason);
    const Vector z = resolve_shift(p, cfg);
    const bool certified = cert && cert->all_certified && p.known_solution.has_value();
    return integrate_flow(
        p, s, cfg, z, [&](const Vector& u) { return evaluate(p, u); }, cfg.t_max,
        /*stop_on_residual=*/true, certified, Termination::TMax);
}

SolveResult solve_iterative(const Problem& p, const DiscreteSchedulePolicy& policy, const SolverConfig& cfg,
                            const CertificationReport* cert) {
    validate_common(cfg);
    const Vector z = resolve_shift(p, cfg);
    const std::optional<Vector>& y = p.known_solution;

    if (policy.mode == PolicyMode::Oracle) {
        if (!y) throw MissingOracle("solve_iterative: oracle policy requires a known solution");
        if (!cfg.v) throw MissingOracle("solve_iterative: oracle policy requires v (z = y - Ttilde v)");
        const Real m = norm2(sub(p.u0, *y));
        const Real denom = 16.0 * policy.c0 * cfg.h * norm2(*cfg.v);
        if (denom > 0.0) {
            const Real threshold = (cfg.q + cfg.h - 1.0) / denom;
            if (!(m < threshold)) {
                std::ostringstream msg;
                msg << "solve_iterative: initial error m = " << m
                    << " violates m < (q+h-1)/(16 c0 h ||v||) = " << threshold
                    << "; the convergence theory guarantees nothing here";
                throw HypothesisViolated(msg.str());
            }
        }
    }

    const bool certified =
        cert && cert->all_certified && y.has_value() && policy.mode == PolicyMode::Oracle;

    SolveResult out;
    out.bound_held = certified ? std::optional<bool>(true) : std::nullopt;

    Vector u = p.u0;
    Real g0 = y ? norm2(sub(p.u0, *y)) : 0.0;
    Real majorant = g0; // g0 * q^n, updated multiplicatively
    for (long n = 0;; ++n) {
        const Real residual = norm2(evaluate(p, u));
        TraceRow row;
        row.n = n;
        row.t = static_cast<Real>(n);
        row.residual = residual;
        if (y) {
            row.error = norm2(sub(u, *y));
            row.bound = majorant;
            if (certified && !(*row.error <= *row.bound) && *out.bound_held) {
                out.bound_held = false;
                out.first_violation = n;
            }
        }

        PolicyState st;
        if (y) st.g = row.error;
        st.residual = residual;
        st.n = n;
        const Real a_n = next_a(policy, st);
        row.a = a_n;
        out.trace.rows.push_back(row);

        if (residual <= cfg.residual_tol) {
            out.termination = Termination::ResidualTol;
            break;
        }
        if (n >= cfg.n_max) {
            out.termination = Termination::NMax;
            break;
        }

        u = step_iterative(p, u, a_n, cfg.h, z);
        check_divergence(p, u);
        majorant *= cfg.q;
    }

    out.u_final = u;
    if (y) out.fitted_rate = fit_geometric_rate(out.trace);
    return out;
}

SolveResult solve_noisy(const Problem& p, const Vector& f_delta, Real delta, const Schedule& s,
                        const SolverConfig& cfg, const CertificationReport* cert) {
    validate_common(cfg);
    const ValidityCertificate vc = validate_schedule(s);
    if (!vc.valid) throw ConfigError("invalid schedule: " + vc.reason);
    if (!(delta > 0.0)) throw ConfigError("solve_noisy: delta must be positive");
    if (f_delta.size() != p.dim_range) throw ConfigError("solve_noisy: f_delta has wrong dimension");

    const Real t_delta = stopping_time(s, delta, cfg.lambda);
    if (!(t_delta > 0.0)) {
        std::ostringstream msg;
        msg << "solve_noisy: 8 lambda delta = " << 8.0 * cfg.lambda * delta << " >= a0 = " << s.a0
            << "; no positive run possible at this noise level";
        throw NoiseTooLarge(msg.str());
    }

    if (p.known_solution) {
        const Real dist = norm2(sub(f_delta, evaluate(p, *p.known_solution)));
        if (dist > delta * (1.0 + 1e-12))
            throw ConfigError("solve_noisy: ||f_delta - F(y)|| exceeds the stated delta (benchmark mode)");
    }

    const Vector z = resolve_shift(p, cfg);
    const bool certified = cert && cert->all_certified && p.known_solution.has_value();
    // t_max acts as a hard resource cap; the stopping rule is the
    // intended horizon.
    const bool capped = t_delta > cfg.t_max;
    const Real t_end = capped ? cfg.t_max : t_delta;
    return integrate_flow(
        p, s, cfg, z, [&](const Vector& u) { return sub(evaluate(p, u), f_delta); }, t_end,
        /*stop_on_residual=*/false, certified, capped ? Termination::TMax : Termination::StoppingTime);
}

std::optional<Real> fit_geometric_rate(const Trace& trace) {
    std::vector<Real> xs, ys;
    for (const auto& row : trace.rows) {
        if (row.error && *row.error > 1e-14) {
            xs.push_back(static_cast<Real>(row.n));
            ys.push_back(std::log(*row.error));
        }
    }
    if (xs.size() < 5) return std::nullopt;

    const std::size_t n = xs.size();
    Real mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<Real>(n);
    my /= static_cast<Real>(n);
    Real sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0) return std::nullopt;
    return std::exp(sxy / sxx);
}

const char* to_string(Termination t) {
    switch (t) {
    case Termination::ResidualTol: return "residual_tol";
    case Termination::TMax: return "t_max";
    case Termination::NMax: return "n_max";
    case Termination::StoppingTime: return "stopping_time";
    case Termination::Diverged: return "diverged";
    }
    return "?";
}

const char* to_string(ZPolicy z) {
    switch (z) {
    case ZPolicy::Explicit: return "explicit";
    case ZPolicy::FromV: return "from_v";
    case ZPolicy::EqualU0: return "equal_u0";
    }
    return "?";
}

ZPolicy z_policy_from_string(const std::string& s) {
    if (s == "explicit") return ZPolicy::Explicit;
    if (s == "from_v") return ZPolicy::FromV;
    if (s == "equal_u0") return ZPolicy::EqualU0;
    throw ConfigError("unknown z policy: " + s);
}

} // namespace dsm
