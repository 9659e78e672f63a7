#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsm/problem.hpp"
#include "dsm/schedules.hpp"

namespace dsm {

enum class ZPolicy { Explicit, FromV, EqualU0 };

/// Settings shared by the three solvers. The shift element z is the
/// proof's mechanism for taming null directions of F'(y): benchmark runs
/// construct z = y - Ttilde v from a small v, production runs default to
/// z = u0 (no guarantee attaches to that choice).
struct SolverConfig {
    ZPolicy z_policy = ZPolicy::EqualU0;
    Vector z;                // used when z_policy == Explicit
    std::optional<Vector> v; // benchmark source element
    Real lambda = 1.0;
    Real h = 0.5;
    Real q = 0.9;
    Real t_max = 1e3;
    long n_max = 10000;
    Real residual_tol = 1e-6;
    Real dt = 1e-2;
};

struct TraceRow {
    long n = 0;
    Real t = 0.0;
    Real a = 0.0;
    Real residual = 0.0;
    std::optional<Real> error; // ||u - y||, benchmark only
    std::optional<Real> bound; // active theorem's majorant, benchmark only
};

struct Trace {
    std::vector<TraceRow> rows;
};

enum class Termination { ResidualTol, TMax, NMax, StoppingTime, Diverged };

struct SolveResult {
    Vector u_final;
    Trace trace;
    Termination termination = Termination::TMax;
    std::optional<Real> fitted_rate;
    /// Set when a certified theorem bound was checked along the run.
    std::optional<bool> bound_held;
    std::optional<long> first_violation;
};

/// One inequality from the proofs, with its margin. `evaluable` is false
/// when the run lacks the data (no known solution, no v).
struct InequalityCheck {
    std::string name;
    Real lhs = 0.0;
    Real rhs = 0.0;
    bool evaluable = false;
    bool holds = false;
    Real margin = 0.0; // rhs - lhs (or strictness margin)
};

struct CertificationReport {
    std::string solver_kind;
    std::vector<InequalityCheck> checks;
    bool all_certified = false;
};

/// Resolves the shift element per config.z_policy (FromV needs both a
/// known solution and v; builds z = y - Ttilde v).
Vector resolve_shift(const Problem& p, const SolverConfig& cfg);

/// Pre-run reports: each theorem hypothesis listed with its margin, so a
/// failed guarantee is distinguishable from a failed run.
CertificationReport certify_continuous(const Problem& p, const SmoothnessBounds& b, const Schedule& s,
                                       const SolverConfig& cfg);
CertificationReport certify_iterative(const Problem& p, const SmoothnessBounds& b,
                                      const DiscreteSchedulePolicy& policy, const SolverConfig& cfg);
CertificationReport certify_noisy(const Problem& p, const SmoothnessBounds& b, const Schedule& s,
                                  const SolverConfig& cfg, Real delta);

/// Right-hand side of the flow: -T_a^{-1} [A^T F(u) + a (u - z)].
Vector dsm_rhs(const Problem& p, const Vector& u, Real a, const Vector& z);

/// u_n + h_n * dsm_rhs(u_n, a_n, z).
Vector step_iterative(const Problem& p, const Vector& u_n, Real a_n, Real h_n, const Vector& z);

/// Integrates the flow with classical RK4 at fixed step cfg.dt until
/// ||F(u)|| <= residual_tol or t >= t_max. When `cert` is certified and a
/// known solution exists, checks ||u - y|| < sqrt(a(t))/lambda at every
/// recorded step after the first and records the outcome in bound_held.
SolveResult solve_continuous(const Problem& p, const Schedule& s, const SolverConfig& cfg,
                             const CertificationReport* cert = nullptr);

/// Discrete iteration with a_n from the policy. Oracle mode requires the
/// known solution and rejects initial errors above the certified
/// threshold before running.
SolveResult solve_iterative(const Problem& p, const DiscreteSchedulePolicy& policy, const SolverConfig& cfg,
                            const CertificationReport* cert = nullptr);

/// Noisy-data flow: F(u) - f_delta in place of F(u), integrated up to the
/// stopping time a(t_delta) = 8*lambda*delta.
SolveResult solve_noisy(const Problem& p, const Vector& f_delta, Real delta, const Schedule& s,
                        const SolverConfig& cfg, const CertificationReport* cert = nullptr);

/// Least-squares geometric rate of the error column: slope of
/// log(error) vs n, exponentiated. Needs >= 5 rows with error > 1e-14.
std::optional<Real> fit_geometric_rate(const Trace& trace);

const char* to_string(Termination t);
const char* to_string(ZPolicy z);
ZPolicy z_policy_from_string(const std::string& s);

} // namespace dsm
