#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsm/schedules.hpp"
#include "dsm/solvers.hpp"

namespace dsm {

/// Data for the differential inequality
///   gdot <= -gamma(t) g + alpha(t) g^2 + beta(t),  g(0) = g0,
/// together with the comparison weight mu(t) whose reciprocal the
/// conclusion bounds g by.
struct Lemma1Instance {
    std::function<Real(Real)> gamma;
    std::function<Real(Real)> alpha;
    std::function<Real(Real)> beta;
    std::function<Real(Real)> mu;
    std::function<Real(Real)> mu_dot;
    Real g0 = 0.0;
    Real horizon = 1.0;
};

struct ConditionCheck {
    std::string name;
    bool holds = false;
    Real min_margin = 0.0;
    std::optional<Real> witness; // grid point of the worst margin / violation
};

/// Structured outcome of checking a lemma on a concrete instance. The
/// conclusion is only examined when every hypothesis holds — the lemma
/// asserts nothing otherwise.
struct LemmaVerdict {
    std::vector<ConditionCheck> hypotheses;
    bool hypotheses_hold = false;
    bool conclusion_checked = false;
    bool conclusion_holds = false;
    std::optional<Real> witness; // t (or n) of the first conclusion violation
};

/// Evaluates conditions i)-iii) on a uniform grid over [0, horizon].
/// i), ii) are non-strict (accepted down to -1e-12 relative); iii) is
/// strict and requires margin >= 1e-12.
LemmaVerdict check_lemma1_conditions(const Lemma1Instance& inst, int grid_points);

/// Integrates the extremal equality ODE gdot = -gamma g + alpha g^2 + beta
/// with RK4 at fixed step dt and asserts g(t) < 1/mu(t) at every step.
/// Any solution of the inequality is dominated by this trajectory, so the
/// check certifies the whole class.
LemmaVerdict verify_lemma1(const Lemma1Instance& inst, Real dt, int grid_points = 10000);

/// Checks m < (q - gamma)/p, then iterates g_{n+1} = gamma g_n + p g_n^2
/// from g_0 = m and asserts g_n <= m q^n for n <= N (1e-12 relative slack
/// for floating point).
LemmaVerdict verify_lemma2(Real gamma, Real p, Real m, Real q, long n_steps);

/// Bridges Lemma 1 to solver runs: error(t) < sqrt(a(t))/lambda at every
/// trace row carrying an error.
LemmaVerdict check_lemma1_against_trace(const Trace& trace, const Schedule& s, Real lambda);

/// The instance Theorem 1's proof feeds to Lemma 1: gamma = 1/2,
/// alpha = c0/sqrt(a(t)), beta = a(t)*||v||, mu = lambda/sqrt(a(t)).
Lemma1Instance theorem1_instance(Real c0, const Schedule& s, Real v_norm, Real lambda, Real g0, Real horizon);

// ---------------------------------------------------------------------
// Seeded sweeps (OpenMP kernels with serial reference twins). Instances
// are generated to satisfy the hypotheses with real margin; every
// verdict in the result should therefore hold.
// ---------------------------------------------------------------------

struct Lemma2Case {
    Real gamma, p, q, m;
};
Lemma2Case random_lemma2_case(std::uint64_t seed);

std::vector<LemmaVerdict> lemma2_sweep(long count, std::uint64_t seed, long n_steps);
std::vector<LemmaVerdict> lemma2_sweep_serial(long count, std::uint64_t seed, long n_steps);

struct Lemma1Case {
    Real c0, v_norm, lambda, g0;
    Schedule schedule;
};
/// Theorem-1 shaped instance with lambda = 8 c0 and 8 lambda sqrt(a0) ||v|| <= 1.
Lemma1Case random_theorem1_case(std::uint64_t seed);

std::vector<LemmaVerdict> lemma1_sweep(int count, std::uint64_t seed, Real horizon, Real dt);
std::vector<LemmaVerdict> lemma1_sweep_serial(int count, std::uint64_t seed, Real horizon, Real dt);

/// Constant-coefficient instance satisfying Eq.-(10)-style conditions
/// with positive margin.
Lemma1Instance random_constant_instance(std::uint64_t seed, Real horizon);

} // namespace dsm
