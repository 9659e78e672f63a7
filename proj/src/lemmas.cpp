#include "dsm/lemmas.hpp"

#include <cmath>

#include "dsm/errors.hpp"
#include "dsm/rng.hpp"

namespace dsm {
namespace {

constexpr Real kStrictMargin = 1e-12;
constexpr Real kBlowup = 1e6;

Real rel_scale(Real a, Real b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

} // namespace

LemmaVerdict check_lemma1_conditions(const Lemma1Instance& inst, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("check_lemma1_conditions: grid_points >= 2");
    LemmaVerdict v;

    ConditionCheck ci{"i) alpha <= (mu/2)(gamma - mudot/mu)", true, 0.0, std::nullopt};
    ConditionCheck cii{"ii) beta <= (1/(2 mu))(gamma - mudot/mu)", true, 0.0, std::nullopt};
    ConditionCheck nonneg{"coefficients nonnegative, mu positive", true, 0.0, std::nullopt};
    bool first = true;
    for (int k = 0; k < grid_points; ++k) {
        const Real t = inst.horizon * static_cast<Real>(k) / static_cast<Real>(grid_points - 1);
        const Real gamma = inst.gamma(t);
        const Real alpha = inst.alpha(t);
        const Real beta = inst.beta(t);
        const Real mu = inst.mu(t);
        const Real drift = gamma - inst.mu_dot(t) / mu;

        const Real mn = std::min({gamma, alpha, beta, mu});
        if (mn < 0.0 || !(mu > 0.0)) {
            nonneg.holds = false;
            if (!nonneg.witness) nonneg.witness = t;
        }
        if (first || mn < nonneg.min_margin) nonneg.min_margin = mn;

        const Real mi = mu / 2.0 * drift - alpha;
        if (first || mi < ci.min_margin) {
            ci.min_margin = mi;
            ci.witness = t;
        }
        if (mi < -kStrictMargin * rel_scale(alpha, mu / 2.0 * drift)) ci.holds = false;

        const Real mii = drift / (2.0 * mu) - beta;
        if (first || mii < cii.min_margin) {
            cii.min_margin = mii;
            cii.witness = t;
        }
        if (mii < -kStrictMargin * rel_scale(beta, drift / (2.0 * mu))) cii.holds = false;
        first = false;
    }

    ConditionCheck ciii{"iii) g(0) mu(0) < 1", false, 0.0, std::nullopt};
    ciii.min_margin = 1.0 - inst.g0 * inst.mu(0.0);
    ciii.holds = ciii.min_margin >= kStrictMargin;
    if (!ciii.holds) ciii.witness = 0.0;

    v.hypotheses = {nonneg, ci, cii, ciii};
    v.hypotheses_hold = nonneg.holds && ci.holds && cii.holds && ciii.holds;
    return v;
}

LemmaVerdict verify_lemma1(const Lemma1Instance& inst, Real dt, int grid_points) {
    if (!(dt > 0.0)) throw std::invalid_argument("verify_lemma1: dt must be positive");
    LemmaVerdict v = check_lemma1_conditions(inst, grid_points);
    if (!v.hypotheses_hold) return v;

    v.conclusion_checked = true;
    v.conclusion_holds = true;

    const auto rhs = [&](Real t, Real g) {
        return -inst.gamma(t) * g + inst.alpha(t) * g * g + inst.beta(t);
    };

    Real g = inst.g0;
    Real t = 0.0;
    const Real t_eps = 1e-12 * std::max(1.0, inst.horizon);
    for (;;) {
        const Real cap = 1.0 / inst.mu(t);
        if (!(g <= cap * (1.0 - kStrictMargin)) || g > kBlowup || !std::isfinite(g)) {
            v.conclusion_holds = false;
            v.witness = t;
            return v;
        }
        if (inst.horizon - t <= t_eps) break;
        const Real step = std::min(dt, inst.horizon - t);
        const Real k1 = rhs(t, g);
        const Real k2 = rhs(t + step / 2.0, g + step / 2.0 * k1);
        const Real k3 = rhs(t + step / 2.0, g + step / 2.0 * k2);
        const Real k4 = rhs(t + step, g + step * k3);
        g += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = (step == dt) ? t + dt : inst.horizon;
    }
    return v;
}

LemmaVerdict verify_lemma2(Real gamma, Real p, Real m, Real q, long n_steps) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("verify_lemma2: gamma in (0,1)");
    if (!(p > 0.0)) throw std::invalid_argument("verify_lemma2: p > 0");
    if (!(m > 0.0)) throw std::invalid_argument("verify_lemma2: m > 0");
    if (!(q > gamma && q < 1.0)) throw std::invalid_argument("verify_lemma2: q in (gamma,1)");

    LemmaVerdict v;
    ConditionCheck hyp{"m < (q - gamma)/p", false, 0.0, std::nullopt};
    const Real threshold = (q - gamma) / p;
    hyp.min_margin = threshold - m;
    hyp.holds = m < threshold;
    v.hypotheses = {hyp};
    v.hypotheses_hold = hyp.holds;
    if (!v.hypotheses_hold) return v; // no counterexample claimed

    v.conclusion_checked = true;
    v.conclusion_holds = true;
    Real g = m;
    Real bound = m;
    for (long n = 0; n <= n_steps; ++n) {
        if (!(g <= bound * (1.0 + 1e-12))) {
            v.conclusion_holds = false;
            v.witness = static_cast<Real>(n);
            return v;
        }
        g = gamma * g + p * g * g;
        bound *= q;
    }
    return v;
}

LemmaVerdict check_lemma1_against_trace(const Trace& trace, const Schedule& s, Real lambda) {
    LemmaVerdict v;
    ConditionCheck has_err{"trace carries error column", false, 0.0, std::nullopt};
    for (const auto& row : trace.rows)
        if (row.error) has_err.holds = true;
    v.hypotheses = {has_err};
    v.hypotheses_hold = has_err.holds;
    if (!v.hypotheses_hold) return v;

    v.conclusion_checked = true;
    v.conclusion_holds = true;
    for (const auto& row : trace.rows) {
        if (!row.error) continue;
        const Real cap = std::sqrt(eval_schedule(s, row.t).a) / lambda;
        if (!(*row.error <= cap * (1.0 - kStrictMargin))) {
            v.conclusion_holds = false;
            v.witness = row.t;
            return v;
        }
    }
    return v;
}

Lemma1Instance theorem1_instance(Real c0, const Schedule& s, Real v_norm, Real lambda, Real g0, Real horizon) {
    Lemma1Instance inst;
    inst.gamma = [](Real) { return 0.5; };
    inst.alpha = [c0, s](Real t) { return c0 / std::sqrt(eval_schedule(s, t).a); };
    inst.beta = [v_norm, s](Real t) { return eval_schedule(s, t).a * v_norm; };
    inst.mu = [lambda, s](Real t) { return lambda / std::sqrt(eval_schedule(s, t).a); };
    // mu = lambda a^{-1/2}  =>  mudot = -lambda adot / (2 a^{3/2})
    inst.mu_dot = [lambda, s](Real t) {
        const ScheduleValue sv = eval_schedule(s, t);
        return -lambda * sv.adot / (2.0 * sv.a * std::sqrt(sv.a));
    };
    inst.g0 = g0;
    inst.horizon = horizon;
    return inst;
}

Lemma2Case random_lemma2_case(std::uint64_t seed) {
    Rng rng(seed);
    Lemma2Case c;
    c.gamma = rng.uniform(0.05, 0.95);
    c.q = c.gamma + (1.0 - c.gamma) * rng.uniform(0.05, 0.95);
    c.p = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    c.m = 0.99 * (c.q - c.gamma) / c.p;
    return c;
}

std::vector<LemmaVerdict> lemma2_sweep_serial(long count, std::uint64_t seed, long n_steps) {
    std::vector<LemmaVerdict> out(count);
    for (long i = 0; i < count; ++i) {
        const Lemma2Case c = random_lemma2_case(Rng::derive(seed, static_cast<std::uint64_t>(i)));
        out[i] = verify_lemma2(c.gamma, c.p, c.m, c.q, n_steps);
    }
    return out;
}

std::vector<LemmaVerdict> lemma2_sweep(long count, std::uint64_t seed, long n_steps) {
    std::vector<LemmaVerdict> out(count);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        const Lemma2Case c = random_lemma2_case(Rng::derive(seed, static_cast<std::uint64_t>(i)));
        out[i] = verify_lemma2(c.gamma, c.p, c.m, c.q, n_steps);
    }
    return out;
}

Lemma1Case random_theorem1_case(std::uint64_t seed) {
    Rng rng(seed);
    Lemma1Case c;
    c.c0 = rng.uniform(0.05, 2.0);
    c.lambda = 8.0 * c.c0;
    c.schedule.family = rng.uniform01() < 0.5 ? ScheduleFamily::Power : ScheduleFamily::Exponential;
    c.schedule.a0 = rng.uniform(0.5, 8.0);
    c.schedule.decay = rng.uniform(0.05, 0.5);
    // (*) 8 lambda sqrt(a0) ||v|| <= 1, drawn with real margin
    c.v_norm = rng.uniform(0.1, 0.9) / (8.0 * c.lambda * std::sqrt(c.schedule.a0));
    // iii) g0 mu(0) < 1
    c.g0 = rng.uniform(0.1, 0.9) * std::sqrt(c.schedule.a0) / c.lambda;
    return c;
}

std::vector<LemmaVerdict> lemma1_sweep_serial(int count, std::uint64_t seed, Real horizon, Real dt) {
    std::vector<LemmaVerdict> out(count);
    for (int i = 0; i < count; ++i) {
        const Lemma1Case c = random_theorem1_case(Rng::derive(seed, static_cast<std::uint64_t>(i)));
        out[i] = verify_lemma1(theorem1_instance(c.c0, c.schedule, c.v_norm, c.lambda, c.g0, horizon), dt);
    }
    return out;
}

std::vector<LemmaVerdict> lemma1_sweep(int count, std::uint64_t seed, Real horizon, Real dt) {
    std::vector<LemmaVerdict> out(count);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        const Lemma1Case c = random_theorem1_case(Rng::derive(seed, static_cast<std::uint64_t>(i)));
        out[i] = verify_lemma1(theorem1_instance(c.c0, c.schedule, c.v_norm, c.lambda, c.g0, horizon), dt);
    }
    return out;
}

Lemma1Instance random_constant_instance(std::uint64_t seed, Real horizon) {
    Rng rng(seed);
    const Real gamma = rng.uniform(0.2, 1.5);
    const Real mu = rng.uniform(0.5, 5.0);
    // margins strictly inside conditions i) and ii)
    const Real alpha = rng.uniform(0.1, 0.9) * mu / 2.0 * gamma;
    const Real beta = rng.uniform(0.1, 0.9) * gamma / (2.0 * mu);
    const Real g0 = rng.uniform(0.05, 0.9) / mu;

    Lemma1Instance inst;
    inst.gamma = [gamma](Real) { return gamma; };
    inst.alpha = [alpha](Real) { return alpha; };
    inst.beta = [beta](Real) { return beta; };
    inst.mu = [mu](Real) { return mu; };
    inst.mu_dot = [](Real) { return 0.0; };
    inst.g0 = g0;
    inst.horizon = horizon;
    return inst;
}

} // namespace dsm
