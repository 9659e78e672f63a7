#include "dsm/schedules.hpp"

#include <cmath>
#include <stdexcept>

#include "dsm/errors.hpp"

namespace dsm {

ScheduleValue eval_schedule(const Schedule& s, Real t) {
    if (t < 0.0) throw std::invalid_argument("eval_schedule: t must be >= 0");
    switch (s.family) {
    case ScheduleFamily::Power: {
        const Real base = 1.0 + t;
        const Real a = s.a0 * std::pow(base, -s.decay);
        return {a, -s.decay * a / base};
    }
    case ScheduleFamily::Exponential: {
        const Real a = s.a0 * std::exp(-s.decay * t);
        return {a, -s.decay * a};
    }
    case ScheduleFamily::ConstantThenPower: {
        if (t <= 1.0) return {s.a0, 0.0};
        const Real a = s.a0 * std::pow(t, -s.decay);
        return {a, -s.decay * a / t};
    }
    }
    throw std::logic_error("eval_schedule: unknown family");
}

ValidityCertificate validate_schedule(const Schedule& s) {
    ValidityCertificate cert;
    if (!(s.a0 > 0.0)) {
        cert.reason = "a0 must be positive";
        return cert;
    }
    // For all three families sup_t |adot|/a = decay (power attains it at
    // t = 0, exponential everywhere, constant-then-power as t -> 1+).
    cert.sup_ratio = s.decay;
    if (!(s.decay > 0.0)) {
        cert.reason = "decay must be positive (a(t) must tend to 0)";
        return cert;
    }
    if (s.decay > 0.5) {
        cert.reason = "sup |adot|/a = " + std::to_string(s.decay) + " exceeds 1/2";
        return cert;
    }
    cert.valid = true;
    return cert;
}

Real stopping_time(const Schedule& s, Real delta, Real lambda) {
    if (!(delta > 0.0)) throw std::invalid_argument("stopping_time: delta must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("stopping_time: lambda must be positive");
    const Real target = 8.0 * lambda * delta;
    if (target >= s.a0) return 0.0;
    switch (s.family) {
    case ScheduleFamily::Power:
        return std::pow(s.a0 / target, 1.0 / s.decay) - 1.0;
    case ScheduleFamily::Exponential:
        return std::log(s.a0 / target) / s.decay;
    case ScheduleFamily::ConstantThenPower:
        return std::pow(s.a0 / target, 1.0 / s.decay);
    }
    throw std::logic_error("stopping_time: unknown family");
}

Real next_a(const DiscreteSchedulePolicy& policy, const PolicyState& state) {
    switch (policy.mode) {
    case PolicyMode::Oracle: {
        if (!state.g) throw MissingOracle("next_a: oracle mode needs g_n = ||u_n - y||");
        // a_n = (4 c0 g_n)^2 so that c0 g_n / sqrt(a_n) = 1/4 exactly
        // (sqrt of a floating-point square is exact).
        const Real t = 4.0 * (policy.c0 * *state.g);
        return std::max(t * t, policy.a_min);
    }
    case PolicyMode::Residual: {
        if (!state.residual) throw std::invalid_argument("next_a: residual mode needs ||F(u_n)||");
        const Real g = *state.residual / std::max(policy.m1, 1e-6);
        const Real t = 4.0 * (policy.c0 * g);
        return std::max(t * t, policy.a_min);
    }
    case PolicyMode::FixedGeometric: {
        if (!state.n) throw std::invalid_argument("next_a: fixed-geometric mode needs n");
        return std::max(policy.a0 * std::pow(policy.q_a, static_cast<Real>(*state.n)), policy.a_min);
    }
    }
    throw std::logic_error("next_a: unknown mode");
}

const char* to_string(ScheduleFamily f) {
    switch (f) {
    case ScheduleFamily::Power: return "power";
    case ScheduleFamily::Exponential: return "exponential";
    case ScheduleFamily::ConstantThenPower: return "constant-then-power";
    }
    return "?";
}

ScheduleFamily schedule_family_from_string(const std::string& s) {
    if (s == "power") return ScheduleFamily::Power;
    if (s == "exponential") return ScheduleFamily::Exponential;
    if (s == "constant-then-power") return ScheduleFamily::ConstantThenPower;
    throw ConfigError("unknown schedule family: " + s);
}

const char* to_string(PolicyMode m) {
    switch (m) {
    case PolicyMode::Oracle: return "oracle";
    case PolicyMode::Residual: return "residual";
    case PolicyMode::FixedGeometric: return "fixed-geometric";
    }
    return "?";
}

PolicyMode policy_mode_from_string(const std::string& s) {
    if (s == "oracle") return PolicyMode::Oracle;
    if (s == "residual") return PolicyMode::Residual;
    if (s == "fixed-geometric") return PolicyMode::FixedGeometric;
    throw ConfigError("unknown policy mode: " + s);
}

} // namespace dsm
