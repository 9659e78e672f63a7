#pragma once

#include <optional>
#include <string>

#include "dsm/linalg.hpp"

namespace dsm {

enum class ScheduleFamily { Power, Exponential, ConstantThenPower };

/// Regularization schedule a(t). Families:
///   power:                a(t) = a0 * (1 + t)^(-b)
///   exponential:          a(t) = a0 * exp(-b t)
///   constant-then-power:  a(t) = a0 * max(1, t)^(-b)
/// All must satisfy a > 0, a nonincreasing, a -> 0, and |adot|/a <= 1/2.
struct Schedule {
    ScheduleFamily family = ScheduleFamily::Exponential;
    Real a0 = 1.0;
    Real decay = 0.5;
};

struct ScheduleValue {
    Real a;
    Real adot;
};

struct ValidityCertificate {
    bool valid = false;
    Real sup_ratio = 0.0; // sup_t |adot|/a
    std::string reason;
};

ScheduleValue eval_schedule(const Schedule& s, Real t);

/// Per-family analytic check of sup |adot|/a <= 1/2 (boundary admitted).
ValidityCertificate validate_schedule(const Schedule& s);

/// The t with a(t) = 8*lambda*delta, by closed-form inversion; 0 when
/// 8*lambda*delta >= a0 (noise too large for any positive run).
Real stopping_time(const Schedule& s, Real delta, Real lambda);

enum class PolicyMode { Oracle, Residual, FixedGeometric };

/// Discrete a_n selection. Oracle mode reproduces a_n = 16 c0^2 g_n^2
/// (benchmark only, needs g_n = ||u_n - y||); residual mode substitutes
/// the surrogate ||F(u_n)|| / max(M1, 1e-6); fixed-geometric ignores the
/// state entirely.
struct DiscreteSchedulePolicy {
    PolicyMode mode = PolicyMode::FixedGeometric;
    Real c0 = 0.0;
    Real a_min = 1e-12;
    Real m1 = 0.0;  // residual mode only
    Real a0 = 1.0;  // fixed-geometric
    Real q_a = 0.5; // fixed-geometric ratio
};

struct PolicyState {
    std::optional<Real> g;        // oracle mode
    std::optional<Real> residual; // residual mode
    std::optional<long> n;        // fixed-geometric mode
};

Real next_a(const DiscreteSchedulePolicy& policy, const PolicyState& state);

const char* to_string(ScheduleFamily f);
ScheduleFamily schedule_family_from_string(const std::string& s);
const char* to_string(PolicyMode m);
PolicyMode policy_mode_from_string(const std::string& s);

} // namespace dsm
