#pragma once

#include <string>

#include "dsm/linalg.hpp"

namespace dsm {

/// Flat key = value run description (TOML-compatible syntax). Negative
/// sentinels mean "derive from the problem's bounds"; the derivation
/// rules are in resolve_run and every resolved constant is echoed at run
/// time, so a run is reproducible from its config alone.
struct RunConfig {
    std::string problem_id = "P1";
    std::string solver = "continuous"; // continuous | iterative | noisy
    std::string schedule_family = "exponential";
    Real schedule_a0 = -1.0;  // -1 => max(1, (lambda g0 / 0.9)^2) when y known, else 1
    Real schedule_decay = 0.5;
    std::string z_policy = "from_v"; // from_v | equal_u0 | explicit
    std::string z_values;            // comma-separated, explicit policy only
    Real v_norm = -1.0;              // -1 => derived from the certification margins
    Real lambda = -1.0;              // -1 => max(1, 8 c0)
    Real h = 0.5;                    // unjustified-by-theory default, see README
    Real q = 0.9;
    Real dt = -1.0; // -1 => 0.01 * min(1, a0)
    Real residual_tol = 1e-6;
    Real t_max = 1e3;
    long n_max = 10000;
    std::string policy_mode = "oracle"; // oracle | residual | fixed-geometric
    Real policy_a0 = 1.0;
    Real policy_qa = 0.5;
    Real a_min = 1e-12;
    Real delta = 0.0; // noisy solver only
    std::string bounds_mode = "closed_form"; // closed_form | estimated
    Real safety = 1.5;
    long samples = 1000;
    long seed = 12345;
    std::string output = "trace.csv";
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// The default config, serialized with commentary; `dsm print-defaults`.
std::string default_config_text();

/// Serialize an arbitrary config (round-trips through the parser).
std::string config_to_text(const RunConfig& rc);

} // namespace dsm
