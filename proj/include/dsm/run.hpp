#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsm/config.hpp"
#include "dsm/corpus.hpp"
#include "dsm/schedules.hpp"
#include "dsm/solvers.hpp"

namespace dsm {

// Exit codes (also the CLI's):
//   0 success (hypotheses certified, asserted bounds held)
//   2 config error
//   3 diverged / non-finite
//   4 hypothesis-related: ran uncertified, a certified bound failed, or
//     the oracle-mode precondition was rejected before running
enum ExitCode : int { kSuccess = 0, kConfigError = 2, kDiverged = 3, kHypothesis = 4 };

/// A RunConfig with every sentinel materialized.
struct ResolvedRun {
    std::string problem_id;
    std::string solver;
    Problem problem;
    SmoothnessBounds bounds;
    Schedule schedule;
    SolverConfig solver_cfg;
    DiscreteSchedulePolicy policy;
    CertificationReport certification;
    Real delta = 0.0;
    long seed = 0;
    std::string output;
};

ResolvedRun resolve_run(const RunConfig& rc);

struct RunOutcome {
    int exit_code = kSuccess;
    std::string summary;
    std::optional<SolveResult> result; // absent when the run never started
    CertificationReport certification;
};

/// Loads, certifies, dispatches, writes the trace CSV, and builds the
/// one-line summary. Never throws for expected failure modes — they map
/// to exit codes.
RunOutcome run(const RunConfig& rc, bool quiet = false);

struct NoiseSweepRow {
    Real delta = 0.0;
    Real t_delta = 0.0;
    Real final_error = 0.0;
    Real bound = 0.0;
    std::string flag; // ok | noise_too_large | diverged | error
};

struct NoiseSweepReport {
    std::vector<NoiseSweepRow> rows;
    std::string csv;
};

/// Runs solve_noisy once per delta with fresh seeded noise
/// f_delta = F(y) + delta * (unit direction); writes a CSV
/// (delta,t_delta,final_error,bound,flag). Rows with too-large noise are
/// flagged, not fatal.
NoiseSweepReport sweep_noise(const RunConfig& rc, const std::vector<Real>& deltas);

} // namespace dsm
