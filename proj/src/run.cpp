#include "dsm/run.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "dsm/errors.hpp"
#include "dsm/report.hpp"
#include "dsm/rng.hpp"
#include "dsm/trace_io.hpp"

namespace dsm {
namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

Vector parse_vector_list(const std::string& text) {
    Vector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError("cannot parse vector entry '" + item + "'");
        }
    }
    return out;
}

std::string fmt(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

ResolvedRun resolve_run(const RunConfig& rc) {
    ResolvedRun r;
    r.problem_id = rc.problem_id;
    r.solver = rc.solver;
    if (rc.solver != "continuous" && rc.solver != "iterative" && rc.solver != "noisy")
        throw ConfigError("unknown solver: " + rc.solver);

    const CorpusEntry& entry = find_problem(rc.problem_id);
    r.problem = entry.problem;
    r.seed = rc.seed;
    r.output = rc.output;
    r.delta = rc.delta;

    if (rc.bounds_mode == "closed_form" && entry.closed_form) {
        r.bounds = *entry.closed_form;
    } else if (rc.bounds_mode == "closed_form" || rc.bounds_mode == "estimated") {
        if (rc.samples < 1) throw ConfigError("samples must be >= 1");
        r.bounds = estimate_bounds(r.problem, static_cast<int>(rc.samples),
                                   static_cast<std::uint64_t>(rc.seed))
                       .scaled(rc.safety);
    } else {
        throw ConfigError("unknown bounds mode: " + rc.bounds_mode);
    }

    SolverConfig& cfg = r.solver_cfg;
    cfg.h = rc.h;
    cfg.q = rc.q;
    cfg.t_max = rc.t_max;
    cfg.n_max = rc.n_max;
    cfg.residual_tol = rc.residual_tol;
    cfg.lambda = rc.lambda < 0.0 ? std::max(1.0, 8.0 * r.bounds.c0) : rc.lambda;

    r.schedule.family = schedule_family_from_string(rc.schedule_family);
    r.schedule.decay = rc.schedule_decay;
    if (rc.schedule_a0 < 0.0) {
        Real a0 = 1.0;
        if (r.problem.known_solution) {
            const Real g0 = norm2(sub(r.problem.u0, *r.problem.known_solution));
            a0 = std::max(1.0, std::pow(cfg.lambda * g0 / 0.9, 2.0));
        }
        r.schedule.a0 = a0;
    } else {
        r.schedule.a0 = rc.schedule_a0;
    }

    cfg.z_policy = z_policy_from_string(rc.z_policy);
    if (cfg.z_policy == ZPolicy::Explicit) cfg.z = parse_vector_list(rc.z_values);
    if (cfg.z_policy == ZPolicy::FromV) {
        if (!r.problem.known_solution)
            throw ConfigError("z_policy from_v needs a problem with a known solution");
        Real vn = rc.v_norm;
        if (vn < 0.0) {
            const Real by_c1 = r.bounds.c1 > 0.0 ? 1.0 / (2.0 * r.bounds.c1) : kInf;
            Real vn_cap;
            if (rc.solver == "iterative") {
                const Real m = norm2(sub(r.problem.u0, *r.problem.known_solution));
                const Real denom = 32.0 * r.bounds.c0 * cfg.h * m;
                vn_cap = denom > 0.0 ? (cfg.q + cfg.h - 1.0) / denom : kInf;
            } else {
                vn_cap = 1.0 / (16.0 * cfg.lambda * std::sqrt(r.schedule.a0));
            }
            vn = 0.45 * std::min(by_c1, vn_cap);
            if (!std::isfinite(vn)) vn = 0.01; // both constraints vacuous (c0 = c1 = 0)
        }
        Rng rng(Rng::derive(static_cast<std::uint64_t>(rc.seed), 0));
        cfg.v = scaled(rng.unit_vector(r.problem.dim_domain), vn);
    }

    cfg.dt = rc.dt < 0.0 ? 0.01 * std::min(1.0, r.schedule.a0) : rc.dt;

    r.policy.mode = policy_mode_from_string(rc.policy_mode);
    r.policy.c0 = r.bounds.c0;
    r.policy.m1 = r.bounds.m1;
    r.policy.a_min = rc.a_min;
    r.policy.a0 = rc.policy_a0;
    r.policy.q_a = rc.policy_qa;

    if (rc.solver == "noisy" && !(rc.delta > 0.0))
        throw ConfigError("noisy solver requires delta > 0");

    if (rc.solver == "continuous")
        r.certification = certify_continuous(r.problem, r.bounds, r.schedule, cfg);
    else if (rc.solver == "iterative")
        r.certification = certify_iterative(r.problem, r.bounds, r.policy, cfg);
    else
        r.certification = certify_noisy(r.problem, r.bounds, r.schedule, cfg, rc.delta);

    return r;
}

RunOutcome run(const RunConfig& rc, bool quiet) {
    RunOutcome out;
    ResolvedRun r;
    try {
        r = resolve_run(rc);
    } catch (const ConfigError& e) {
        out.exit_code = kConfigError;
        out.summary = std::string("config-error: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    } catch (const MissingOracle& e) {
        out.exit_code = kConfigError;
        out.summary = std::string("config-error: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    }
    out.certification = r.certification;
    if (!quiet) std::cout << to_json(r.certification).dump(2) << "\n";

    SolveResult res;
    try {
        if (r.solver == "continuous") {
            res = solve_continuous(r.problem, r.schedule, r.solver_cfg, &r.certification);
        } else if (r.solver == "iterative") {
            res = solve_iterative(r.problem, r.policy, r.solver_cfg, &r.certification);
        } else {
            // benchmark noise: exact-norm perturbation of F(y)
            if (!r.problem.known_solution)
                throw ConfigError("noisy solver needs a benchmark problem to synthesize f_delta");
            Rng rng(Rng::derive(static_cast<std::uint64_t>(r.seed), 1));
            Vector f_delta = evaluate(r.problem, *r.problem.known_solution);
            axpy(f_delta, r.delta, rng.unit_vector(r.problem.dim_range));
            res = solve_noisy(r.problem, f_delta, r.delta, r.schedule, r.solver_cfg, &r.certification);
        }
    } catch (const HypothesisViolated& e) {
        out.exit_code = kHypothesis;
        out.summary = std::string("hypothesis-violated: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    } catch (const NoiseTooLarge& e) {
        out.exit_code = kConfigError;
        out.summary = std::string("config-error: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    } catch (const ConfigError& e) {
        out.exit_code = kConfigError;
        out.summary = std::string("config-error: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    } catch (const Diverged& e) {
        out.exit_code = kDiverged;
        out.summary = std::string("diverged: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    } catch (const NonFiniteOutput& e) {
        out.exit_code = kDiverged;
        out.summary = std::string("non-finite: ") + e.what();
        if (!quiet) std::cerr << out.summary << "\n";
        return out;
    }

    write_trace_csv(res.trace, r.output);

    const TraceRow& last = res.trace.rows.back();
    std::ostringstream s;
    s << "termination=" << to_string(res.termination);
    s << " residual=" << fmt(last.residual);
    if (last.error) s << " error=" << fmt(*last.error);
    if (res.fitted_rate) s << " qhat=" << fmt(*res.fitted_rate);
    if (res.bound_held) s << " bound_held=" << (*res.bound_held ? "yes" : "no");
    s << " certified=" << (r.certification.all_certified ? "yes" : "no");

    const bool converged = res.termination == Termination::ResidualTol ||
                           res.termination == Termination::StoppingTime;
    if (r.certification.all_certified && res.bound_held.value_or(true)) {
        s << " status=guaranteed-and-held";
        out.exit_code = kSuccess;
    } else if (r.certification.all_certified) {
        s << " status=guaranteed-but-violated";
        out.exit_code = kHypothesis;
    } else if (converged) {
        s << " status=not-guaranteed-but-converged";
        out.exit_code = kHypothesis;
    } else {
        s << " status=not-guaranteed";
        out.exit_code = kHypothesis;
    }
    out.summary = s.str();
    out.result = std::move(res);
    if (!quiet) std::cout << out.summary << "\n";
    return out;
}

NoiseSweepReport sweep_noise(const RunConfig& rc, const std::vector<Real>& deltas) {
    RunConfig base = rc;
    base.solver = "noisy";
    base.delta = deltas.empty() ? 1.0 : deltas[0]; // placeholder for resolve
    const ResolvedRun r = resolve_run(base);
    if (!r.problem.known_solution)
        throw ConfigError("sweep-noise needs a benchmark problem with a known solution");
    const Vector f_exact = evaluate(r.problem, *r.problem.known_solution);

    NoiseSweepReport report;
    report.rows.resize(deltas.size());

    const long count = static_cast<long>(deltas.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        NoiseSweepRow row;
        row.delta = deltas[i];
        row.flag = "ok";
        try {
            const Real t_delta = stopping_time(r.schedule, row.delta, r.solver_cfg.lambda);
            row.t_delta = t_delta;
            Rng rng(Rng::derive(static_cast<std::uint64_t>(r.seed), 100 + static_cast<std::uint64_t>(i)));
            Vector f_delta = f_exact;
            axpy(f_delta, row.delta, rng.unit_vector(r.problem.dim_range));
            const CertificationReport cert =
                certify_noisy(r.problem, r.bounds, r.schedule, r.solver_cfg, row.delta);
            const SolveResult res =
                solve_noisy(r.problem, f_delta, row.delta, r.schedule, r.solver_cfg, &cert);
            row.final_error = norm2(sub(res.u_final, *r.problem.known_solution));
            row.bound = std::sqrt(8.0 * r.solver_cfg.lambda * row.delta) / r.solver_cfg.lambda;
        } catch (const NoiseTooLarge&) {
            row.flag = "noise_too_large";
        } catch (const Diverged&) {
            row.flag = "diverged";
        } catch (...) {
            row.flag = "error";
        }
        report.rows[i] = row;
    }

    std::string csv = "delta,t_delta,final_error,bound,flag\n";
    for (const auto& row : report.rows) {
        csv += fmt(row.delta);
        csv += ',';
        csv += fmt(row.t_delta);
        csv += ',';
        csv += row.flag == "ok" ? fmt(row.final_error) : std::string();
        csv += ',';
        csv += row.flag == "ok" ? fmt(row.bound) : std::string();
        csv += ',';
        csv += row.flag;
        csv += '\n';
    }
    report.csv = csv;
    return report;
}

} // namespace dsm
