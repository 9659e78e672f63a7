#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsm/problem.hpp"

namespace dsm {

/// Benchmark problem with its provenance: which hypotheses it stresses
/// and, where derivable, closed-form smoothness bounds on B(u0, R).
struct CorpusEntry {
    std::string id;
    Problem problem;
    std::optional<SmoothnessBounds> closed_form;
    std::string description;
};

/// P1 linear scalar, P2 scalar cubic, P3 rank-deficient bilinear (the
/// headline regime: non-unique solutions, Newton undefined), P4
/// componentwise exponential, P5 seeded random quadratic with singular
/// linear part.
const std::vector<CorpusEntry>& registry();

const CorpusEntry& find_problem(const std::string& id);

/// Startup invariants: ||F(y)|| <= 1e-10 max(1, ||y||) and
/// ||F'(y)|| > 1e-12 for every entry with a known solution.
void validate_registry();

} // namespace dsm
