#pragma once

#include <stdexcept>
#include <string>

namespace dsm {

/// Raised when an evaluation produces NaN/Inf — the trajectory left the
/// region where the problem is meaningful.
class NonFiniteOutput : public std::runtime_error {
public:
    explicit NonFiniteOutput(const std::string& what) : std::runtime_error(what) {}
};

/// Regularization parameter a <= 0: T_a = A^T A + aI is no longer
/// guaranteed invertible.
class DegenerateRegularization : public std::runtime_error {
public:
    explicit DegenerateRegularization(const std::string& what) : std::runtime_error(what) {}
};

/// A point left the ball B(u0, R) on which the smoothness bounds are valid.
class OutOfBall : public std::runtime_error {
public:
    explicit OutOfBall(const std::string& what) : std::runtime_error(what) {}
};

/// Oracle-mode machinery requested without a known solution.
class MissingOracle : public std::runtime_error {
public:
    explicit MissingOracle(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition the convergence theory requires was violated and the
/// caller asked for the guaranteed regime.
class HypothesisViolated : public std::runtime_error {
public:
    explicit HypothesisViolated(const std::string& what) : std::runtime_error(what) {}
};

/// Trajectory left the expanded ball ||u - u0|| > 10 R.
class Diverged : public std::runtime_error {
public:
    explicit Diverged(const std::string& what) : std::runtime_error(what) {}
};

/// Noise level too large for the schedule: 8*lambda*delta >= a(0).
class NoiseTooLarge : public std::runtime_error {
public:
    explicit NoiseTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration (unknown problem id, malformed file, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dsm
