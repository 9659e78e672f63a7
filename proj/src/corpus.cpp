#include "dsm/corpus.hpp"

#include <cmath>
#include <memory>

#include "dsm/errors.hpp"
#include "dsm/linalg.hpp"
#include "dsm/rng.hpp"

namespace dsm {
namespace {

Problem make_p1() {
    Problem p;
    p.dim_domain = p.dim_range = 1;
    p.eval = [](const Vector& u) { return u; };
    p.jac = [](const Vector&) {
        Matrix j(1, 1);
        j(0, 0) = 1.0;
        return j;
    };
    p.u0 = {0.4};
    p.radius = 1.0;
    p.known_solution = Vector{0.0};
    return p;
}

Problem make_p2() {
    Problem p;
    p.dim_domain = p.dim_range = 1;
    p.eval = [](const Vector& u) { return Vector{u[0] + u[0] * u[0] * u[0]}; };
    p.jac = [](const Vector& u) {
        Matrix j(1, 1);
        j(0, 0) = 1.0 + 3.0 * u[0] * u[0];
        return j;
    };
    p.u0 = {0.1};
    p.radius = 0.9; // B(0.1, 0.9) = [-0.8, 1]; suprema attained at u = 1
    p.known_solution = Vector{0.0};
    return p;
}

Problem make_p3() {
    Problem p;
    p.dim_domain = p.dim_range = 2;
    p.eval = [](const Vector& u) { return Vector{u[0], u[0] * u[1]}; };
    p.jac = [](const Vector& u) {
        Matrix j(2, 2);
        j(0, 0) = 1.0;
        j(0, 1) = 0.0;
        j(1, 0) = u[1];
        j(1, 1) = u[0];
        return j;
    };
    p.u0 = {0.3, 0.2};
    p.radius = 1.0;
    p.known_solution = Vector{0.0, 0.0};
    return p;
}

Problem make_p4() {
    Problem p;
    p.dim_domain = p.dim_range = 3;
    p.eval = [](const Vector& u) {
        Vector f(3);
        for (int i = 0; i < 3; ++i) f[i] = std::expm1(u[i]);
        return f;
    };
    p.jac = [](const Vector& u) {
        Matrix j(3, 3);
        for (int i = 0; i < 3; ++i) j(i, i) = std::exp(u[i]);
        return j;
    };
    p.u0 = {0.2, -0.1, 0.1};
    p.radius = 1.0;
    p.known_solution = Vector{0.0, 0.0, 0.0};
    return p;
}

Problem make_p5() {
    // F(u) = B u + 0.5 * (u^T C_i u)_i with B of rank 2 (singular, nonzero)
    // and symmetric seeded C_i. F(0) = 0, F'(0) = B.
    const std::size_t n = 3;
    Rng rng(0x5eedc0de5ull);

    auto b = std::make_shared<Matrix>(n, n);
    for (int r = 0; r < 2; ++r) {
        const Vector left = rng.gaussian_vector(n);
        const Vector right = rng.gaussian_vector(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) (*b)(i, j) += left[i] * right[j];
    }
    auto cs = std::make_shared<std::vector<Matrix>>();
    for (std::size_t i = 0; i < n; ++i) {
        Matrix c(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t col = r; col < n; ++col) {
                const Real x = 0.2 * rng.normal();
                c(r, col) = x;
                c(col, r) = x;
            }
        cs->push_back(c);
    }

    Problem p;
    p.dim_domain = p.dim_range = n;
    p.eval = [b, cs, n](const Vector& u) {
        Vector f = b->apply(u);
        for (std::size_t i = 0; i < n; ++i) f[i] += 0.5 * dot(u, (*cs)[i].apply(u));
        return f;
    };
    p.jac = [b, cs, n](const Vector& u) {
        Matrix j = *b;
        for (std::size_t i = 0; i < n; ++i) {
            const Vector row = (*cs)[i].apply(u);
            for (std::size_t k = 0; k < n; ++k) j(i, k) += row[k];
        }
        return j;
    };
    Rng direction(0xd14ec7104ull);
    const Vector d = direction.unit_vector(n);
    p.u0 = scaled(d, 0.1);
    p.radius = 1.0;
    p.known_solution = Vector(n, 0.0);
    return p;
}

std::vector<CorpusEntry> build_registry() {
    std::vector<CorpusEntry> entries;

    {
        CorpusEntry e;
        e.id = "P1";
        e.problem = make_p1();
        e.closed_form = SmoothnessBounds::from_m(1.4, 1.0, 0.0);
        e.description = "linear scalar F(u)=u; M2 = 0 makes every smallness condition vacuous";
        entries.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.id = "P2";
        e.problem = make_p2();
        e.closed_form = SmoothnessBounds::from_m(2.0, 4.0, 6.0);
        e.description = "scalar cubic F(u)=u+u^3; exact suprema M1=4, M2=6 on B(0.1, 0.9)";
        entries.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.id = "P3";
        e.problem = make_p3();
        const Real rho = std::sqrt(0.13) + 1.0; // max ||u|| over the ball
        // ||F'|| <= sqrt(tr(A^T A)) = sqrt(1 + ||u||^2); F'' is the constant
        // bilinear map (h,k) -> (0, h1 k2 + h2 k1) of norm exactly 1.
        e.closed_form = SmoothnessBounds::from_m(rho * std::sqrt(1.0 + rho * rho), std::sqrt(1.0 + rho * rho), 1.0);
        e.description = "rank-deficient F=(u1, u1 u2); solution set {u1=0}, F'(y) has rank 1";
        entries.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.id = "P4";
        e.problem = make_p4();
        const Real emax = std::exp(1.2); // max coordinate over the ball is 0.2 + 1
        e.closed_form = SmoothnessBounds::from_m(std::sqrt(3.0) * (emax - 1.0), emax, emax);
        e.description = "componentwise exp(u)-1; growth stresses the M_j(R) bounds";
        entries.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.id = "P5";
        e.problem = make_p5();
        e.closed_form = std::nullopt; // estimated at load time (sampling * safety)
        e.description = "seeded random quadratic with singular nonzero linear part";
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace

const std::vector<CorpusEntry>& registry() {
    static const std::vector<CorpusEntry> entries = build_registry();
    return entries;
}

const CorpusEntry& find_problem(const std::string& id) {
    for (const auto& e : registry())
        if (e.id == id) return e;
    throw ConfigError("unknown problem id: " + id);
}

void validate_registry() {
    for (const auto& e : registry()) {
        if (!e.problem.known_solution) continue;
        const Vector& y = *e.problem.known_solution;
        const Real fy = norm2(evaluate(e.problem, y));
        if (fy > 1e-10 * std::max(1.0, norm2(y)))
            throw ConfigError("registry: " + e.id + " has ||F(y)|| = " + std::to_string(fy));
        if (spectral_norm(jacobian(e.problem, y)) <= 1e-12)
            throw ConfigError("registry: " + e.id + " has F'(y) = 0");
    }
}

} // namespace dsm
