#include "dapo/optimize.hpp"

#include "dapo/driver.hpp"
#include "doctest.h"

#include <cmath>
#include <limits>

using namespace dapo;

namespace {

// 200x200 grid-search maximum of the p=1 K3 expectation over [0,pi)^2,
// computed once with the dense grid oracle. The true maximum is 2 (the
// optimal cut); the finite grid undershoots by ~2.2e-4.
constexpr double kK3GridMax = 1.999777767512;

struct K3Objective {
    DiagonalHamiltonian h;
    AnsatzSchedule sched;
    std::vector<double> diag;

    K3Objective()
        : h(maxcut_hamiltonian(parse_graph("3 3\n0 1\n1 2\n0 2"))), sched(3),
          diag(materialize_diagonal(h)) {
        sched.append({h, LayerSource::full_problem, std::nullopt});
    }

    double operator()(std::span<const double> theta) const {
        return expectation(run_circuit(sched, theta), diag);
    }
};

} // namespace

TEST_CASE("gradient_fd is exact on quadratics up to rounding") {
    ScalarFn square = [](std::span<const double> t) { return t[0] * t[0]; };
    auto g = gradient_fd(square, std::vector<double>{1.0}, 1e-5);
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-6));

    ScalarFn constant = [](std::span<const double>) { return 4.2; };
    auto zero = gradient_fd(constant, std::vector<double>{0.3, -0.7}, 1e-5);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);

    CHECK_THROWS_AS(gradient_fd(square, std::vector<double>{1.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("gradient_fd passes a Richardson consistency check on the QAOA surface") {
    K3Objective f;
    ScalarFn fn = [&](std::span<const double> t) { return f(t); };
    const std::vector<double> theta{0.4, 0.2};
    const double h = 1e-3;
    auto g1 = gradient_fd(fn, theta, h);
    auto g2 = gradient_fd(fn, theta, h / 2.0);
    // central differences have O(h^2) error, so halving h shrinks the
    // discrepancy to ~h^2 scale
    for (std::size_t k = 0; k < theta.size(); ++k)
        CHECK(std::abs(g1[k] - g2[k]) < 10.0 * h * h);
}

TEST_CASE("maximize finds the unique maximum of a concave parabola") {
    ScalarFn f = [](std::span<const double> t) { return -(t[0] - 1.0) * (t[0] - 1.0); };
    OptimizerConfig cfg;
    OptResult r = maximize(f, std::vector<double>{0.0}, cfg);
    CHECK(r.best_params[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.best_value == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.converged);
    CHECK(r.evals_used <= cfg.max_evals);
}

TEST_CASE("maximize reaches the analytic optimum of separable concave functions") {
    ScalarFn f = [](std::span<const double> t) {
        double v = 0.0;
        const double targets[] = {1.0, -2.0, 0.5, 3.0};
        for (std::size_t k = 0; k < t.size(); ++k)
            v -= (t[k] - targets[k]) * (t[k] - targets[k]);
        return v;
    };
    OptResult r = maximize(f, std::vector<double>{0.0, 0.0, 0.0, 0.0}, OptimizerConfig{});
    CHECK(r.best_params[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.best_params[1] == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(r.best_params[2] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(r.best_params[3] == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("maximize matches the frozen grid oracle on p=1 K3") {
    K3Objective f;
    ScalarFn fn = [&](std::span<const double> t) { return f(t); };
    OptResult r = maximize(fn, std::vector<double>{0.01, 0.01}, OptimizerConfig{});
    CHECK(r.best_value >= kK3GridMax - 1e-3);
    CHECK(r.best_value <= 2.0 + 1e-9); // cannot exceed the optimal cut
    CHECK(std::abs(r.best_value - kK3GridMax) <= 1e-3);
}

TEST_CASE("maximize is monotone from the warm start") {
    K3Objective f;
    ScalarFn fn = [&](std::span<const double> t) { return f(t); };
    for (double start : {0.0, 0.3, 1.2, 2.9}) {
        const std::vector<double> theta0{start, -start};
        OptResult r = maximize(fn, theta0, OptimizerConfig{});
        CHECK(r.best_value >= fn(theta0));
    }
}

TEST_CASE("maximize with restarts is deterministic per seed") {
    K3Objective f;
    ScalarFn fn = [&](std::span<const double> t) { return f(t); };
    OptimizerConfig cfg;
    cfg.restarts = 3;
    cfg.seed = 1234;
    OptResult a = maximize(fn, std::vector<double>{0.01, 0.01}, cfg);
    OptResult b = maximize(fn, std::vector<double>{0.01, 0.01}, cfg);
    CHECK(a.best_params == b.best_params);
    CHECK(a.best_value == b.best_value);
    CHECK(a.evals_used == b.evals_used);
    CHECK(a.converged == b.converged);
}

TEST_CASE("maximize reports non-finite objective values with the point") {
    ScalarFn bad = [](std::span<const double> t) {
        return t[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : t[0];
    };
    CHECK_THROWS_WITH_AS(maximize(bad, std::vector<double>{0.4}, OptimizerConfig{}),
                         doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("maximize respects the evaluation budget") {
    K3Objective f;
    int calls = 0;
    ScalarFn fn = [&](std::span<const double> t) {
        ++calls;
        return f(t);
    };
    OptimizerConfig cfg;
    cfg.max_evals = 7;
    OptResult r = maximize(fn, std::vector<double>{0.01, 0.01}, cfg);
    CHECK(r.evals_used <= 7);
    CHECK(calls == r.evals_used);
    CHECK_FALSE(r.converged);
    CHECK(r.best_value >= f(std::vector<double>{0.01, 0.01}) - 1e-12);

    cfg.max_evals = 0;
    CHECK_THROWS_AS(maximize(fn, std::vector<double>{0.0}, cfg), std::invalid_argument);
}

TEST_CASE("maximize rejects non-finite starting points") {
    ScalarFn f = [](std::span<const double> t) { return -t[0] * t[0]; };
    CHECK_THROWS_AS(
        maximize(f, std::vector<double>{std::numeric_limits<double>::infinity()},
                 OptimizerConfig{}),
        std::invalid_argument);
}
