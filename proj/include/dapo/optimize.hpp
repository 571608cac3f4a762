#ifndef DAPO_OPTIMIZE_HPP
#define DAPO_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dapo {

using ScalarFn = std::function<double(std::span<const double>)>;

struct OptimizerConfig {
    int max_evals = 20000;   // total objective evaluations, gradients included
    double grad_step = 1e-5; // central-difference step
    double grad_tol = 1e-6;  // stop when the gradient norm falls below this
    int restarts = 1;
    std::uint64_t seed = 0;
};

struct OptResult {
    std::vector<double> best_params;
    double best_value = 0.0;
    int evals_used = 0;
    bool converged = false;
};

/// Central differences (f(t+h e_k) - f(t-h e_k)) / 2h per coordinate.
std::vector<double> gradient_fd(const ScalarFn& f, std::span<const double> theta, double h);

/// Quasi-Newton ascent (BFGS inverse-Hessian updates, backtracking line
/// search with a sufficient-increase condition). Restart k > 0 perturbs
/// theta0 by seeded uniform noise in [-0.1, 0.1]; results merge best-first
/// with restart-index tie-break. Never returns a value below f(theta0).
/// Throws on non-finite objective values, reporting the parameter point.
OptResult maximize(const ScalarFn& f, std::span<const double> theta0,
                   const OptimizerConfig& cfg);

} // namespace dapo

#endif // DAPO_OPTIMIZE_HPP
