#include "dapo/optimize.hpp"

#include "dapo/rng.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dapo {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 50;

std::string format_point(std::span<const double> theta) {
    std::string s = "[";
    char buf[32];
    for (std::size_t k = 0; k < theta.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.9g", theta[k]);
        s += buf;
        if (k + 1 < theta.size())
            s += ", ";
    }
    return s + "]";
}

// Objective wrapper: counts evaluations, tracks the best point seen,
// rejects non-finite values.
class CountedObjective {
public:
    CountedObjective(const ScalarFn& f, int budget) : f_(f), budget_(budget) {}

    int used() const { return used_; }
    int remaining() const { return budget_ - used_; }
    double best_value() const { return best_value_; }
    const std::vector<double>& best_params() const { return best_params_; }

    double operator()(std::span<const double> theta) {
        const double v = f_(theta);
        ++used_;
        if (!std::isfinite(v))
            throw std::runtime_error("maximize: non-finite objective value at theta = " +
                                     format_point(theta));
        if (best_params_.empty() || v > best_value_) {
            best_value_ = v;
            best_params_.assign(theta.begin(), theta.end());
        }
        return v;
    }

private:
    const ScalarFn& f_;
    int budget_;
    int used_ = 0;
    double best_value_ = 0.0;
    std::vector<double> best_params_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

double norm2(const std::vector<double>& a) {
    return std::sqrt(dot(a, a));
}

// Single BFGS ascent from x0, spending at most `budget` evaluations of obj.
// Returns true when the gradient-norm tolerance was reached.
bool bfgs_ascent(CountedObjective& obj, std::vector<double> x, int budget,
                 const OptimizerConfig& cfg) {
    const std::size_t dim = x.size();
    const int grad_cost = static_cast<int>(2 * dim);
    const int start_used = obj.used();
    auto spent = [&] { return obj.used() - start_used; };

    if (budget < 1)
        return false;
    double fx = obj(x);

    auto grad = [&](const std::vector<double>& at) {
        std::vector<double> g(dim);
        std::vector<double> t = at;
        for (std::size_t k = 0; k < dim; ++k) {
            const double orig = t[k];
            t[k] = orig + cfg.grad_step;
            const double fp = obj(t);
            t[k] = orig - cfg.grad_step;
            const double fm = obj(t);
            t[k] = orig;
            g[k] = (fp - fm) / (2.0 * cfg.grad_step);
        }
        return g;
    };

    if (budget - spent() < grad_cost)
        return false;
    std::vector<double> g = grad(x);

    // Inverse Hessian approximation of the negated (minimized) objective.
    std::vector<std::vector<double>> h(dim, std::vector<double>(dim, 0.0));
    auto reset_h = [&] {
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                h[r][c] = (r == c) ? 1.0 : 0.0;
    };
    reset_h();

    while (true) {
        if (norm2(g) < cfg.grad_tol)
            return true;
        // Ascent direction d = H * g; fall back to steepest ascent when the
        // approximation has lost positive definiteness.
        std::vector<double> d(dim, 0.0);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                d[r] += h[r][c] * g[c];
        double slope = dot(d, g);
        if (!(slope > 0.0)) {
            d = g;
            slope = dot(g, g);
            reset_h();
            if (!(slope > 0.0))
                return false;
        }

        double t = 1.0;
        bool accepted = false;
        std::vector<double> xt(dim);
        double ft = 0.0;
        for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
            if (budget - spent() < 1)
                return false;
            for (std::size_t k = 0; k < dim; ++k)
                xt[k] = x[k] + t * d[k];
            ft = obj(xt);
            if (ft >= fx + kArmijo * t * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted)
            return false;

        if (budget - spent() < grad_cost)
            return false;
        std::vector<double> gt = grad(xt);

        // BFGS update on the minimization form: s = xt - x, y = g - gt.
        std::vector<double> s(dim), y(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            s[k] = xt[k] - x[k];
            y[k] = g[k] - gt[k];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12) {
            const double rho = 1.0 / sy;
            std::vector<double> hy(dim, 0.0);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    hy[r] += h[r][c] * y[c];
            const double yhy = dot(y, hy);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    h[r][c] += (sy + yhy) * rho * rho * s[r] * s[c] -
                               rho * (hy[r] * s[c] + s[r] * hy[c]);
        }
        x = std::move(xt);
        fx = ft;
        g = std::move(gt);
    }
}

} // namespace

std::vector<double> gradient_fd(const ScalarFn& f, std::span<const double> theta, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("gradient_fd: step must be positive");
    std::vector<double> g(theta.size());
    std::vector<double> t(theta.begin(), theta.end());
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double orig = t[k];
        t[k] = orig + h;
        const double fp = f(t);
        t[k] = orig - h;
        const double fm = f(t);
        t[k] = orig;
        g[k] = (fp - fm) / (2.0 * h);
    }
    return g;
}

OptResult maximize(const ScalarFn& f, std::span<const double> theta0,
                   const OptimizerConfig& cfg) {
    if (cfg.max_evals < 1 || !(cfg.grad_step > 0.0) || !(cfg.grad_tol > 0.0) ||
        cfg.restarts < 1)
        throw std::invalid_argument("maximize: config fields must be positive");
    for (double v : theta0)
        if (!std::isfinite(v))
            throw std::invalid_argument("maximize: theta0 must be finite");

    CountedObjective obj(f, cfg.max_evals);
    const int share = cfg.max_evals / cfg.restarts;
    // converged reflects the restart that owns the best value; ties keep the
    // earlier restart. Budget exhaustion leaves it false.
    bool converged = false;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<double> start(theta0.begin(), theta0.end());
        if (r > 0) {
            std::mt19937_64 rng(derive_seed(cfg.seed, "restart", static_cast<std::uint64_t>(r)));
            for (auto& v : start)
                v += rng_range(rng, -0.1, 0.1);
        }
        const int budget = (r == 0) ? share + cfg.max_evals % cfg.restarts : share;
        const bool first = obj.best_params().empty();
        const double prev_best = obj.best_value();
        const bool ok = bfgs_ascent(obj, std::move(start), budget, cfg);
        if (first || obj.best_value() > prev_best)
            converged = ok;
    }
    return {obj.best_params(), obj.best_value(), obj.used(), converged};
}

} // namespace dapo
