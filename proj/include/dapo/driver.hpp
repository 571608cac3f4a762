#ifndef DAPO_DRIVER_HPP
#define DAPO_DRIVER_HPP

#include "dapo/graph.hpp"
#include "dapo/hamiltonian.hpp"
#include "dapo/optimize.hpp"
#include "dapo/schedule.hpp"
#include "dapo/statevector.hpp"

#include <vector>

namespace dapo {

struct ConvergenceConfig {
    int max_layers = 6;    // P
    double epsilon = 1e-4; // stop when |F*_d - F*_{d-1}| < epsilon (DAPO only)
    OptimizerConfig optimizer;
    int measure_shots = 0; // 0 = exact argmax measurement
};

struct RunRecord {
    int p = 0;
    double best_value = 0.0; // F*_p, expectation of the full problem Hamiltonian
    double ratio = 0.0;      // F*_p / C_opt; NaN when C_opt is unknown
    Assignment x_measured;
    Assignment x_after_search;
    double search_delta = 0.0;
    int rzz_this_layer = 0;
    long rzz_cumulative = 0;
    std::vector<double> params;
    bool fallback_used = false;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Depth sweep with the same phase Hamiltonian at every layer and the full
/// problem as optimization objective. Depth d re-optimizes all 2d parameters
/// warm-started from depth d-1 (new layer at (0,0); depth 1 starts at
/// (0.01, 0.01)). Backbone of the vanilla and fixed-phase baseline runs.
std::vector<RunRecord> fixed_phase_run(const DiagonalHamiltonian& problem,
                                       const DiagonalHamiltonian& phase, int p,
                                       const ConvergenceConfig& cfg, double c_opt = 0.0);

/// Plain QAOA: every layer's phase is the problem Hamiltonian itself.
std::vector<RunRecord> vanilla_run(const DiagonalHamiltonian& problem, int p,
                                   const ConvergenceConfig& cfg, double c_opt = 0.0);

/// Layer-by-layer adaptive construction: layer 1 is the full problem; after
/// optimizing depth d, the measured solution is refined by 1-flip search and
/// its active term set becomes layer d+1's phase. The optimization objective
/// stays the full problem Hamiltonian throughout. Stops at max_layers or when
/// the objective change falls below epsilon.
std::vector<RunRecord> dapo_run(const DiagonalHamiltonian& problem,
                                const ObjectiveFn& classical_objective,
                                const ConvergenceConfig& cfg, double c_opt = 0.0);
/// Same, with the classical search objective derived from the problem
/// Hamiltonian itself (sense-adjusted evaluate_cost).
std::vector<RunRecord> dapo_run(const DiagonalHamiltonian& problem,
                                const ConvergenceConfig& cfg, double c_opt = 0.0);

/// Reference run: every layer's phase comes from the brute-force optimum.
std::vector<RunRecord> optimal_phase_run(const Graph& g, int p, const ConvergenceConfig& cfg);

/// F / C_opt. Throws for nonpositive C_opt.
double approximation_ratio(double f, double c_opt);

struct SavingsRow {
    int p = 0;
    double reduction = 0.0; // vanilla cumulative R_ZZ - DAPO cumulative R_ZZ
    double ratio = 0.0;     // DAPO cumulative / vanilla cumulative
};

std::vector<SavingsRow> rzz_savings(const std::vector<RunRecord>& dapo,
                                    const std::vector<RunRecord>& vanilla);

/// Objective handle maximized by neighborhood search: evaluate_cost for
/// maximize-sense problems, its negation for minimize-sense ones.
ObjectiveFn classical_objective_for(const DiagonalHamiltonian& problem);

} // namespace dapo

#endif // DAPO_DRIVER_HPP
