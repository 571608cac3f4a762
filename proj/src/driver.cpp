#include "dapo/driver.hpp"

#include "dapo/rng.hpp"

#include <cmath>
#include <limits>

namespace dapo {

namespace {

Assignment measure_state(const Statevector& state, const ConvergenceConfig& cfg, int depth) {
    if (cfg.measure_shots > 0)
        return sampled_argmax(state, cfg.measure_shots,
                              derive_seed(cfg.optimizer.seed, "measure",
                                          static_cast<std::uint64_t>(depth)));
    return argmax_basis(state);
}

double ratio_or_nan(double f, double c_opt) {
    if (c_opt > 0.0)
        return f / c_opt;
    return std::numeric_limits<double>::quiet_NaN();
}

// One depth of the shared sweep: optimize all parameters of the current
// schedule against the full-problem diagonal, then record metrics.
struct DepthOutcome {
    OptResult opt;
    double value = 0.0; // sense-correct expectation of the problem Hamiltonian
    Statevector state;
};

DepthOutcome optimize_depth(const CompiledCircuit& circuit,
                            const std::vector<double>& cost_diag, double sense_sign,
                            const std::vector<double>& start, const OptimizerConfig& ocfg) {
    auto objective = [&](std::span<const double> theta) {
        return sense_sign * expectation(circuit.run(theta), cost_diag);
    };
    OptResult opt = maximize(objective, start, ocfg);
    Statevector state = circuit.run(opt.best_params);
    const double value = sense_sign * opt.best_value;
    return {std::move(opt), value, std::move(state)};
}

RunRecord make_record(int depth, const DepthOutcome& out, double c_opt,
                      const ObjectiveFn& search_objective, const ConvergenceConfig& cfg,
                      const LayerSpec& layer, long rzz_cum) {
    Assignment x = measure_state(out.state, cfg, depth);
    SearchResult sr = neighborhood_search(search_objective, x);
    RunRecord rec;
    rec.p = depth;
    rec.best_value = out.value;
    rec.ratio = ratio_or_nan(out.value, c_opt);
    rec.x_measured = std::move(x);
    rec.x_after_search = std::move(sr.best);
    rec.search_delta = sr.delta;
    rec.rzz_this_layer = layer.phase.n_terms();
    rec.rzz_cumulative = rzz_cum;
    rec.params = out.opt.best_params;
    rec.fallback_used = layer.source == LayerSource::fallback_full;
    return rec;
}

} // namespace

ObjectiveFn classical_objective_for(const DiagonalHamiltonian& problem) {
    const double sign = problem.sense_sign();
    return [h = problem, sign](const Assignment& x) { return sign * evaluate_cost(h, x); };
}

std::vector<RunRecord> fixed_phase_run(const DiagonalHamiltonian& problem,
                                       const DiagonalHamiltonian& phase, int p,
                                       const ConvergenceConfig& cfg, double c_opt) {
    if (p < 1)
        throw std::invalid_argument("fixed_phase_run: p must be >= 1");
    if (phase.n_qubits() != problem.n_qubits())
        throw std::invalid_argument("fixed_phase_run: phase qubit count mismatch");
    const int n = problem.n_qubits();
    const std::vector<double> cost_diag = materialize_diagonal(problem);
    const double sense = problem.sense_sign();
    const ObjectiveFn search_objective = classical_objective_for(problem);
    const LayerSource tag =
        phase == problem ? LayerSource::full_problem : LayerSource::solution_derived;

    AnsatzSchedule schedule(n);
    std::vector<double> params{0.01, 0.01};
    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(p));
    long rzz_cum = 0;
    for (int d = 1; d <= p; ++d) {
        schedule.append({phase, tag, std::nullopt});
        const CompiledCircuit circuit(schedule);
        DepthOutcome out = optimize_depth(circuit, cost_diag, sense, params, cfg.optimizer);
        params = out.opt.best_params;
        rzz_cum += phase.n_terms();
        records.push_back(make_record(d, out, c_opt, search_objective, cfg,
                                      schedule.layers().back(), rzz_cum));
        params.push_back(0.0);
        params.push_back(0.0);
    }
    return records;
}

std::vector<RunRecord> vanilla_run(const DiagonalHamiltonian& problem, int p,
                                   const ConvergenceConfig& cfg, double c_opt) {
    return fixed_phase_run(problem, problem, p, cfg, c_opt);
}

std::vector<RunRecord> dapo_run(const DiagonalHamiltonian& problem,
                                const ObjectiveFn& classical_objective,
                                const ConvergenceConfig& cfg, double c_opt) {
    if (problem.n_terms() < 1)
        throw std::invalid_argument("dapo_run: problem Hamiltonian has no quadratic terms");
    if (cfg.max_layers < 1)
        throw std::invalid_argument("dapo_run: max_layers must be >= 1");
    const int n = problem.n_qubits();
    const std::vector<double> cost_diag = materialize_diagonal(problem);
    const double sense = problem.sense_sign();

    AnsatzSchedule schedule(n);
    schedule.append({problem, LayerSource::full_problem, std::nullopt});
    std::vector<double> params{0.01, 0.01};
    std::vector<RunRecord> records;
    long rzz_cum = 0;
    for (int d = 1; d <= cfg.max_layers; ++d) {
        const CompiledCircuit circuit(schedule);
        DepthOutcome out = optimize_depth(circuit, cost_diag, sense, params, cfg.optimizer);
        params = out.opt.best_params;
        rzz_cum += schedule.layers().back().phase.n_terms();
        records.push_back(make_record(d, out, c_opt, classical_objective, cfg,
                                      schedule.layers().back(), rzz_cum));
        if (d == cfg.max_layers)
            break;
        if (d >= 2 &&
            std::abs(records[static_cast<std::size_t>(d - 1)].best_value -
                     records[static_cast<std::size_t>(d - 2)].best_value) < cfg.epsilon)
            break;
        const Assignment& next_seed = records.back().x_after_search;
        SparsePhase sparse = sparse_phase_from_solution(problem, next_seed);
        schedule.append({std::move(sparse.hamiltonian),
                         sparse.fallback ? LayerSource::fallback_full
                                         : LayerSource::solution_derived,
                         next_seed});
        params.push_back(0.0);
        params.push_back(0.0);
    }
    return records;
}

std::vector<RunRecord> dapo_run(const DiagonalHamiltonian& problem,
                                const ConvergenceConfig& cfg, double c_opt) {
    return dapo_run(problem, classical_objective_for(problem), cfg, c_opt);
}

std::vector<RunRecord> optimal_phase_run(const Graph& g, int p, const ConvergenceConfig& cfg) {
    const DiagonalHamiltonian problem = maxcut_hamiltonian(g);
    const MaxCutSolution sol = brute_force_max_cut(g);
    const SparsePhase sparse = sparse_phase_from_solution(problem, sol.assignment);
    return fixed_phase_run(problem, sparse.hamiltonian, p, cfg, sol.value);
}

double approximation_ratio(double f, double c_opt) {
    if (!(c_opt > 0.0))
        throw std::invalid_argument("approximation_ratio: C_opt must be positive");
    return f / c_opt;
}

std::vector<SavingsRow> rzz_savings(const std::vector<RunRecord>& dapo,
                                    const std::vector<RunRecord>& vanilla) {
    if (dapo.size() != vanilla.size())
        throw std::invalid_argument("rzz_savings: depth mismatch (" +
                                    std::to_string(dapo.size()) + " vs " +
                                    std::to_string(vanilla.size()) + ")");
    std::vector<SavingsRow> rows;
    rows.reserve(dapo.size());
    for (std::size_t k = 0; k < dapo.size(); ++k) {
        const double v = static_cast<double>(vanilla[k].rzz_cumulative);
        const double d = static_cast<double>(dapo[k].rzz_cumulative);
        rows.push_back({dapo[k].p, v - d, v > 0.0 ? d / v : 1.0});
    }
    return rows;
}

} // namespace dapo
