#ifndef DAPO_BASELINES_HPP
#define DAPO_BASELINES_HPP

#include "dapo/driver.hpp"
#include "dapo/nae3sat.hpp"

#include <cstdint>

namespace dapo {

enum class SparsifyMethod { uniform_random, degree_proportional, spanning_tree_first };

struct SparsifierSpec {
    SparsifyMethod method = SparsifyMethod::uniform_random;
    int k = 1; // edges to keep, 0 < k <= |E|
    std::uint64_t seed = 0;
};

/// k-edge subgraph of g. uniform_random samples without replacement;
/// degree_proportional weights edges by w*(deg_i + deg_j);
/// spanning_tree_first keeps a random spanning forest, then fills uniformly.
Graph sparsify_graph(const Graph& g, const SparsifierSpec& spec);

/// All layers use the subgraph's cut Hamiltonian as phase; the optimization
/// objective is the full graph's Hamiltonian. Subgraph edges must be a
/// subset of g's.
std::vector<RunRecord> fixed_sparse_run(const Graph& g, const Graph& subgraph, int p,
                                        const ConvergenceConfig& cfg, double c_opt = 0.0);

struct DropoutSpec {
    double rate = 0.5; // per-clause drop probability, in (0,1)
    int trials = 5;
    std::uint64_t seed = 0;
};

struct DropoutResult {
    std::vector<RunRecord> records; // best trial's depth sweep
    int best_trial = 0;
    std::vector<double> trial_final_values;
};

/// Per trial, each clause is independently retained in the phase Hamiltonian
/// with probability 1-rate (cost Hamiltonian untouched); all layers share
/// the trial's dropped Hamiltonian. Returns the trial with the lowest final
/// energy. A trial that drops every clause is resampled a bounded number of
/// times, then rejected.
DropoutResult dropout_run(const Nae3SatInstance& inst, const DropoutSpec& spec, int p,
                          const ConvergenceConfig& cfg);

} // namespace dapo

#endif // DAPO_BASELINES_HPP
