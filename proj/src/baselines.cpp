#include "dapo/baselines.hpp"

#include "dapo/rng.hpp"

#include <algorithm>
#include <numeric>

namespace dapo {

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t count, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t k = count; k > 1; --k)
        std::swap(idx[k - 1], idx[rng_below(rng, k)]);
    return idx;
}

std::vector<Edge> pick_uniform(const std::vector<Edge>& edges, int k, std::mt19937_64& rng) {
    auto order = shuffled_indices(edges.size(), rng);
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t)
        kept.push_back(edges[order[static_cast<std::size_t>(t)]]);
    return kept;
}

std::vector<Edge> pick_degree_proportional(const Graph& g, int k, std::mt19937_64& rng) {
    std::vector<int> degree(static_cast<std::size_t>(g.n_vertices()), 0);
    for (const auto& e : g.edges()) {
        ++degree[static_cast<std::size_t>(e.i)];
        ++degree[static_cast<std::size_t>(e.j)];
    }
    std::vector<Edge> pool = g.edges();
    std::vector<double> weight(pool.size());
    for (std::size_t t = 0; t < pool.size(); ++t)
        weight[t] = pool[t].weight * (degree[static_cast<std::size_t>(pool[t].i)] +
                                      degree[static_cast<std::size_t>(pool[t].j)]);
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
        const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
        double u = rng_unit(rng) * total;
        std::size_t pick = 0;
        for (; pick + 1 < pool.size(); ++pick) {
            u -= weight[pick];
            if (u < 0.0)
                break;
        }
        kept.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return kept;
}

// Union-find for the random spanning forest.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

std::vector<Edge> pick_spanning_tree_first(const Graph& g, int k, std::mt19937_64& rng) {
    auto order = shuffled_indices(g.edges().size(), rng);
    Dsu dsu(g.n_vertices());
    std::vector<Edge> forest, rest;
    for (auto idx : order) {
        const Edge& e = g.edges()[idx];
        if (dsu.unite(e.i, e.j))
            forest.push_back(e);
        else
            rest.push_back(e);
    }
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(k));
    for (const auto& e : forest) {
        if (static_cast<int>(kept.size()) == k)
            break;
        kept.push_back(e);
    }
    for (const auto& e : rest) {
        if (static_cast<int>(kept.size()) == k)
            break;
        kept.push_back(e);
    }
    return kept;
}

} // namespace

Graph sparsify_graph(const Graph& g, const SparsifierSpec& spec) {
    if (spec.k < 1 || spec.k > g.n_edges())
        throw std::invalid_argument("sparsify_graph: k=" + std::to_string(spec.k) +
                                    " not in [1," + std::to_string(g.n_edges()) + "]");
    std::mt19937_64 rng(spec.seed);
    std::vector<Edge> kept;
    switch (spec.method) {
    case SparsifyMethod::uniform_random:
        kept = pick_uniform(g.edges(), spec.k, rng);
        break;
    case SparsifyMethod::degree_proportional:
        kept = pick_degree_proportional(g, spec.k, rng);
        break;
    case SparsifyMethod::spanning_tree_first:
        kept = pick_spanning_tree_first(g, spec.k, rng);
        break;
    }
    return Graph(g.n_vertices(), std::move(kept));
}

std::vector<RunRecord> fixed_sparse_run(const Graph& g, const Graph& subgraph, int p,
                                        const ConvergenceConfig& cfg, double c_opt) {
    if (subgraph.n_vertices() != g.n_vertices())
        throw std::invalid_argument("fixed_sparse_run: vertex count mismatch");
    for (const auto& e : subgraph.edges())
        if (!g.has_edge(e.i, e.j))
            throw std::invalid_argument("fixed_sparse_run: subgraph edge (" +
                                        std::to_string(e.i) + "," + std::to_string(e.j) +
                                        ") not in the full graph");
    return fixed_phase_run(maxcut_hamiltonian(g), maxcut_hamiltonian(subgraph), p, cfg, c_opt);
}

DropoutResult dropout_run(const Nae3SatInstance& inst, const DropoutSpec& spec, int p,
                          const ConvergenceConfig& cfg) {
    if (!(spec.rate > 0.0) || !(spec.rate < 1.0))
        throw std::invalid_argument("dropout_run: rate must be in (0,1)");
    if (spec.trials < 1)
        throw std::invalid_argument("dropout_run: trials must be >= 1");
    const DiagonalHamiltonian problem = nae3sat_hamiltonian(inst);

    DropoutResult result;
    result.trial_final_values.reserve(static_cast<std::size_t>(spec.trials));
    for (int trial = 0; trial < spec.trials; ++trial) {
        std::mt19937_64 rng(
            derive_seed(spec.seed, "dropout", static_cast<std::uint64_t>(trial)));
        std::vector<Clause> retained;
        constexpr int kMaxRetries = 64;
        for (int attempt = 0;; ++attempt) {
            retained.clear();
            for (const auto& c : inst.clauses())
                if (rng_unit(rng) >= spec.rate)
                    retained.push_back(c);
            if (!retained.empty())
                break;
            if (attempt + 1 >= kMaxRetries)
                throw std::runtime_error("dropout_run: trial " + std::to_string(trial) +
                                         " dropped every clause after " +
                                         std::to_string(kMaxRetries) + " attempts");
        }
        const DiagonalHamiltonian phase =
            nae3sat_hamiltonian(Nae3SatInstance(inst.n_vars(), std::move(retained)));
        std::vector<RunRecord> records = fixed_phase_run(problem, phase, p, cfg, 0.0);
        const double final_value = records.back().best_value;
        result.trial_final_values.push_back(final_value);
        // minimize sense: strictly lower final energy wins, earlier trial on ties
        if (trial == 0 ||
            final_value < result.trial_final_values[static_cast<std::size_t>(result.best_trial)]) {
            result.best_trial = trial;
            result.records = std::move(records);
        }
    }
    return result;
}

} // namespace dapo
