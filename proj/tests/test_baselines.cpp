#include "dapo/baselines.hpp"

#include "dapo/experiment.hpp"
#include "doctest.h"

#include <algorithm>
#include <set>

using namespace dapo;

namespace {

Graph triangle() {
    return parse_graph("3 3\n0 1\n1 2\n0 2");
}

ConvergenceConfig quick_config(int p, std::uint64_t seed = 7) {
    ConvergenceConfig cfg;
    cfg.max_layers = p;
    cfg.epsilon = 0.0;
    cfg.optimizer.seed = seed;
    return cfg;
}

bool edges_subset(const Graph& sub, const Graph& g) {
    return std::all_of(sub.edges().begin(), sub.edges().end(),
                       [&](const Edge& e) { return g.has_edge(e.i, e.j); });
}

} // namespace

TEST_CASE("sparsify_graph keeps exactly k edges from the input") {
    Graph k3 = triangle();
    Graph all = sparsify_graph(k3, {SparsifyMethod::uniform_random, 3, 1});
    CHECK(all.edges() == k3.edges());

    Graph two = sparsify_graph(k3, {SparsifyMethod::uniform_random, 2, 5});
    CHECK(two.n_edges() == 2);
    CHECK(edges_subset(two, k3));
    Graph again = sparsify_graph(k3, {SparsifyMethod::uniform_random, 2, 5});
    CHECK(two.edges() == again.edges()); // deterministic per seed

    CHECK_THROWS_AS(sparsify_graph(k3, {SparsifyMethod::uniform_random, 4, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sparsify_graph(k3, {SparsifyMethod::uniform_random, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("every sparsifier method emits a k-edge subgraph") {
    Graph g = random_graph(10, 30, 3);
    for (auto method : {SparsifyMethod::uniform_random, SparsifyMethod::degree_proportional,
                        SparsifyMethod::spanning_tree_first}) {
        for (int k : {1, 9, 20, 30}) {
            Graph sub = sparsify_graph(g, {method, k, 11});
            CHECK(sub.n_edges() == k);
            CHECK(sub.n_vertices() == 10);
            CHECK(edges_subset(sub, g));
        }
    }
}

TEST_CASE("spanning_tree_first prefers forest edges") {
    Graph g = random_graph(8, 16, 9);
    // with k = n-1 the kept set must itself be a spanning forest of a
    // connected graph: all 8 vertices touched, no cycle (8 - 1 edges)
    Graph sub = sparsify_graph(g, {SparsifyMethod::spanning_tree_first, 7, 2});
    std::set<int> touched;
    for (const auto& e : sub.edges()) {
        touched.insert(e.i);
        touched.insert(e.j);
    }
    // the source graph may be disconnected; the forest still has no duplicate
    // component coverage, so touched >= k+1 vertices means acyclic here
    CHECK(touched.size() >= 8u - 1u);
}

TEST_CASE("degree_proportional favors heavy endpoints") {
    // star plus one pendant pair: edge (0,1) has the largest degree sum
    Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph sub = sparsify_graph(star, {SparsifyMethod::degree_proportional, 1, seed});
        if (sub.edges()[0] == Edge{0, 1, 1.0})
            ++hits;
    }
    // weight of (0,1) is (4+3)/sum = 7/24; uniform would be ~8/40
    CHECK(hits > 5);
}

TEST_CASE("fixed_sparse_run degenerates to vanilla when the subgraph is the graph") {
    Graph g = random_graph(6, 9, 13);
    const double c_opt = brute_force_max_cut(g).value;
    ConvergenceConfig cfg = quick_config(3);
    auto sparse = fixed_sparse_run(g, g, 3, cfg, c_opt);
    auto vanilla = vanilla_run(maxcut_hamiltonian(g), 3, cfg, c_opt);
    REQUIRE(sparse.size() == vanilla.size());
    for (std::size_t d = 0; d < sparse.size(); ++d) {
        CHECK(sparse[d].best_value == vanilla[d].best_value);
        CHECK(sparse[d].params == vanilla[d].params);
        CHECK(sparse[d].rzz_this_layer == vanilla[d].rzz_this_layer);
    }
}

TEST_CASE("fixed_sparse_run with the optimal cut set equals optimal_phase_run") {
    Graph g = random_graph(6, 10, 17);
    MaxCutSolution sol = brute_force_max_cut(g);
    Graph cut_set(g.n_vertices(), cut_value(g, sol.assignment).cut_edges);
    ConvergenceConfig cfg = quick_config(3);
    auto via_subgraph = fixed_sparse_run(g, cut_set, 3, cfg, sol.value);
    auto via_oracle = optimal_phase_run(g, 3, cfg);
    REQUIRE(via_subgraph.size() == via_oracle.size());
    for (std::size_t d = 0; d < via_subgraph.size(); ++d) {
        CHECK(via_subgraph[d].best_value == via_oracle[d].best_value);
        CHECK(via_subgraph[d].rzz_this_layer == via_oracle[d].rzz_this_layer);
    }
}

TEST_CASE("fixed_sparse_run rejects edges outside the graph") {
    Graph g(4, {{0, 1}, {1, 2}});
    Graph bad(4, {{0, 3}});
    CHECK_THROWS_AS(fixed_sparse_run(g, bad, 2, quick_config(2), 0.0),
                    std::invalid_argument);
    Graph wrong_n(5, {{0, 1}});
    CHECK_THROWS_AS(fixed_sparse_run(g, wrong_n, 2, quick_config(2), 0.0),
                    std::invalid_argument);
}

TEST_CASE("dropout with a vanishing rate keeps every clause") {
    PlantedInstance planted = plant_random_nae3sat(6, 10, 5);
    ConvergenceConfig cfg = quick_config(2, 19);
    DropoutSpec spec{1e-12, 1, 5};
    DropoutResult result = dropout_run(planted.instance, spec, 2, cfg);
    auto vanilla = vanilla_run(nae3sat_hamiltonian(planted.instance), 2, cfg, 0.0);
    REQUIRE(result.records.size() == vanilla.size());
    for (std::size_t d = 0; d < vanilla.size(); ++d) {
        CHECK(result.records[d].best_value == vanilla[d].best_value);
        CHECK(result.records[d].rzz_this_layer == vanilla[d].rzz_this_layer);
    }
}

TEST_CASE("dropout returns the best of its trials") {
    PlantedInstance planted = plant_random_nae3sat(7, 14, 9);
    ConvergenceConfig cfg = quick_config(3, 23);
    DropoutSpec spec{0.5, 5, 31};
    DropoutResult result = dropout_run(planted.instance, spec, 3, cfg);
    REQUIRE(result.trial_final_values.size() == 5);
    const double best = result.records.back().best_value;
    for (double v : result.trial_final_values)
        CHECK(best <= v);
    CHECK(best ==
          result.trial_final_values[static_cast<std::size_t>(result.best_trial)]);

    DropoutResult rerun = dropout_run(planted.instance, spec, 3, cfg);
    CHECK(rerun.best_trial == result.best_trial);
    CHECK(rerun.trial_final_values == result.trial_final_values);
}

TEST_CASE("dropout rejects degenerate specs and all-dropped trials") {
    PlantedInstance planted = plant_random_nae3sat(4, 1, 2);
    ConvergenceConfig cfg = quick_config(1);
    CHECK_THROWS_AS(dropout_run(planted.instance, {0.0, 5, 1}, 1, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(dropout_run(planted.instance, {1.0, 5, 1}, 1, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(dropout_run(planted.instance, {0.5, 0, 1}, 1, cfg),
                    std::invalid_argument);
    // rate so close to 1 that the single clause is dropped on every retry
    CHECK_THROWS_AS(dropout_run(planted.instance, {1.0 - 1e-15, 1, 1}, 1, cfg),
                    std::runtime_error);
}

TEST_CASE("dropout keeps the full cost function as the optimization target") {
    // with a heavily dropped phase the reported F must still be the full
    // instance's energy of the optimized state, so it can exceed the phase
    // Hamiltonian's own floor
    PlantedInstance planted = plant_random_nae3sat(6, 12, 1);
    ConvergenceConfig cfg = quick_config(1, 3);
    DropoutSpec spec{0.7, 3, 7};
    DropoutResult result = dropout_run(planted.instance, spec, 1, cfg);
    const DiagonalHamiltonian full = nae3sat_hamiltonian(planted.instance);
    // F values are valid energies of the full Hamiltonian: within [0, 4|C|]
    for (const auto& r : result.records) {
        CHECK(r.best_value >= 0.0);
        CHECK(r.best_value <= 4.0 * planted.instance.n_clauses());
    }
    (void)full;
}
