#include "dapo/graph.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace dapo;

namespace {

// Test-side oracle: cut weight by direct edge enumeration.
double cut_oracle(const Graph& g, const Assignment& x) {
    double v = 0.0;
    for (const auto& e : g.edges())
        if (x.bit(e.i) != x.bit(e.j))
            v += e.weight;
    return v;
}

Graph triangle() {
    return parse_graph("3 3\n0 1\n1 2\n0 2");
}

Graph k22() {
    // parts {0,1} / {2,3}
    return Graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

Graph random_test_graph(int n, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2)
                edges.push_back({i, j, 1.0});
    return Graph(n, std::move(edges));
}

} // namespace

TEST_CASE("parse_graph accepts the documented format") {
    Graph k3 = triangle();
    CHECK(k3.n_vertices() == 3);
    CHECK(k3.n_edges() == 3);

    Graph isolated = parse_graph("2 0");
    CHECK(isolated.n_vertices() == 2);
    CHECK(isolated.n_edges() == 0);

    Graph swapped = parse_graph("3 1\n2 0");
    REQUIRE(swapped.n_edges() == 1);
    CHECK(swapped.edges()[0].i == 0);
    CHECK(swapped.edges()[0].j == 2);

    Graph commented = parse_graph("# instance\n3 1\n# edge below\n0 1 2.5");
    CHECK(commented.edges()[0].weight == 2.5);
}

TEST_CASE("parse_graph reports the offending line") {
    CHECK_THROWS_WITH_AS(parse_graph("3 1\n0 7"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(parse_graph("3 2\n0 1\n1 0"), doctest::Contains("duplicate"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_graph("3 1\nx y"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_graph("3 2\n0 1"), ParseError);  // missing edge line
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    CHECK_THROWS_AS(parse_graph("3 1\n1 1"), ParseError);  // self-loop
}

TEST_CASE("assignment index convention is big-endian on the bitstring") {
    Assignment a = Assignment::from_string("101");
    CHECK(a.to_index() == 5);
    CHECK(Assignment::from_index(5, 3) == a);
    CHECK(a.flipped(1).to_string() == "111");
    CHECK(a.complemented().to_string() == "010");
}

TEST_CASE("cut_value matches hand enumeration") {
    Graph k3 = triangle();
    CutReport r = cut_value(k3, Assignment::from_string("010"));
    CHECK(r.value == 2.0);
    REQUIRE(r.cut_edges.size() == 2);
    CHECK(r.cut_edges[0] == Edge{0, 1, 1.0});
    CHECK(r.cut_edges[1] == Edge{1, 2, 1.0});

    CHECK(cut_value(k3, Assignment::from_string("000")).value == 0.0);
    CHECK(cut_value(k3, Assignment::from_string("000")).cut_edges.empty());

    // complete bipartite: the optimal cut uses every edge
    CHECK(cut_value(k22(), Assignment::from_string("0011")).value == 4.0);

    CHECK_THROWS_AS(cut_value(k3, Assignment::from_string("01")), std::invalid_argument);
}

TEST_CASE("cut is Z2 symmetric") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_test_graph(6, rng);
        for (std::uint64_t z = 0; z < 64; ++z) {
            Assignment x = Assignment::from_index(z, 6);
            CHECK(cut_value(g, x).value == cut_value(g, x.complemented()).value);
        }
    }
}

TEST_CASE("brute_force_max_cut finds exhaustive optima") {
    MaxCutSolution k3 = brute_force_max_cut(triangle());
    CHECK(k3.value == 2.0);
    CHECK(k3.assignment.bit(0) == 0);

    MaxCutSolution k4 = brute_force_max_cut(Graph::complete(4));
    CHECK(k4.value == 4.0);
    CHECK(k4.assignment.to_string() == "0011"); // smallest canonical balanced bipartition

    // single vertex has no cut
    CHECK(brute_force_max_cut(Graph(1, {})).value == 0.0);
}

TEST_CASE("brute force dominates every assignment and hits it") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_test_graph(6, rng);
        MaxCutSolution sol = brute_force_max_cut(g);
        CHECK(cut_value(g, sol.assignment).value == sol.value);
        for (std::uint64_t z = 0; z < 64; ++z)
            CHECK(cut_value(g, Assignment::from_index(z, 6)).value <= sol.value);
    }
}

TEST_CASE("brute force rejects oversized graphs") {
    CHECK_THROWS_AS(brute_force_max_cut(Graph(31, {})), std::invalid_argument);
}

TEST_CASE("neighborhood flips one bit per entry, ascending") {
    auto nb = neighborhood(Assignment::from_string("10101"));
    REQUIRE(nb.size() == 5);
    CHECK(nb[0].to_string() == "00101");
    CHECK(nb[1].to_string() == "11101");
    CHECK(nb[2].to_string() == "10001");
    CHECK(nb[3].to_string() == "10111");
    CHECK(nb[4].to_string() == "10100");

    auto single = neighborhood(Assignment::from_string("0"));
    REQUIRE(single.size() == 1);
    CHECK(single[0].to_string() == "1");

    auto zeros = neighborhood(Assignment::from_string("000"));
    CHECK(zeros[0].to_string() == "100");
    CHECK(zeros[1].to_string() == "010");
    CHECK(zeros[2].to_string() == "001");
}

TEST_CASE("neighborhood members sit at Hamming distance 1") {
    Assignment x = Assignment::from_string("0110101");
    for (const auto& y : neighborhood(x)) {
        int dist = 0;
        for (int k = 0; k < x.size(); ++k)
            dist += x.bit(k) != y.bit(k);
        CHECK(dist == 1);
    }
}

TEST_CASE("neighborhood_search accepts only strict improvement") {
    Graph k3 = triangle();
    ObjectiveFn cut = [&](const Assignment& x) { return cut_oracle(k3, x); };

    SearchResult from_zeros = neighborhood_search(cut, Assignment::from_string("000"));
    CHECK(from_zeros.best.to_string() == "100"); // three ties at 2, lowest flipped bit wins
    CHECK(from_zeros.delta == 2.0);

    SearchResult at_opt = neighborhood_search(cut, Assignment::from_string("010"));
    CHECK(at_opt.best.to_string() == "010");
    CHECK(at_opt.delta == 0.0);

    ObjectiveFn constant = [](const Assignment&) { return 7.0; };
    SearchResult flat = neighborhood_search(constant, Assignment::from_string("1011"));
    CHECK(flat.best.to_string() == "1011");
    CHECK(flat.delta == 0.0);
}

TEST_CASE("neighborhood_search equals an independent argmax on small graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Graph g = random_test_graph(n, rng);
        ObjectiveFn cut = [&](const Assignment& x) { return cut_oracle(g, x); };
        for (std::uint64_t z = 0; z < (1ull << n); ++z) {
            Assignment x = Assignment::from_index(z, n);
            SearchResult got = neighborhood_search(cut, x);

            // independent scan over {x} and its flips
            Assignment expect = x;
            double best = cut_oracle(g, x);
            for (int k = 0; k < n; ++k) {
                Assignment y = x.flipped(k);
                const double fy = cut_oracle(g, y);
                if (fy > best) {
                    best = fy;
                    expect = y;
                }
            }
            CHECK(got.best == expect);
            CHECK(got.delta == best - cut_oracle(g, x));
            CHECK(got.delta >= 0.0);
        }
    }
}
