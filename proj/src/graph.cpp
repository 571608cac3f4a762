#include "dapo/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace dapo {

Graph::Graph(int n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 1)
        throw std::invalid_argument("Graph: n_vertices must be >= 1");
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges_) {
        if (e.i > e.j)
            std::swap(e.i, e.j);
        if (e.i < 0 || e.j >= n_ || e.i == e.j)
            throw std::invalid_argument("Graph: edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") out of range for n=" +
                                        std::to_string(n_));
        if (!seen.insert({e.i, e.j}).second)
            throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(e.i) +
                                        "," + std::to_string(e.j) + ")");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
}

double Graph::total_weight() const {
    return std::accumulate(edges_.begin(), edges_.end(), 0.0,
                           [](double acc, const Edge& e) { return acc + e.weight; });
}

bool Graph::has_edge(int i, int j) const {
    if (i > j)
        std::swap(i, j);
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return e.i == i && e.j == j; });
}

Graph Graph::complete(int n) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.push_back({i, j, 1.0});
    return Graph(n, std::move(edges));
}

Assignment::Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1)
            throw std::invalid_argument("Assignment: bits must be 0 or 1");
}

Assignment Assignment::from_index(std::uint64_t z, int n_bits) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_bits));
    for (int k = 0; k < n_bits; ++k)
        bits[static_cast<std::size_t>(k)] =
            static_cast<std::uint8_t>((z >> (n_bits - 1 - k)) & 1u);
    return Assignment(std::move(bits));
}

Assignment Assignment::from_string(std::string_view s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("Assignment: bitstring may contain only 0/1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Assignment(std::move(bits));
}

std::uint64_t Assignment::to_index() const {
    std::uint64_t z = 0;
    for (auto b : bits_)
        z = (z << 1) | b;
    return z;
}

std::string Assignment::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_)
        s.push_back(static_cast<char>('0' + b));
    return s;
}

Assignment Assignment::flipped(int k) const {
    auto bits = bits_;
    bits.at(static_cast<std::size_t>(k)) ^= 1u;
    return Assignment(std::move(bits));
}

Assignment Assignment::complemented() const {
    auto bits = bits_;
    for (auto& b : bits)
        b ^= 1u;
    return Assignment(std::move(bits));
}

bool operator<(const Assignment& a, const Assignment& b) {
    return std::lexicographical_compare(a.bits_.begin(), a.bits_.end(), b.bits_.begin(),
                                        b.bits_.end());
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
    throw ParseError("edge list, line " + std::to_string(line_no) + ": " + what);
}

} // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    int edges_read = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> m) || n < 1 || m < 0)
                parse_fail(line_no, "expected header `n m`");
            std::string rest;
            if (ls >> rest)
                parse_fail(line_no, "trailing tokens after header");
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        if (edges_read == m)
            parse_fail(line_no, "more than " + std::to_string(m) + " edge lines");
        int i, j;
        if (!(ls >> i >> j))
            parse_fail(line_no, "expected `i j [w]`");
        double w = 1.0;
        if (!ls.eof()) {
            if (!(ls >> w))
                parse_fail(line_no, "malformed weight");
            std::string rest;
            if (ls >> rest)
                parse_fail(line_no, "trailing tokens after edge");
        }
        if (i == j)
            parse_fail(line_no, "self-loop " + std::to_string(i));
        if (i > j)
            std::swap(i, j);
        if (i < 0 || j >= n)
            parse_fail(line_no, "vertex index out of range [0," + std::to_string(n) + ")");
        for (const auto& e : edges)
            if (e.i == i && e.j == j)
                parse_fail(line_no, "duplicate edge (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        edges.push_back({i, j, w});
        ++edges_read;
    }
    if (n < 0)
        throw ParseError("edge list: missing header line `n m`");
    if (edges_read != m)
        throw ParseError("edge list: expected " + std::to_string(m) + " edges, got " +
                         std::to_string(edges_read));
    return Graph(n, std::move(edges));
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

CutReport cut_value(const Graph& g, const Assignment& x) {
    if (x.size() != g.n_vertices())
        throw std::invalid_argument("cut_value: assignment length " + std::to_string(x.size()) +
                                    " != n_vertices " + std::to_string(g.n_vertices()));
    CutReport report;
    for (const auto& e : g.edges()) {
        if (x.bit(e.i) != x.bit(e.j)) {
            report.value += e.weight;
            report.cut_edges.push_back(e);
        }
    }
    return report;
}

MaxCutSolution brute_force_max_cut(const Graph& g) {
    const int n = g.n_vertices();
    if (n > 30)
        throw std::invalid_argument("brute_force_max_cut: n=" + std::to_string(n) +
                                    " exceeds exhaustive bound 30");
    // Z2 symmetry: scanning only x_0 = 0 (the top half of indices never
    // visited) in ascending index order makes the first maximum found the
    // lexicographically smallest canonical optimum.
    const std::uint64_t half = 1ull << (n - 1);
    double best = -1.0;
    std::uint64_t best_z = 0;
    const auto& edges = g.edges();
    std::vector<std::uint64_t> masks(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k)
        masks[k] = (1ull << (n - 1 - edges[k].i)) | (1ull << (n - 1 - edges[k].j));
    for (std::uint64_t z = 0; z < half; ++z) {
        double v = 0.0;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const std::uint64_t hit = z & masks[k];
            if (hit != 0 && hit != masks[k])
                v += edges[k].weight;
        }
        if (v > best) {
            best = v;
            best_z = z;
        }
    }
    return {best, Assignment::from_index(best_z, n)};
}

std::vector<Assignment> neighborhood(const Assignment& x) {
    std::vector<Assignment> out;
    out.reserve(static_cast<std::size_t>(x.size()));
    for (int k = 0; k < x.size(); ++k)
        out.push_back(x.flipped(k));
    return out;
}

SearchResult neighborhood_search(const ObjectiveFn& objective, const Assignment& x) {
    const double f0 = objective(x);
    Assignment best = x;
    double fbest = f0;
    for (int k = 0; k < x.size(); ++k) {
        Assignment y = x.flipped(k);
        const double fy = objective(y);
        if (fy > fbest) {
            fbest = fy;
            best = std::move(y);
        }
    }
    return {std::move(best), fbest - f0};
}

} // namespace dapo
