#ifndef DAPO_GRAPH_HPP
#define DAPO_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dapo {

using ParseError = std::runtime_error;

struct Edge {
    int i = 0;
    int j = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph. Edges are normalized to i < j, duplicates
/// rejected, vertex indices in [0, n_vertices).
class Graph {
public:
    Graph(int n_vertices, std::vector<Edge> edges);

    int n_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    double total_weight() const;
    bool has_edge(int i, int j) const;

    static Graph complete(int n);

private:
    int n_;
    std::vector<Edge> edges_;
};

/// Binary assignment x in {0,1}^n. Position k holds x_k. The equivalent
/// basis index reads the bits as a binary number with x_0 as the most
/// significant bit, so index order coincides with lexicographic order
/// of bitstrings.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::vector<std::uint8_t> bits);

    static Assignment from_index(std::uint64_t z, int n_bits);
    static Assignment from_string(std::string_view s);

    int size() const { return static_cast<int>(bits_.size()); }
    std::uint8_t bit(int k) const { return bits_[static_cast<std::size_t>(k)]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    /// Spin value s_k = 1 - 2*x_k.
    int spin(int k) const { return 1 - 2 * static_cast<int>(bit(k)); }

    std::uint64_t to_index() const;
    std::string to_string() const;
    Assignment flipped(int k) const;
    Assignment complemented() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend bool operator<(const Assignment& a, const Assignment& b);

private:
    std::vector<std::uint8_t> bits_;
};

struct CutReport {
    double value = 0.0;
    std::vector<Edge> cut_edges;
};

struct MaxCutSolution {
    double value = 0.0;
    Assignment assignment;
};

using ObjectiveFn = std::function<double(const Assignment&)>;

struct SearchResult {
    Assignment best;
    double delta = 0.0;
};

/// Edge-list text: header `n m`, then m lines `i j` or `i j w`,
/// `#`-prefixed comment lines ignored. Throws ParseError with the
/// offending line number.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);

CutReport cut_value(const Graph& g, const Assignment& x);

/// Exhaustive optimum over all 2^n assignments (n <= 30 enforced).
/// Ties resolve to the lexicographically smallest bitstring with x_0 = 0.
MaxCutSolution brute_force_max_cut(const Graph& g);

/// The n assignments at Hamming distance 1 from x, k-th entry = bit k flipped.
std::vector<Assignment> neighborhood(const Assignment& x);

/// Single-pass 1-bit-flip search: best of {x} and its n neighbors under the
/// objective. A flip is accepted only on strict improvement; ties among
/// improving neighbors break to the lowest flipped bit index.
/// delta = objective(best) - objective(x) >= 0.
SearchResult neighborhood_search(const ObjectiveFn& objective, const Assignment& x);

} // namespace dapo

#endif // DAPO_GRAPH_HPP
