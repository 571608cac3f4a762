#include "dapo/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace dapo {

DiagonalHamiltonian::DiagonalHamiltonian(int n_qubits, std::vector<QuadraticTerm> terms,
                                         double constant, Sense sense)
    : n_(n_qubits), constant_(constant), sense_(sense) {
    if (n_ < 1)
        throw std::invalid_argument("DiagonalHamiltonian: n_qubits must be >= 1");
    std::map<std::pair<int, int>, double> agg;
    for (auto t : terms) {
        if (t.i > t.j)
            std::swap(t.i, t.j);
        if (t.i < 0 || t.j >= n_ || t.i == t.j)
            throw std::invalid_argument("DiagonalHamiltonian: term (" + std::to_string(t.i) +
                                        "," + std::to_string(t.j) + ") out of range for n=" +
                                        std::to_string(n_));
        agg[{t.i, t.j}] += t.coeff;
    }
    terms_.reserve(agg.size());
    for (const auto& [ij, c] : agg)
        if (c != 0.0)
            terms_.push_back({ij.first, ij.second, c});
}

DiagonalHamiltonian maxcut_hamiltonian(const Graph& g) {
    std::vector<QuadraticTerm> terms;
    terms.reserve(g.edges().size());
    double constant = 0.0;
    for (const auto& e : g.edges()) {
        terms.push_back({e.i, e.j, -e.weight / 2.0});
        constant += e.weight / 2.0;
    }
    return DiagonalHamiltonian(g.n_vertices(), std::move(terms), constant, Sense::maximize);
}

double evaluate_cost(const DiagonalHamiltonian& h, const Assignment& z) {
    if (z.size() != h.n_qubits())
        throw std::invalid_argument("evaluate_cost: assignment length " +
                                    std::to_string(z.size()) + " != n_qubits " +
                                    std::to_string(h.n_qubits()));
    double v = h.constant();
    for (const auto& t : h.terms())
        v += t.coeff * z.spin(t.i) * z.spin(t.j);
    return v;
}

SparsePhase sparse_phase_from_solution(const DiagonalHamiltonian& full, const Assignment& x) {
    if (x.size() != full.n_qubits())
        throw std::invalid_argument("sparse_phase_from_solution: assignment length " +
                                    std::to_string(x.size()) + " != n_qubits " +
                                    std::to_string(full.n_qubits()));
    const double good = full.sense_sign();
    std::vector<QuadraticTerm> kept;
    double constant = 0.0;
    for (const auto& t : full.terms()) {
        const double contribution = t.coeff * x.spin(t.i) * x.spin(t.j);
        if (good * contribution > 0.0) {
            kept.push_back(t);
            constant += std::abs(t.coeff);
        }
    }
    if (kept.empty())
        return {full, true};
    return {DiagonalHamiltonian(full.n_qubits(), std::move(kept), constant, full.sense()),
            false};
}

std::vector<double> materialize_diagonal(const DiagonalHamiltonian& h) {
    const int n = h.n_qubits();
    if (n > 24)
        throw std::invalid_argument("materialize_diagonal: n=" + std::to_string(n) +
                                    " exceeds memory guard 24");
    const std::uint64_t dim = 1ull << n;
    std::vector<double> diag(dim, h.constant());
    for (const auto& t : h.terms()) {
        const std::uint64_t mi = 1ull << (n - 1 - t.i);
        const std::uint64_t mj = 1ull << (n - 1 - t.j);
        for (std::uint64_t z = 0; z < dim; ++z) {
            const bool differ = ((z & mi) != 0) != ((z & mj) != 0);
            diag[z] += differ ? -t.coeff : t.coeff;
        }
    }
    return diag;
}

} // namespace dapo
