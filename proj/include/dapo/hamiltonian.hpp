#ifndef DAPO_HAMILTONIAN_HPP
#define DAPO_HAMILTONIAN_HPP

#include "dapo/graph.hpp"

#include <vector>

namespace dapo {

enum class Sense { maximize, minimize };

struct QuadraticTerm {
    int i = 0;
    int j = 0;
    double coeff = 0.0;

    friend bool operator==(const QuadraticTerm&, const QuadraticTerm&) = default;
};

/// Quadratic spin Hamiltonian, diagonal in the computational basis:
///   H(z) = constant + sum_k coeff_k * s_i(z) * s_j(z),   s = 1 - 2*bit.
/// Terms are normalized to i < j, aggregated per (i,j) pair, zero
/// coefficients dropped, and stored in (i,j) order. `sense` records
/// whether higher or lower diagonal values are better.
class DiagonalHamiltonian {
public:
    DiagonalHamiltonian(int n_qubits, std::vector<QuadraticTerm> terms, double constant,
                        Sense sense);

    int n_qubits() const { return n_; }
    const std::vector<QuadraticTerm>& terms() const { return terms_; }
    int n_terms() const { return static_cast<int>(terms_.size()); }
    double constant() const { return constant_; }
    Sense sense() const { return sense_; }
    /// +1 for maximize, -1 for minimize.
    double sense_sign() const { return sense_ == Sense::maximize ? 1.0 : -1.0; }

    friend bool operator==(const DiagonalHamiltonian&, const DiagonalHamiltonian&) = default;

private:
    int n_;
    std::vector<QuadraticTerm> terms_;
    double constant_;
    Sense sense_;
};

/// H with diagonal equal to the cut value: constant sum(w)/2 and one term
/// per edge with coefficient -w/2. Sense is maximize.
DiagonalHamiltonian maxcut_hamiltonian(const Graph& g);

/// Diagonal entry of H at basis state z.
double evaluate_cost(const DiagonalHamiltonian& h, const Assignment& z);

struct SparsePhase {
    DiagonalHamiltonian hamiltonian;
    /// Set when no term was retained; `hamiltonian` is then the full input.
    bool fallback = false;
};

/// Keep exactly the terms that are active at x, i.e. whose contribution
/// coeff*s_i*s_j moves the objective in the good direction for the
/// Hamiltonian's sense (for MaxCut this is the cut set of x). The constant
/// is rebuilt as sum of retained |coeff| (for MaxCut: sum of retained w/2).
/// Falls back to the full Hamiltonian when nothing is retained.
SparsePhase sparse_phase_from_solution(const DiagonalHamiltonian& full, const Assignment& x);

/// All 2^n diagonal entries, basis index ascending. n <= 24 enforced.
std::vector<double> materialize_diagonal(const DiagonalHamiltonian& h);

} // namespace dapo

#endif // DAPO_HAMILTONIAN_HPP
