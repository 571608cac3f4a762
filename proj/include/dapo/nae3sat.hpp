#ifndef DAPO_NAE3SAT_HPP
#define DAPO_NAE3SAT_HPP

#include "dapo/hamiltonian.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>

namespace dapo {

struct Literal {
    int var = 0; // 0-based
    bool negated = false;

    int polarity() const { return negated ? -1 : 1; }
    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
    std::array<Literal, 3> lits;
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// Not-all-equal 3-SAT instance: each clause holds three signed literals
/// on distinct variables.
class Nae3SatInstance {
public:
    Nae3SatInstance(int n_vars, std::vector<Clause> clauses);

    int n_vars() const { return n_vars_; }
    const std::vector<Clause>& clauses() const { return clauses_; }
    int n_clauses() const { return static_cast<int>(clauses_.size()); }

private:
    int n_vars_;
    std::vector<Clause> clauses_;
};

/// DIMACS-like subset: `c` comments, `p cnf <vars> <clauses>` header,
/// clauses as 0-terminated literal runs, exactly three literals each.
Nae3SatInstance parse_cnf(std::istream& in);
Nae3SatInstance parse_cnf(const std::string& text);
std::string to_cnf(const Nae3SatInstance& inst);

/// H = sum over clauses of [(sigma_i+sigma_j+sigma_k)^2 - 1]/2 with
/// sigma = polarity-signed spin; equals 4x the NAE-violated clause count.
/// Constant |C|, quadratic coefficients aggregated, sense minimize.
DiagonalHamiltonian nae3sat_hamiltonian(const Nae3SatInstance& inst);

/// True when the clause's three literal values are not all equal under x.
bool clause_nae_satisfied(const Clause& c, const Assignment& x);
int count_nae_violations(const Nae3SatInstance& inst, const Assignment& x);

struct PlantedInstance {
    Nae3SatInstance instance;
    Assignment witness;
};

/// Rejection-samples clauses until each is NAE-satisfied by a seeded random
/// witness. Deterministic per seed.
PlantedInstance plant_random_nae3sat(int n_vars, int n_clauses, std::uint64_t seed);

} // namespace dapo

#endif // DAPO_NAE3SAT_HPP
