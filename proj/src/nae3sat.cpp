#include "dapo/nae3sat.hpp"

#include "dapo/rng.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace dapo {

namespace {

void validate_clause(const Clause& c, int n_vars, const std::string& where) {
    for (const auto& lit : c.lits)
        if (lit.var < 0 || lit.var >= n_vars)
            throw std::invalid_argument(where + ": variable index " + std::to_string(lit.var) +
                                        " out of range [0," + std::to_string(n_vars) + ")");
    if (c.lits[0].var == c.lits[1].var || c.lits[0].var == c.lits[2].var ||
        c.lits[1].var == c.lits[2].var)
        throw std::invalid_argument(where + ": repeated variable within clause");
}

} // namespace

Nae3SatInstance::Nae3SatInstance(int n_vars, std::vector<Clause> clauses)
    : n_vars_(n_vars), clauses_(std::move(clauses)) {
    if (n_vars_ < 3)
        throw std::invalid_argument("Nae3SatInstance: n_vars must be >= 3");
    int idx = 0;
    for (auto& c : clauses_) {
        validate_clause(c, n_vars_, "clause " + std::to_string(idx));
        std::sort(c.lits.begin(), c.lits.end(),
                  [](const Literal& a, const Literal& b) { return a.var < b.var; });
        ++idx;
    }
}

Nae3SatInstance parse_cnf(std::istream& in) {
    std::string line;
    int n_vars = -1, n_clauses = -1;
    std::vector<int> pending;
    std::vector<Clause> clauses;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c')
            continue;
        if (line[first] == 'p') {
            std::istringstream ls(line);
            std::string p, cnf;
            if (!(ls >> p >> cnf >> n_vars >> n_clauses) || cnf != "cnf" || n_vars < 3 ||
                n_clauses < 0)
                throw ParseError("cnf, line " + std::to_string(line_no) +
                                 ": expected `p cnf <vars> <clauses>` with vars >= 3");
            continue;
        }
        if (n_vars < 0)
            throw ParseError("cnf, line " + std::to_string(line_no) +
                             ": clause before `p cnf` header");
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    throw ParseError("cnf, line " + std::to_string(line_no) + ": clause " +
                                     std::to_string(clauses.size() + 1) + " has " +
                                     std::to_string(pending.size()) + " literals, expected 3");
                Clause c;
                for (int k = 0; k < 3; ++k) {
                    const int v = std::abs(pending[static_cast<std::size_t>(k)]) - 1;
                    if (v < 0 || v >= n_vars)
                        throw ParseError("cnf, line " + std::to_string(line_no) +
                                         ": variable out of range");
                    c.lits[static_cast<std::size_t>(k)] = {
                        v, pending[static_cast<std::size_t>(k)] < 0};
                }
                if (c.lits[0].var == c.lits[1].var || c.lits[0].var == c.lits[2].var ||
                    c.lits[1].var == c.lits[2].var)
                    throw ParseError("cnf, line " + std::to_string(line_no) +
                                     ": repeated variable within clause");
                clauses.push_back(c);
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
        if (ls.fail() && !ls.eof())
            throw ParseError("cnf, line " + std::to_string(line_no) + ": malformed literal");
    }
    if (n_vars < 0)
        throw ParseError("cnf: missing `p cnf` header");
    if (!pending.empty())
        throw ParseError("cnf: unterminated clause at end of input");
    if (static_cast<int>(clauses.size()) != n_clauses)
        throw ParseError("cnf: expected " + std::to_string(n_clauses) + " clauses, got " +
                         std::to_string(clauses.size()));
    return Nae3SatInstance(n_vars, std::move(clauses));
}

Nae3SatInstance parse_cnf(const std::string& text) {
    std::istringstream in(text);
    return parse_cnf(in);
}

std::string to_cnf(const Nae3SatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.n_vars() << ' ' << inst.n_clauses() << '\n';
    for (const auto& c : inst.clauses()) {
        for (const auto& lit : c.lits)
            out << (lit.negated ? -(lit.var + 1) : (lit.var + 1)) << ' ';
        out << "0\n";
    }
    return out.str();
}

DiagonalHamiltonian nae3sat_hamiltonian(const Nae3SatInstance& inst) {
    std::vector<QuadraticTerm> terms;
    terms.reserve(static_cast<std::size_t>(inst.n_clauses()) * 3);
    for (const auto& c : inst.clauses()) {
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                const auto& la = c.lits[static_cast<std::size_t>(a)];
                const auto& lb = c.lits[static_cast<std::size_t>(b)];
                terms.push_back(
                    {la.var, lb.var, static_cast<double>(la.polarity() * lb.polarity())});
            }
    }
    return DiagonalHamiltonian(inst.n_vars(), std::move(terms),
                               static_cast<double>(inst.n_clauses()), Sense::minimize);
}

bool clause_nae_satisfied(const Clause& c, const Assignment& x) {
    bool all_true = true, all_false = true;
    for (const auto& lit : c.lits) {
        const bool val = (x.bit(lit.var) == 1) != lit.negated;
        all_true = all_true && val;
        all_false = all_false && !val;
    }
    return !all_true && !all_false;
}

int count_nae_violations(const Nae3SatInstance& inst, const Assignment& x) {
    if (x.size() != inst.n_vars())
        throw std::invalid_argument("count_nae_violations: assignment length mismatch");
    int violated = 0;
    for (const auto& c : inst.clauses())
        if (!clause_nae_satisfied(c, x))
            ++violated;
    return violated;
}

PlantedInstance plant_random_nae3sat(int n_vars, int n_clauses, std::uint64_t seed) {
    if (n_vars < 3)
        throw std::invalid_argument("plant_random_nae3sat: n_vars must be >= 3");
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_vars));
    for (auto& b : bits)
        b = static_cast<std::uint8_t>(rng_below(rng, 2));
    Assignment witness(std::move(bits));
    std::vector<Clause> clauses;
    clauses.reserve(static_cast<std::size_t>(n_clauses));
    while (static_cast<int>(clauses.size()) < n_clauses) {
        int v0, v1, v2;
        do {
            v0 = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n_vars)));
            v1 = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n_vars)));
            v2 = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(n_vars)));
        } while (v0 == v1 || v0 == v2 || v1 == v2);
        Clause c{{Literal{v0, rng_below(rng, 2) == 1}, Literal{v1, rng_below(rng, 2) == 1},
                  Literal{v2, rng_below(rng, 2) == 1}}};
        if (clause_nae_satisfied(c, witness))
            clauses.push_back(c);
    }
    return {Nae3SatInstance(n_vars, std::move(clauses)), std::move(witness)};
}

} // namespace dapo
