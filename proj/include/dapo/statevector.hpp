#ifndef DAPO_STATEVECTOR_HPP
#define DAPO_STATEVECTOR_HPP

#include "dapo/hamiltonian.hpp"
#include "dapo/schedule.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace dapo {

/// Exact amplitudes over 2^n basis states. Qubit k maps to bit (n-1-k) of
/// the amplitude index, matching Assignment's index convention.
class Statevector {
public:
    explicit Statevector(int n_qubits); // |0...0>
    static Statevector basis(int n_qubits, std::uint64_t z);

    int n_qubits() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double>& operator[](std::uint64_t z) { return amps_[z]; }
    const std::complex<double>& operator[](std::uint64_t z) const { return amps_[z]; }
    double norm() const;

private:
    int n_;
    std::vector<std::complex<double>> amps_;
};

/// Uniform superposition, all amplitudes 2^{-n/2}. 1 <= n <= 24 enforced.
Statevector plus_state(int n);

/// amplitude[z] *= exp(-i * gamma * diag[z]).
void apply_phase(Statevector& state, std::span<const double> diag, double gamma);
void apply_phase(Statevector& state, const DiagonalHamiltonian& h, double gamma);

/// exp(-i * beta * X) on every qubit: (a0, a1) -> (cos b * a0 - i sin b * a1,
/// -i sin b * a0 + cos b * a1).
void apply_mixer(Statevector& state, double beta);

/// sum_z |a_z|^2 * diag[z], accumulated in ascending z for reproducibility.
double expectation(const Statevector& state, std::span<const double> diag);
double expectation(const Statevector& state, const DiagonalHamiltonian& h);

/// Basis state of largest probability; ties break to the smallest index.
Assignment argmax_basis(const Statevector& state);

/// Seeded shot sampling of basis indices (the exact pipeline does not use
/// this; it exists for finite-shot experiments).
std::vector<std::uint64_t> sample_basis(const Statevector& state, int shots,
                                        std::uint64_t seed);
/// Most frequent outcome of `shots` samples; ties to the smallest index.
Assignment sampled_argmax(const Statevector& state, int shots, std::uint64_t seed);

struct GateCounts {
    std::vector<int> rzz_per_layer;
    std::vector<int> rx_per_layer;
    long cnot_total = 0; // 2 CNOTs per R_ZZ
};

/// One R_ZZ per quadratic term per layer, one R_X per qubit per layer.
GateCounts gate_counts(const AnsatzSchedule& schedule);

/// Phase diagonals materialized once so repeated parameter evaluations of
/// the same schedule stay cheap.
class CompiledCircuit {
public:
    explicit CompiledCircuit(const AnsatzSchedule& schedule);

    int n_qubits() const { return n_; }
    int depth() const { return static_cast<int>(diags_.size()); }

    /// Evolves plus_state through alternating phase/mixer layers.
    /// params = (gamma_1, beta_1, ..., gamma_p, beta_p).
    Statevector run(std::span<const double> params) const;

private:
    int n_;
    std::vector<std::vector<double>> diags_;
};

Statevector run_circuit(const AnsatzSchedule& schedule, std::span<const double> params);

} // namespace dapo

#endif // DAPO_STATEVECTOR_HPP
