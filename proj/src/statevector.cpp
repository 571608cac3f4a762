#include "dapo/statevector.hpp"

#include "dapo/rng.hpp"

#include <algorithm>
#include <cmath>

namespace dapo {

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
    if (n_ < 1 || n_ > 24)
        throw std::invalid_argument("Statevector: n_qubits must be in [1,24], got " +
                                    std::to_string(n_));
    amps_.assign(std::uint64_t{1} << n_, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

Statevector Statevector::basis(int n_qubits, std::uint64_t z) {
    Statevector s(n_qubits);
    if (z >= s.dim())
        throw std::invalid_argument("Statevector::basis: index out of range");
    s.amps_[0] = {0.0, 0.0};
    s.amps_[z] = {1.0, 0.0};
    return s;
}

double Statevector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_)
        acc += std::norm(a);
    return std::sqrt(acc);
}

Statevector plus_state(int n) {
    Statevector s(n);
    const double amp = std::pow(2.0, -0.5 * n);
    for (std::uint64_t z = 0; z < s.dim(); ++z)
        s[z] = {amp, 0.0};
    return s;
}

void apply_phase(Statevector& state, std::span<const double> diag, double gamma) {
    if (diag.size() != state.dim())
        throw std::invalid_argument("apply_phase: diagonal size mismatch");
    for (std::uint64_t z = 0; z < state.dim(); ++z) {
        const double angle = gamma * diag[z];
        state[z] *= std::complex<double>(std::cos(angle), -std::sin(angle));
    }
}

void apply_phase(Statevector& state, const DiagonalHamiltonian& h, double gamma) {
    if (h.n_qubits() != state.n_qubits())
        throw std::invalid_argument("apply_phase: qubit count mismatch");
    apply_phase(state, materialize_diagonal(h), gamma);
}

void apply_mixer(Statevector& state, double beta) {
    const double c = std::cos(beta);
    const std::complex<double> mis(0.0, -std::sin(beta));
    const std::uint64_t dim = state.dim();
    for (int q = 0; q < state.n_qubits(); ++q) {
        const std::uint64_t stride = std::uint64_t{1} << q;
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                auto& a0 = state[base + off];
                auto& a1 = state[base + off + stride];
                const auto b0 = c * a0 + mis * a1;
                const auto b1 = mis * a0 + c * a1;
                a0 = b0;
                a1 = b1;
            }
        }
    }
}

double expectation(const Statevector& state, std::span<const double> diag) {
    if (diag.size() != state.dim())
        throw std::invalid_argument("expectation: diagonal size mismatch");
    double acc = 0.0;
    for (std::uint64_t z = 0; z < state.dim(); ++z)
        acc += std::norm(state[z]) * diag[z];
    return acc;
}

double expectation(const Statevector& state, const DiagonalHamiltonian& h) {
    if (h.n_qubits() != state.n_qubits())
        throw std::invalid_argument("expectation: qubit count mismatch");
    return expectation(state, materialize_diagonal(h));
}

Assignment argmax_basis(const Statevector& state) {
    std::uint64_t best_z = 0;
    double best_p = std::norm(state[0]);
    for (std::uint64_t z = 1; z < state.dim(); ++z) {
        const double p = std::norm(state[z]);
        if (p > best_p) {
            best_p = p;
            best_z = z;
        }
    }
    return Assignment::from_index(best_z, state.n_qubits());
}

std::vector<std::uint64_t> sample_basis(const Statevector& state, int shots,
                                        std::uint64_t seed) {
    if (shots < 1)
        throw std::invalid_argument("sample_basis: shots must be >= 1");
    std::vector<double> cdf(state.dim());
    double acc = 0.0;
    for (std::uint64_t z = 0; z < state.dim(); ++z) {
        acc += std::norm(state[z]);
        cdf[z] = acc;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
    for (auto& s : out) {
        const double u = rng_unit(rng) * acc;
        s = static_cast<std::uint64_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        if (s >= state.dim())
            s = state.dim() - 1;
    }
    return out;
}

Assignment sampled_argmax(const Statevector& state, int shots, std::uint64_t seed) {
    std::vector<std::uint64_t> counts(state.dim(), 0);
    for (auto z : sample_basis(state, shots, seed))
        ++counts[z];
    std::uint64_t best_z = 0;
    for (std::uint64_t z = 1; z < state.dim(); ++z)
        if (counts[z] > counts[best_z])
            best_z = z;
    return Assignment::from_index(best_z, state.n_qubits());
}

AnsatzSchedule::AnsatzSchedule(int n_qubits) : n_(n_qubits) {
    if (n_ < 1)
        throw std::invalid_argument("AnsatzSchedule: n_qubits must be >= 1");
}

void AnsatzSchedule::append(LayerSpec layer) {
    if (layer.phase.n_qubits() != n_)
        throw std::invalid_argument("AnsatzSchedule: layer qubit count mismatch");
    layers_.push_back(std::move(layer));
}

GateCounts gate_counts(const AnsatzSchedule& schedule) {
    GateCounts counts;
    counts.rzz_per_layer.reserve(static_cast<std::size_t>(schedule.depth()));
    for (const auto& layer : schedule.layers()) {
        counts.rzz_per_layer.push_back(layer.phase.n_terms());
        counts.rx_per_layer.push_back(schedule.n_qubits());
        counts.cnot_total += 2L * layer.phase.n_terms();
    }
    return counts;
}

CompiledCircuit::CompiledCircuit(const AnsatzSchedule& schedule) : n_(schedule.n_qubits()) {
    diags_.reserve(static_cast<std::size_t>(schedule.depth()));
    for (const auto& layer : schedule.layers())
        diags_.push_back(materialize_diagonal(layer.phase));
}

Statevector CompiledCircuit::run(std::span<const double> params) const {
    if (params.size() != 2 * diags_.size())
        throw std::invalid_argument("run_circuit: expected " +
                                    std::to_string(2 * diags_.size()) + " parameters, got " +
                                    std::to_string(params.size()));
    Statevector state = plus_state(n_);
    for (std::size_t k = 0; k < diags_.size(); ++k) {
        apply_phase(state, diags_[k], params[2 * k]);
        apply_mixer(state, params[2 * k + 1]);
    }
    return state;
}

Statevector run_circuit(const AnsatzSchedule& schedule, std::span<const double> params) {
    return CompiledCircuit(schedule).run(params);
}

} // namespace dapo
