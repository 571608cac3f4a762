#ifndef DAPO_SCHEDULE_HPP
#define DAPO_SCHEDULE_HPP

#include "dapo/hamiltonian.hpp"

#include <optional>
#include <vector>

namespace dapo {

enum class LayerSource { full_problem, solution_derived, fallback_full };

struct LayerSpec {
    DiagonalHamiltonian phase;
    LayerSource source = LayerSource::full_problem;
    std::optional<Assignment> derived_from;
};

/// Ordered phase layers of one ansatz; every layer acts on the same qubit
/// count. Parameters are supplied separately as (gamma_1, beta_1, ...).
class AnsatzSchedule {
public:
    explicit AnsatzSchedule(int n_qubits);

    int n_qubits() const { return n_; }
    const std::vector<LayerSpec>& layers() const { return layers_; }
    int depth() const { return static_cast<int>(layers_.size()); }

    void append(LayerSpec layer);

private:
    int n_;
    std::vector<LayerSpec> layers_;
};

} // namespace dapo

#endif // DAPO_SCHEDULE_HPP
