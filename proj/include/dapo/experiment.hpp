#ifndef DAPO_EXPERIMENT_HPP
#define DAPO_EXPERIMENT_HPP

#include "dapo/baselines.hpp"
#include "dapo/driver.hpp"
#include "dapo/nae3sat.hpp"
#include "dapo/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dapo {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvSchema = "dapo.run.v1";
inline constexpr const char* kCsvHeader =
    "algo,instance,seed,p,F,ratio,x_measured,x_search,delta,rzz_layer,rzz_cum,fallback";

/// %.9g formatting used everywhere results are serialized, so reruns are
/// byte-comparable.
std::string format_g9(double v);

/// Uniform simple graph with exactly m edges, unit weights.
Graph random_graph(int n, int m, std::uint64_t seed);

struct ExperimentConfig {
    std::string problem = "maxcut"; // maxcut | nae3sat
    std::vector<std::string> instances;
    std::vector<std::string> algorithms; // dapo, vanilla, optimal-phase,
                                         // random-sparse, sparsifier, dropout
    int p_min = 1;
    int p_max = 6;
    OptimizerConfig optimizer;
    double epsilon = 0.0; // DAPO early-stop threshold; 0 sweeps the full range
    int measure_shots = 0;
    int random_sparse_samples = 1;
    double dropout_rate = 0.5;
    int dropout_trials = 5;
    std::string out_dir = "out";
    std::uint64_t master_seed = 1;
    int threads = 1;
};

ExperimentConfig config_from_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

struct InstanceData {
    std::string name;
    std::string path;
    std::optional<Graph> graph;
    std::optional<Nae3SatInstance> sat;
    double c_opt = 0.0; // oracle optimum; 0 for planted NAE3SAT (min energy)
    std::optional<Assignment> x_opt;
};

/// Reads the instance file plus its `<stem>.manifest.json` sidecar when
/// present; otherwise the oracle optimum is recomputed (MaxCut only).
InstanceData load_instance(const std::string& path, const std::string& problem);

struct GenResult {
    std::string instance_path;
    std::string manifest_path;
    double c_opt = 0.0;
};

GenResult gen_maxcut(int n, int m, std::uint64_t seed, bool complete,
                     const std::string& out_dir, const std::string& name = "");
GenResult gen_nae3sat(int n_vars, int n_clauses, std::uint64_t seed,
                      const std::string& out_dir, const std::string& name = "");

struct ResultRow {
    std::string algo;
    std::string instance;
    std::uint64_t seed = 0;
    int p = 0;
    double f = 0.0;
    double ratio = 0.0;
    std::string x_measured;
    std::string x_search;
    double delta = 0.0;
    int rzz_layer = 0;
    long rzz_cum = 0;
    bool fallback = false;
    std::vector<double> params; // serialized to the JSON sidecar, not the CSV
};

/// Executes every (instance, algorithm, sample) cell of the experiment and
/// returns rows in canonical (instance, algo, seed, p) order. Deterministic
/// for a fixed master seed, independent of the thread count.
std::vector<ResultRow> collect_rows(const ExperimentConfig& cfg);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_csv(const std::string& text);

struct RunOutput {
    std::string csv_path;
    std::string params_path;
    std::string meta_path;
};

/// collect_rows + on-disk artifacts: records.csv, params.json and a
/// run_meta.json with the config echo, versions and derived seeds.
RunOutput run_experiment(const ExperimentConfig& cfg);

} // namespace dapo

#endif // DAPO_EXPERIMENT_HPP
