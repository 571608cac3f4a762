#include "dapo/experiment.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace fs = std::filesystem;
using nlohmann::json;

namespace dapo {

namespace {

// Oracle recomputation bound when an instance arrives without a manifest.
constexpr int kOracleMaxVertices = 22;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

std::string manifest_path_for(const std::string& instance_path) {
    fs::path p(instance_path);
    return (p.parent_path() / (p.stem().string() + ".manifest.json")).string();
}

struct Cell {
    std::string algo;
    std::size_t instance_idx = 0;
    std::uint64_t seed = 0;
    int sample = 0;
};

const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> algos = {"dapo",          "vanilla",
                                                   "optimal-phase", "random-sparse",
                                                   "sparsifier",    "dropout"};
    return algos;
}

void validate_algorithm(const std::string& algo, const std::string& problem) {
    const auto& known = known_algorithms();
    if (std::find(known.begin(), known.end(), algo) == known.end())
        throw std::invalid_argument("unknown algorithm `" + algo + "`");
    const bool maxcut = problem == "maxcut";
    if (maxcut && algo == "dropout")
        throw std::invalid_argument("dropout applies to nae3sat instances only");
    if (!maxcut && (algo == "optimal-phase" || algo == "random-sparse" || algo == "sparsifier"))
        throw std::invalid_argument("algorithm `" + algo + "` applies to maxcut instances only");
}

int sparsifier_k(const InstanceData& inst) {
    if (!(inst.c_opt > 0.0))
        throw std::runtime_error("instance " + inst.name +
                                 ": sparse baselines need the oracle optimum (no manifest and "
                                 "graph too large to brute-force)");
    const int m = inst.graph->n_edges();
    return std::clamp(static_cast<int>(std::llround(inst.c_opt)), 1, m);
}

std::vector<ResultRow> records_to_rows(const std::vector<RunRecord>& records,
                                       const std::string& algo, const std::string& instance,
                                       std::uint64_t seed, int p_min, int p_max) {
    std::vector<ResultRow> rows;
    for (const auto& rec : records) {
        if (rec.p < p_min || rec.p > p_max)
            continue;
        ResultRow row;
        row.algo = algo;
        row.instance = instance;
        row.seed = seed;
        row.p = rec.p;
        row.f = rec.best_value;
        row.ratio = rec.ratio;
        row.x_measured = rec.x_measured.to_string();
        row.x_search = rec.x_after_search.to_string();
        row.delta = rec.search_delta;
        row.rzz_layer = rec.rzz_this_layer;
        row.rzz_cum = rec.rzz_cumulative;
        row.fallback = rec.fallback_used;
        row.params = rec.params;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> run_cell(const Cell& cell, const InstanceData& inst,
                                const ExperimentConfig& cfg) {
    ConvergenceConfig ccfg;
    ccfg.max_layers = cfg.p_max;
    ccfg.epsilon = cfg.epsilon;
    ccfg.optimizer = cfg.optimizer;
    ccfg.optimizer.seed = cell.seed;
    ccfg.measure_shots = cfg.measure_shots;

    std::vector<RunRecord> records;
    if (cell.algo == "dapo") {
        const DiagonalHamiltonian problem =
            inst.graph ? maxcut_hamiltonian(*inst.graph) : nae3sat_hamiltonian(*inst.sat);
        records = dapo_run(problem, ccfg, inst.c_opt);
    } else if (cell.algo == "vanilla") {
        const DiagonalHamiltonian problem =
            inst.graph ? maxcut_hamiltonian(*inst.graph) : nae3sat_hamiltonian(*inst.sat);
        records = vanilla_run(problem, cfg.p_max, ccfg, inst.c_opt);
    } else if (cell.algo == "optimal-phase") {
        records = optimal_phase_run(*inst.graph, cfg.p_max, ccfg);
    } else if (cell.algo == "random-sparse") {
        SparsifierSpec spec{SparsifyMethod::uniform_random, sparsifier_k(inst), cell.seed};
        records = fixed_sparse_run(*inst.graph, sparsify_graph(*inst.graph, spec), cfg.p_max,
                                   ccfg, inst.c_opt);
    } else if (cell.algo == "sparsifier-uniform" || cell.algo == "sparsifier-degree" ||
               cell.algo == "sparsifier-tree") {
        SparsifyMethod method = SparsifyMethod::uniform_random;
        if (cell.algo == "sparsifier-degree")
            method = SparsifyMethod::degree_proportional;
        else if (cell.algo == "sparsifier-tree")
            method = SparsifyMethod::spanning_tree_first;
        SparsifierSpec spec{method, sparsifier_k(inst), cell.seed};
        records = fixed_sparse_run(*inst.graph, sparsify_graph(*inst.graph, spec), cfg.p_max,
                                   ccfg, inst.c_opt);
    } else if (cell.algo == "dropout") {
        DropoutSpec spec{cfg.dropout_rate, cfg.dropout_trials, cell.seed};
        records = dropout_run(*inst.sat, spec, cfg.p_max, ccfg).records;
    } else {
        throw std::logic_error("run_cell: unexpected algorithm " + cell.algo);
    }
    return records_to_rows(records, cell.algo, inst.name, cell.seed, cfg.p_min, cfg.p_max);
}

json config_to_json_obj(const ExperimentConfig& cfg) {
    json j;
    j["problem"] = cfg.problem;
    j["instances"] = cfg.instances;
    j["algorithms"] = cfg.algorithms;
    j["p_min"] = cfg.p_min;
    j["p_max"] = cfg.p_max;
    j["optimizer"] = {{"max_evals", cfg.optimizer.max_evals},
                      {"grad_step", cfg.optimizer.grad_step},
                      {"grad_tol", cfg.optimizer.grad_tol},
                      {"restarts", cfg.optimizer.restarts}};
    j["epsilon"] = cfg.epsilon;
    j["measure_shots"] = cfg.measure_shots;
    j["random_sparse_samples"] = cfg.random_sparse_samples;
    j["dropout_rate"] = cfg.dropout_rate;
    j["dropout_trials"] = cfg.dropout_trials;
    j["out_dir"] = cfg.out_dir;
    j["master_seed"] = cfg.master_seed;
    j["threads"] = cfg.threads;
    return j;
}

} // namespace

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

Graph random_graph(int n, int m, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("random_graph: n must be >= 1");
    const long max_edges = static_cast<long>(n) * (n - 1) / 2;
    if (m < 0 || m > max_edges)
        throw std::invalid_argument("random_graph: m=" + std::to_string(m) +
                                    " infeasible for n=" + std::to_string(n));
    std::vector<Edge> all;
    all.reserve(static_cast<std::size_t>(max_edges));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all.push_back({i, j, 1.0});
    std::mt19937_64 rng(seed);
    for (std::size_t k = all.size(); k > 1; --k)
        std::swap(all[k - 1], all[rng_below(rng, k)]);
    all.resize(static_cast<std::size_t>(m));
    return Graph(n, std::move(all));
}

ExperimentConfig config_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    ExperimentConfig cfg;
    cfg.problem = j.value("problem", cfg.problem);
    if (j.contains("instances"))
        cfg.instances = j["instances"].get<std::vector<std::string>>();
    if (j.contains("algorithms"))
        cfg.algorithms = j["algorithms"].get<std::vector<std::string>>();
    cfg.p_min = j.value("p_min", cfg.p_min);
    cfg.p_max = j.value("p_max", cfg.p_max);
    if (j.contains("optimizer")) {
        const auto& o = j["optimizer"];
        cfg.optimizer.max_evals = o.value("max_evals", cfg.optimizer.max_evals);
        cfg.optimizer.grad_step = o.value("grad_step", cfg.optimizer.grad_step);
        cfg.optimizer.grad_tol = o.value("grad_tol", cfg.optimizer.grad_tol);
        cfg.optimizer.restarts = o.value("restarts", cfg.optimizer.restarts);
    }
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    cfg.measure_shots = j.value("measure_shots", cfg.measure_shots);
    cfg.random_sparse_samples = j.value("random_sparse_samples", cfg.random_sparse_samples);
    cfg.dropout_rate = j.value("dropout_rate", cfg.dropout_rate);
    cfg.dropout_trials = j.value("dropout_trials", cfg.dropout_trials);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.threads = j.value("threads", cfg.threads);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    return config_to_json_obj(cfg).dump(2) + "\n";
}

InstanceData load_instance(const std::string& path, const std::string& problem) {
    InstanceData data;
    data.name = stem_of(path);
    data.path = path;
    const std::string text = read_file(path);
    if (problem == "maxcut") {
        data.graph = parse_graph(text);
    } else if (problem == "nae3sat") {
        data.sat = parse_cnf(text);
    } else {
        throw std::invalid_argument("unknown problem `" + problem + "`");
    }
    const std::string mpath = manifest_path_for(path);
    if (fs::exists(mpath)) {
        json m = json::parse(read_file(mpath));
        data.c_opt = m.value("c_opt", 0.0);
        if (m.contains("x_opt"))
            data.x_opt = Assignment::from_string(m["x_opt"].get<std::string>());
        if (m.contains("witness"))
            data.x_opt = Assignment::from_string(m["witness"].get<std::string>());
    } else if (data.graph && data.graph->n_vertices() <= kOracleMaxVertices) {
        MaxCutSolution sol = brute_force_max_cut(*data.graph);
        data.c_opt = sol.value;
        data.x_opt = sol.assignment;
    }
    return data;
}

GenResult gen_maxcut(int n, int m, std::uint64_t seed, bool complete,
                     const std::string& out_dir, const std::string& name) {
    Graph g = complete ? Graph::complete(n) : random_graph(n, m, seed);
    std::string base = name;
    if (base.empty()) {
        base = complete ? "maxcut_k" + std::to_string(n)
                        : "maxcut_n" + std::to_string(n) + "_m" + std::to_string(m) + "_s" +
                              std::to_string(seed);
    }
    fs::create_directories(out_dir);
    const std::string ipath = (fs::path(out_dir) / (base + ".graph")).string();
    std::ostringstream body;
    body << g.n_vertices() << ' ' << g.n_edges() << '\n';
    for (const auto& e : g.edges()) {
        body << e.i << ' ' << e.j;
        if (e.weight != 1.0)
            body << ' ' << format_g9(e.weight);
        body << '\n';
    }
    write_file(ipath, body.str());

    MaxCutSolution sol = brute_force_max_cut(g);
    json manifest;
    manifest["schema"] = "dapo.instance.v1";
    manifest["type"] = "maxcut";
    manifest["n"] = g.n_vertices();
    manifest["m"] = g.n_edges();
    manifest["seed"] = seed;
    manifest["complete"] = complete;
    manifest["c_opt"] = sol.value;
    manifest["x_opt"] = sol.assignment.to_string();
    const std::string mpath = (fs::path(out_dir) / (base + ".manifest.json")).string();
    write_file(mpath, manifest.dump(2) + "\n");
    return {ipath, mpath, sol.value};
}

GenResult gen_nae3sat(int n_vars, int n_clauses, std::uint64_t seed,
                      const std::string& out_dir, const std::string& name) {
    PlantedInstance planted = plant_random_nae3sat(n_vars, n_clauses, seed);
    if (count_nae_violations(planted.instance, planted.witness) != 0)
        throw std::logic_error("gen_nae3sat: planted witness violates a clause");
    std::string base = name;
    if (base.empty())
        base = "nae3sat_v" + std::to_string(n_vars) + "_c" + std::to_string(n_clauses) + "_s" +
               std::to_string(seed);
    fs::create_directories(out_dir);
    const std::string ipath = (fs::path(out_dir) / (base + ".cnf")).string();
    write_file(ipath, to_cnf(planted.instance));

    json manifest;
    manifest["schema"] = "dapo.instance.v1";
    manifest["type"] = "nae3sat";
    manifest["vars"] = n_vars;
    manifest["clauses"] = n_clauses;
    manifest["seed"] = seed;
    manifest["witness"] = planted.witness.to_string();
    manifest["witness_energy"] = 0.0;
    const std::string mpath = (fs::path(out_dir) / (base + ".manifest.json")).string();
    write_file(mpath, manifest.dump(2) + "\n");
    return {ipath, mpath, 0.0};
}

std::vector<ResultRow> collect_rows(const ExperimentConfig& cfg) {
    if (cfg.p_min < 1 || cfg.p_max < cfg.p_min)
        throw std::invalid_argument("collect_rows: require 1 <= p_min <= p_max");
    if (cfg.algorithms.empty())
        throw std::invalid_argument("collect_rows: algorithms must be nonempty");
    if (cfg.instances.empty())
        throw std::invalid_argument("collect_rows: instances must be nonempty");
    for (const auto& algo : cfg.algorithms)
        validate_algorithm(algo, cfg.problem);

    std::vector<InstanceData> instances;
    instances.reserve(cfg.instances.size());
    for (const auto& path : cfg.instances)
        instances.push_back(load_instance(path, cfg.problem));

    std::vector<Cell> cells;
    for (std::size_t ii = 0; ii < instances.size(); ++ii) {
        const std::string& iname = instances[ii].name;
        for (const auto& algo : cfg.algorithms) {
            auto add_cell = [&](const std::string& label, int sample) {
                cells.push_back({label, ii,
                                 derive_seed(cfg.master_seed, label + ":" + iname,
                                             static_cast<std::uint64_t>(sample)),
                                 sample});
            };
            if (algo == "random-sparse") {
                for (int s = 0; s < cfg.random_sparse_samples; ++s)
                    add_cell(algo, s);
            } else if (algo == "sparsifier") {
                add_cell("sparsifier-uniform", 0);
                add_cell("sparsifier-degree", 0);
                add_cell("sparsifier-tree", 0);
            } else {
                add_cell(algo, 0);
            }
        }
    }

    std::vector<std::vector<ResultRow>> cell_rows(cells.size());
    const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells.size())));
    if (workers == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            cell_rows[c] = run_cell(cells[c], instances[cells[c].instance_idx], cfg);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= cells.size())
                    return;
                try {
                    cell_rows[c] = run_cell(cells[c], instances[cells[c].instance_idx], cfg);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }

    std::vector<ResultRow> rows;
    for (auto& chunk : cell_rows)
        for (auto& row : chunk)
            rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.instance, a.algo, a.seed, a.p) <
               std::tie(b.instance, b.algo, b.seed, b.p);
    });
    return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "# schema: " << kCsvSchema << '\n' << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.algo << ',' << r.instance << ',' << r.seed << ',' << r.p << ','
            << format_g9(r.f) << ',' << format_g9(r.ratio) << ',' << r.x_measured << ','
            << r.x_search << ',' << format_g9(r.delta) << ',' << r.rzz_layer << ','
            << r.rzz_cum << ',' << (r.fallback ? 1 : 0) << '\n';
    }
    return out.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("records csv: empty input");
    const std::string expected_schema = std::string("# schema: ") + kCsvSchema;
    if (line != expected_schema)
        throw ParseError("records csv: unknown schema line `" + line + "`, expected `" +
                         expected_schema + "`");
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ParseError("records csv: header mismatch, expected `" + std::string(kCsvHeader) +
                         "`");
    std::vector<ResultRow> rows;
    int line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        if (fields.size() != 12)
            throw ParseError("records csv, line " + std::to_string(line_no) + ": expected 12 " +
                             "columns, got " + std::to_string(fields.size()));
        try {
            ResultRow r;
            r.algo = fields[0];
            r.instance = fields[1];
            r.seed = std::stoull(fields[2]);
            r.p = std::stoi(fields[3]);
            r.f = std::stod(fields[4]);
            r.ratio = std::stod(fields[5]);
            r.x_measured = fields[6];
            r.x_search = fields[7];
            r.delta = std::stod(fields[8]);
            r.rzz_layer = std::stoi(fields[9]);
            r.rzz_cum = std::stol(fields[10]);
            r.fallback = fields[11] == "1";
            rows.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw ParseError("records csv, line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

RunOutput run_experiment(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows = collect_rows(cfg);
    fs::create_directories(cfg.out_dir);

    RunOutput out;
    out.csv_path = (fs::path(cfg.out_dir) / "records.csv").string();
    write_file(out.csv_path, rows_to_csv(rows));

    json params = json::array();
    for (const auto& r : rows) {
        json entry;
        entry["algo"] = r.algo;
        entry["instance"] = r.instance;
        entry["seed"] = r.seed;
        entry["p"] = r.p;
        entry["params"] = r.params;
        params.push_back(std::move(entry));
    }
    out.params_path = (fs::path(cfg.out_dir) / "params.json").string();
    write_file(out.params_path, params.dump(2) + "\n");

    json meta;
    meta["schema"] = "dapo.meta.v1";
    meta["version"] = kVersion;
    meta["csv_schema"] = kCsvSchema;
    meta["config"] = config_to_json_obj(cfg);
    json seeds = json::array();
    for (const auto& r : rows)
        if (r.p == cfg.p_min)
            seeds.push_back({{"algo", r.algo}, {"instance", r.instance}, {"seed", r.seed}});
    meta["cell_seeds"] = std::move(seeds);
    out.meta_path = (fs::path(cfg.out_dir) / "run_meta.json").string();
    write_file(out.meta_path, meta.dump(2) + "\n");
    return out;
}

} // namespace dapo
