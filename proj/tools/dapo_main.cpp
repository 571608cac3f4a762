#include "dapo/experiment.hpp"
#include "dapo/report.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

// Exit codes: 0 success, 1 usage error, 2 runtime failure.
int main(int argc, char** argv) {
    CLI::App app{"DAPO-QAOA experiment harness: instance generation, algorithm sweeps "
                 "and figure-style reports"};
    app.require_subcommand(1);
    app.fallthrough(); // allow the global flags after a subcommand name

    std::uint64_t master_seed = 1;
    std::string out_dir = "out";
    int threads = 1;
    app.add_option("--seed", master_seed, "master seed for all derived randomness");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads for independent run cells");

    auto* gen = app.add_subcommand("gen", "generate a problem instance plus oracle manifest");
    auto* gen_maxcut_cmd = gen->add_subcommand("maxcut", "random (or complete) MaxCut graph");
    int gn = 10, gm = 30;
    bool gcomplete = false;
    std::string gname;
    gen_maxcut_cmd->add_option("--n", gn, "vertex count");
    gen_maxcut_cmd->add_option("--m", gm, "edge count");
    gen_maxcut_cmd->add_flag("--complete", gcomplete, "emit the complete graph K_n");
    gen_maxcut_cmd->add_option("--name", gname, "output file basename");

    auto* gen_sat_cmd = gen->add_subcommand("nae3sat", "planted-satisfiable NAE3SAT instance");
    int gvars = 10, gclauses = 30;
    std::string gsatname;
    gen_sat_cmd->add_option("--vars", gvars, "variable count");
    gen_sat_cmd->add_option("--clauses", gclauses, "clause count");
    gen_sat_cmd->add_option("--name", gsatname, "output file basename");

    auto* run = app.add_subcommand("run", "run algorithm sweeps, writing CSV + JSON records");
    std::string config_path;
    dapo::ExperimentConfig cfg;
    std::string algos_csv = "dapo,vanilla";
    run->add_option("--config", config_path, "JSON config file (other flags override)");
    run->add_option("--problem", cfg.problem, "maxcut | nae3sat");
    run->add_option("--instance", cfg.instances, "instance file (repeatable)");
    run->add_option("--algos", algos_csv,
                    "comma-separated subset of dapo,vanilla,optimal-phase,random-sparse,"
                    "sparsifier,dropout");
    run->add_option("--pmin", cfg.p_min, "smallest reported depth");
    run->add_option("--pmax", cfg.p_max, "largest depth");
    run->add_option("--max-evals", cfg.optimizer.max_evals, "optimizer evaluation budget");
    run->add_option("--restarts", cfg.optimizer.restarts, "optimizer restarts");
    run->add_option("--epsilon", cfg.epsilon, "DAPO early-stop threshold (0 = full sweep)");
    run->add_option("--shots", cfg.measure_shots, "measurement shots (0 = exact argmax)");
    run->add_option("--samples", cfg.random_sparse_samples, "random-sparse subgraph samples");
    run->add_option("--dropout-rate", cfg.dropout_rate, "per-clause drop probability");
    run->add_option("--dropout-trials", cfg.dropout_trials, "dropout trials (best kept)");

    auto* report = app.add_subcommand("report", "render SVG charts and a text summary");
    std::vector<std::string> csv_files;
    report->add_option("csv", csv_files, "records.csv files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (gen->parsed()) {
            if (gen_maxcut_cmd->parsed()) {
                auto res = dapo::gen_maxcut(gn, gm, master_seed, gcomplete, out_dir, gname);
                std::cout << "wrote " << res.instance_path << "\n"
                          << "wrote " << res.manifest_path << " (C_opt = "
                          << dapo::format_g9(res.c_opt) << ")\n";
            } else if (gen_sat_cmd->parsed()) {
                auto res = dapo::gen_nae3sat(gvars, gclauses, master_seed, out_dir, gsatname);
                std::cout << "wrote " << res.instance_path << "\n"
                          << "wrote " << res.manifest_path << " (witness energy 0)\n";
            } else {
                std::cerr << "gen: choose a subcommand (maxcut | nae3sat)\n";
                return 1;
            }
        } else if (run->parsed()) {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) {
                    std::cerr << "cannot open config " << config_path << "\n";
                    return 2;
                }
                std::ostringstream ss;
                ss << in.rdbuf();
                dapo::ExperimentConfig from_file = dapo::config_from_json(ss.str());
                // flags given on the command line override the file
                from_file.instances.insert(from_file.instances.end(), cfg.instances.begin(),
                                           cfg.instances.end());
                if (run->count("--problem"))
                    from_file.problem = cfg.problem;
                if (run->count("--pmin"))
                    from_file.p_min = cfg.p_min;
                if (run->count("--pmax"))
                    from_file.p_max = cfg.p_max;
                if (run->count("--max-evals"))
                    from_file.optimizer.max_evals = cfg.optimizer.max_evals;
                if (run->count("--restarts"))
                    from_file.optimizer.restarts = cfg.optimizer.restarts;
                if (run->count("--epsilon"))
                    from_file.epsilon = cfg.epsilon;
                if (run->count("--shots"))
                    from_file.measure_shots = cfg.measure_shots;
                if (run->count("--samples"))
                    from_file.random_sparse_samples = cfg.random_sparse_samples;
                if (run->count("--dropout-rate"))
                    from_file.dropout_rate = cfg.dropout_rate;
                if (run->count("--dropout-trials"))
                    from_file.dropout_trials = cfg.dropout_trials;
                if (run->count("--algos"))
                    from_file.algorithms.clear();
                cfg = std::move(from_file);
            }
            if (cfg.algorithms.empty()) {
                std::stringstream ss(algos_csv);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty())
                        cfg.algorithms.push_back(tok);
            }
            if (app.count("--seed"))
                cfg.master_seed = master_seed;
            if (app.count("--out"))
                cfg.out_dir = out_dir;
            if (app.count("--threads"))
                cfg.threads = threads;
            if (cfg.out_dir.empty())
                cfg.out_dir = out_dir;
            if (cfg.instances.empty()) {
                std::cerr << "run: at least one --instance is required\n";
                return 1;
            }
            auto res = dapo::run_experiment(cfg);
            std::cout << "wrote " << res.csv_path << "\n"
                      << "wrote " << res.params_path << "\n"
                      << "wrote " << res.meta_path << "\n";
        } else if (report->parsed()) {
            auto res = dapo::write_report(csv_files, out_dir);
            for (const auto& p : res.svg_paths)
                std::cout << "wrote " << p << "\n";
            std::cout << "wrote " << res.summary_path << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
