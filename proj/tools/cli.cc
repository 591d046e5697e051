// Copyright 2026 The toric-rbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tnd/bench.h"
#include "tnd/binary_io.h"
#include "tnd/noise.h"
#include "tnd/training.h"

namespace tnd {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::set<std::string> kConfigKeys{
    "eta", "batch_size", "init_width", "cd_k", "l2", "n_h", "epochs", "n_eq",       // training
    "grid", "validation_size", "max_sweeps",                                        // grid search
    "L", "p_grid", "M", "seed", "decoders", "model_pattern",                        // comparison
};

json read_config(const std::string &path) {
    if (path.empty()) {
        return json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path);
    }
    json config = json::parse(in);
    if (!config.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    for (const auto &item : config.items()) {
        if (!kConfigKeys.contains(item.key())) {
            throw UsageError("unknown config key '" + item.key() + "'");
        }
    }
    return config;
}

template <typename T>
void take(const json &config, const char *key, T &value) {
    if (!config.contains(key)) {
        return;
    }
    try {
        value = config.at(key).get<T>();
    } catch (const json::exception &) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
    }
}

template <typename T>
void take(const std::optional<T> &flag, T &value) {
    if (flag) {
        value = *flag;
    }
}

void ensure_parent(const std::string &path) {
    const fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
}

std::ofstream open_output(const std::string &path) {
    ensure_parent(path);
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    return out;
}

struct HyperFlags {
    std::optional<double> eta;
    std::optional<std::size_t> batch_size;
    std::optional<double> init_width;
    std::optional<int> cd_k;
    std::optional<double> l2;
    std::optional<int> n_h;
    std::optional<int> epochs;
    std::optional<int> n_eq;

    void attach(CLI::App *cmd) {
        cmd->add_option("--eta", eta, "Learning rate");
        cmd->add_option("--batch-size", batch_size, "Minibatch size");
        cmd->add_option("--init-width", init_width, "Initial weight range width");
        cmd->add_option("--cd-k", cd_k, "Gibbs steps per CD update");
        cmd->add_option("--l2", l2, "Weight decay");
        cmd->add_option("--n-h", n_h, "Hidden units");
        cmd->add_option("--epochs", epochs, "Training epochs");
        cmd->add_option("--n-eq", n_eq, "Equilibration sweeps when decoding");
    }

    Hyperparams resolve(const json &config) const {
        Hyperparams h;
        take(config, "eta", h.eta);
        take(config, "batch_size", h.batch_size);
        take(config, "init_width", h.init_width);
        take(config, "cd_k", h.cd_k);
        take(config, "l2", h.l2);
        take(config, "n_h", h.n_h);
        take(config, "epochs", h.epochs);
        take(config, "n_eq", h.n_eq);
        take(eta, h.eta);
        take(batch_size, h.batch_size);
        take(init_width, h.init_width);
        take(cd_k, h.cd_k);
        take(l2, h.l2);
        take(n_h, h.n_h);
        take(epochs, h.epochs);
        take(n_eq, h.n_eq);
        return h;
    }
};

// Cartesian product of the "grid" config object, nested in field order.
std::vector<Hyperparams> grid_from_config(const json &axes, const Hyperparams &base) {
    static const std::vector<std::string> fields{"n_h", "eta", "cd_k", "l2", "batch_size", "init_width", "epochs",
                                                 "n_eq"};
    if (!axes.is_object()) {
        throw UsageError("config key 'grid' must be an object of arrays");
    }
    for (const auto &item : axes.items()) {
        if (std::find(fields.begin(), fields.end(), item.key()) == fields.end()) {
            throw UsageError("unknown grid key '" + item.key() + "'");
        }
        if (!item.value().is_array() || item.value().empty()) {
            throw UsageError("grid key '" + item.key() + "' must be a non-empty array");
        }
    }
    std::vector<Hyperparams> grid{base};
    for (const std::string &field : fields) {
        if (!axes.contains(field)) {
            continue;
        }
        std::vector<Hyperparams> next;
        for (const Hyperparams &h : grid) {
            for (const json &value : axes.at(field)) {
                Hyperparams point = h;
                const json one{{field, value}};
                take(one, "n_h", point.n_h);
                take(one, "eta", point.eta);
                take(one, "cd_k", point.cd_k);
                take(one, "l2", point.l2);
                take(one, "batch_size", point.batch_size);
                take(one, "init_width", point.init_width);
                take(one, "epochs", point.epochs);
                take(one, "n_eq", point.n_eq);
                next.push_back(point);
            }
        }
        grid = std::move(next);
    }
    return grid;
}

void write_grid_report(std::ostream &out, const GridSearchResult &result) {
    out << "index,n_h,eta,cd_k,l2,batch_size,init_width,epochs,n_eq,p_fail,n_timeout,selected\n";
    out.precision(10);
    for (std::size_t i = 0; i < result.scores.size(); ++i) {
        const GridPointScore &s = result.scores[i];
        const Hyperparams &h = s.hyper;
        out << i << ',' << h.n_h << ',' << h.eta << ',' << h.cd_k << ',' << h.l2 << ',' << h.batch_size << ','
            << h.init_width << ',' << h.epochs << ',' << h.n_eq << ',' << s.p_fail << ',' << s.n_timeout << ','
            << (i == result.best_index ? 1 : 0) << '\n';
    }
}

// Lattice size from the model, cross-checked against an explicit --L.
int model_lattice(const ModelFile &model, std::optional<int> flag) {
    if (flag && *flag != model.L) {
        throw std::invalid_argument("--L " + std::to_string(*flag) + " does not match the model (L=" +
                                    std::to_string(model.L) + ")");
    }
    return model.L;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Toric-code decoding with restricted Boltzmann machines", "tnd"};
    app.require_subcommand(1);

    // gen
    int gen_L = 0;
    double gen_p = 0.0;
    std::size_t gen_M = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App *gen = app.add_subcommand("gen", "Sample a training dataset");
    gen->add_option("--L", gen_L, "Lattice size")->required();
    gen->add_option("--p", gen_p, "Error probability")->required();
    gen->add_option("--M", gen_M, "Number of chains")->required();
    gen->add_option("--seed", gen_seed, "Seed");
    gen->add_option("--out", gen_out, "Dataset file")->required();

    // train
    std::string train_data;
    std::string train_config;
    std::optional<std::uint64_t> train_seed;
    std::string train_out;
    std::string train_log;
    HyperFlags train_flags;
    CLI::App *train_cmd = app.add_subcommand("train", "Train a machine on a dataset");
    train_cmd->add_option("--data", train_data, "Dataset file")->required();
    train_cmd->add_option("--config", train_config, "JSON config");
    train_cmd->add_option("--seed", train_seed, "Seed");
    train_cmd->add_option("--out", train_out, "Model file")->required();
    train_cmd->add_option("--log", train_log, "Per-epoch CSV log");
    train_flags.attach(train_cmd);

    // grid
    std::string grid_data;
    std::string grid_config;
    std::optional<std::uint64_t> grid_seed;
    std::string grid_out;
    std::string grid_report;
    std::optional<std::size_t> grid_validation;
    std::optional<std::size_t> grid_max_sweeps;
    HyperFlags grid_flags;
    CLI::App *grid = app.add_subcommand("grid", "Grid search over hyper-parameters");
    grid->add_option("--data", grid_data, "Dataset file")->required();
    grid->add_option("--config", grid_config, "JSON config");
    grid->add_option("--seed", grid_seed, "Seed");
    grid->add_option("--out", grid_out, "Model file for the best point")->required();
    grid->add_option("--report", grid_report, "Per-point CSV")->required();
    grid->add_option("--validation-size", grid_validation, "Validation chains (default 1000)");
    grid->add_option("--max-sweeps", grid_max_sweeps, "Decode budget per validation chain");
    grid_flags.attach(grid);

    // eval
    std::string eval_decoder;
    std::string eval_model;
    std::optional<int> eval_L;
    double eval_p = 0.0;
    std::size_t eval_M = 10000;
    std::uint64_t eval_seed = 1;
    std::string eval_out;
    int eval_n_eq = kDefaultEquilibrationSweeps;
    std::size_t eval_max_sweeps = kDefaultMaxSweeps;
    CLI::App *eval = app.add_subcommand("eval", "Estimate the logical failure probability");
    eval->add_option("--decoder", eval_decoder, "neural or mwpm")
        ->required()
        ->check(CLI::IsMember({"neural", "mwpm"}));
    eval->add_option("--model", eval_model, "Model file (neural)");
    eval->add_option("--L", eval_L, "Lattice size");
    eval->add_option("--p", eval_p, "Error probability")->required();
    eval->add_option("--M", eval_M, "Test chains");
    eval->add_option("--seed", eval_seed, "Seed");
    eval->add_option("--out", eval_out, "Report CSV")->required();
    eval->add_option("--n-eq", eval_n_eq, "Equilibration sweeps");
    eval->add_option("--max-sweeps", eval_max_sweeps, "Decode budget");

    // compare
    std::string cmp_config;
    std::string cmp_out;
    std::optional<int> cmp_L;
    std::optional<std::size_t> cmp_M;
    std::optional<std::uint64_t> cmp_seed;
    std::optional<std::string> cmp_pattern;
    std::optional<std::vector<std::string>> cmp_decoders;
    std::optional<std::vector<double>> cmp_grid;
    CLI::App *compare = app.add_subcommand("compare", "Compare decoders over a grid of error rates");
    compare->add_option("--config", cmp_config, "JSON config");
    compare->add_option("--out", cmp_out, "Report CSV")->required();
    compare->add_option("--L", cmp_L, "Lattice size");
    compare->add_option("--M", cmp_M, "Test chains per point");
    compare->add_option("--seed", cmp_seed, "Seed");
    compare->add_option("--model-pattern", cmp_pattern, "Model path with {L} and {p}");
    compare->add_option("--decoders", cmp_decoders, "Decoders to run");
    compare->add_option("--p-grid", cmp_grid, "Error probabilities");

    // hist
    std::string hist_model;
    std::optional<int> hist_L;
    std::optional<double> hist_p;
    std::size_t hist_M = 10000;
    std::uint64_t hist_seed = 1;
    std::string hist_out;
    int hist_n_eq = kDefaultEquilibrationSweeps;
    std::size_t hist_max_sweeps = kDefaultMaxSweeps;
    CLI::App *hist = app.add_subcommand("hist", "Homology-class histogram of the neural decoder");
    hist->add_option("--model", hist_model, "Model file")->required();
    hist->add_option("--L", hist_L, "Lattice size");
    hist->add_option("--p", hist_p, "Error probability (default: the model's)");
    hist->add_option("--M", hist_M, "Test chains");
    hist->add_option("--seed", hist_seed, "Seed");
    hist->add_option("--out", hist_out, "Report CSV")->required();
    hist->add_option("--n-eq", hist_n_eq, "Equilibration sweeps");
    hist->add_option("--max-sweeps", hist_max_sweeps, "Decode budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            const Lattice lattice(gen_L);
            const Dataset ds = generate_dataset(lattice, ErrorModel(gen_p), gen_M, gen_seed);
            ensure_parent(gen_out);
            save_dataset(ds, gen_out);
            out << "wrote " << ds.chains.size() << " chains (L=" << gen_L << ", p=" << gen_p << ") to " << gen_out
                << '\n';
        } else if (*train_cmd) {
            const json config = read_config(train_config);
            const Hyperparams hyper = train_flags.resolve(config);
            std::uint64_t seed = 1;
            take(config, "seed", seed);
            take(train_seed, seed);
            const Dataset ds = load_dataset(train_data);
            EpochCallback cb;
            std::optional<TrainingLogWriter> log;
            if (!train_log.empty()) {
                ensure_parent(train_log);
                log.emplace(train_log);
                cb = [&log](const EpochLog &l, const RbmParams &p) { (*log)(l, p); };
            }
            ModelFile model{ds.L, ds.p_err, train(ds, hyper, seed, cb)};
            ensure_parent(train_out);
            save_model(model, train_out);
            out << "trained n_h=" << hyper.n_h << " for " << hyper.epochs << " epochs on " << ds.chains.size()
                << " chains; wrote " << train_out << '\n';
        } else if (*grid) {
            const json config = read_config(grid_config);
            const Hyperparams base = grid_flags.resolve(config);
            std::uint64_t seed = 1;
            take(config, "seed", seed);
            take(grid_seed, seed);
            std::size_t n_validation = 1000;
            take(config, "validation_size", n_validation);
            take(grid_validation, n_validation);
            GridSearchOptions options;
            take(config, "max_sweeps", options.max_sweeps);
            take(grid_max_sweeps, options.max_sweeps);

            const Dataset ds = load_dataset(grid_data);
            const std::vector<Hyperparams> points =
                config.contains("grid") ? grid_from_config(config.at("grid"), base) : default_grid(ds.L);
            Rng validation_seed = make_stream(seed, "validation-set");
            const Dataset validation =
                generate_dataset(Lattice(ds.L), ErrorModel(ds.p_err), n_validation, validation_seed());
            err << "grid search over " << points.size() << " points\n";
            const GridSearchResult result = grid_search(ds, points, validation.chains, seed, options);
            std::ofstream report = open_output(grid_report);
            write_grid_report(report, result);
            ensure_parent(grid_out);
            save_model(ModelFile{ds.L, ds.p_err, result.params}, grid_out);
            out << "best point " << result.best_index << " (p_fail " << result.scores[result.best_index].p_fail
                << "); wrote " << grid_out << '\n';
        } else if (*eval) {
            DecodeFn decoder;
            int L = 0;
            if (eval_decoder == "neural") {
                if (eval_model.empty()) {
                    throw UsageError("--model is required for the neural decoder");
                }
                ModelFile model = load_model(eval_model);
                L = model_lattice(model, eval_L);
                decoder = make_neural_decoder(Lattice(L), std::make_shared<const RbmParams>(std::move(model.params)),
                                              eval_n_eq, eval_max_sweeps);
            } else {
                if (!eval_L) {
                    throw UsageError("--L is required for the mwpm decoder");
                }
                L = *eval_L;
                decoder = make_mwpm_decoder(Lattice(L));
            }
            const EvalReport report = estimate_pfail(Lattice(L), decoder, eval_decoder, eval_p, eval_M, eval_seed);
            std::ofstream csv = open_output(eval_out);
            const std::vector<EvalReport> reports{report};
            write_reports_csv(csv, reports);
            out << to_csv_row(report) << '\n';
        } else if (*compare) {
            const json config = read_config(cmp_config);
            CompareConfig cfg;
            cfg.p_grid = default_error_grid();
            take(config, "L", cfg.L);
            take(config, "p_grid", cfg.p_grid);
            take(config, "M", cfg.M);
            take(config, "seed", cfg.seed);
            take(config, "decoders", cfg.decoders);
            take(config, "model_pattern", cfg.model_pattern);
            take(config, "n_eq", cfg.n_eq);
            take(config, "max_sweeps", cfg.max_sweeps);
            take(cmp_L, cfg.L);
            take(cmp_M, cfg.M);
            take(cmp_seed, cfg.seed);
            take(cmp_pattern, cfg.model_pattern);
            take(cmp_decoders, cfg.decoders);
            take(cmp_grid, cfg.p_grid);
            const std::vector<CompareRow> rows = compare_decoders(cfg);
            std::ofstream csv = open_output(cmp_out);
            write_compare_csv(csv, rows);
            std::size_t failed = 0;
            for (const CompareRow &row : rows) {
                if (!row.report) {
                    ++failed;
                    err << "warning: " << row.decoder << " at p=" << row.p_err << ": " << row.error << '\n';
                }
            }
            out << "wrote " << rows.size() << " rows (" << failed << " failed) to " << cmp_out << '\n';
        } else if (*hist) {
            ModelFile model = load_model(hist_model);
            const int L = model_lattice(model, hist_L);
            const double p = hist_p.value_or(model.p_err);
            const EvalReport report =
                homology_histogram(Lattice(L), model.params, p, hist_M, hist_seed, hist_n_eq, hist_max_sweeps);
            std::ofstream csv = open_output(hist_out);
            const std::vector<EvalReport> reports{report};
            write_reports_csv(csv, reports);
            out << to_csv_row(report) << '\n';
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const FormatError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const json::exception &e) {
        err << "error: config: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::logic_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace tnd
