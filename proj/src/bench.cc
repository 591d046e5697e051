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

#include "tnd/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "tnd/noise.h"

namespace tnd {

namespace {

struct ChainResult {
    int cls = 0;
    bool timed_out = false;
};

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", p);
    return buf;
}

std::string replace_all(std::string text, const std::string &from, const std::string &to) {
    for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
        text.replace(pos, from.size(), to);
    }
    return text;
}

}  // namespace

DecodeFn make_mwpm_decoder(const Lattice &lattice) {
    return [lattice](const Syndrome &syndrome, const Chain &, Rng &) {
        return DecodeOutcome{mwpm_decode(lattice, syndrome), 0, false};
    };
}

DecodeFn make_neural_decoder(const Lattice &lattice, std::shared_ptr<const RbmParams> params, int n_eq,
                             std::size_t max_sweeps) {
    if (!params) {
        throw std::invalid_argument("make_neural_decoder: null parameters");
    }
    return [lattice, params, n_eq, max_sweeps](const Syndrome &syndrome, const Chain &, Rng &rng) {
        return neural_decode(lattice, *params, syndrome, n_eq, max_sweeps, rng);
    };
}

bool EvalReport::same_outcome(const EvalReport &o) const {
    return decoder == o.decoder && L == o.L && p_err == o.p_err && M == o.M && n_fail == o.n_fail &&
           p_fail == o.p_fail && class_counts == o.class_counts && n_timeout == o.n_timeout && seed == o.seed;
}

EvalReport estimate_pfail(const Lattice &lattice, const DecodeFn &decoder, const std::string &decoder_name,
                          double p_err, std::size_t M, std::uint64_t seed) {
    if (M == 0) {
        throw std::invalid_argument("estimate_pfail: M must be at least 1");
    }
    const ErrorModel model(p_err);
    const auto start = std::chrono::steady_clock::now();

    std::vector<ChainResult> results(M);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < std::int64_t(M); ++k) {
        Rng chain_rng = make_stream(seed, "eval", std::uint64_t(k));
        Rng decode_rng = make_stream(seed, "eval-decode", std::uint64_t(k));
        const Chain error = sample_chain(lattice, model, chain_rng);
        ChainResult &out = results[std::size_t(k)];
        try {
            const DecodeOutcome outcome = decoder(syndrome_of(lattice, error), error, decode_rng);
            if (outcome.timed_out) {
                out.timed_out = true;
            } else {
                out.cls = evaluate_recovery(lattice, error, outcome.recovery).index();
            }
        } catch (const std::exception &) {
            out.timed_out = true;
        }
    }

    EvalReport report;
    report.decoder = decoder_name;
    report.L = lattice.size();
    report.p_err = p_err;
    report.M = M;
    report.seed = seed;
    for (const ChainResult &r : results) {
        if (r.timed_out) {
            ++report.n_timeout;
        } else {
            ++report.class_counts[std::size_t(r.cls)];
        }
    }
    report.n_fail = M - report.class_counts[0];
    report.p_fail = double(report.n_fail) / double(M);
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

EvalReport homology_histogram(const Lattice &lattice, const RbmParams &params, double p_err, std::size_t M,
                              std::uint64_t seed, int n_eq, std::size_t max_sweeps) {
    auto shared = std::make_shared<const RbmParams>(params);
    return estimate_pfail(lattice, make_neural_decoder(lattice, shared, n_eq, max_sweeps), "neural", p_err, M,
                          seed);
}

const char *report_csv_header() {
    return "decoder,L,p_err,M,n_fail,p_fail,n_h0,n_z1,n_z2,n_z1z2,n_timeout,seed,wall_time_s";
}

std::string to_csv_row(const EvalReport &r) {
    std::ostringstream out;
    out.precision(10);
    out << r.decoder << ',' << r.L << ',' << r.p_err << ',' << r.M << ',' << r.n_fail << ',' << r.p_fail;
    for (std::size_t n : r.class_counts) {
        out << ',' << n;
    }
    out << ',' << r.n_timeout << ',' << r.seed << ',' << r.wall_time_s;
    return out.str();
}

void write_reports_csv(std::ostream &out, std::span<const EvalReport> reports) {
    out << report_csv_header() << '\n';
    for (const EvalReport &r : reports) {
        out << to_csv_row(r) << '\n';
    }
}

std::string model_path_for(const std::string &pattern, int L, double p_err) {
    return replace_all(replace_all(pattern, "{L}", std::to_string(L)), "{p}", format_p(p_err));
}

std::vector<CompareRow> compare_decoders(const CompareConfig &config) {
    const Lattice lattice(config.L);
    std::vector<std::string> decoders = config.decoders;
    std::sort(decoders.begin(), decoders.end());
    std::vector<double> grid = config.p_grid;
    std::sort(grid.begin(), grid.end());

    std::vector<CompareRow> rows;
    for (const std::string &name : decoders) {
        for (double p : grid) {
            CompareRow row{name, config.L, p, std::nullopt, {}};
            try {
                DecodeFn decoder;
                if (name == "mwpm") {
                    decoder = make_mwpm_decoder(lattice);
                } else if (name == "neural") {
                    ModelFile model = load_model(model_path_for(config.model_pattern, config.L, p));
                    if (model.L != config.L) {
                        throw std::invalid_argument("model lattice size does not match L");
                    }
                    decoder = make_neural_decoder(lattice, std::make_shared<const RbmParams>(std::move(model.params)),
                                                  config.n_eq, config.max_sweeps);
                } else {
                    throw std::invalid_argument("unknown decoder '" + name + "'");
                }
                row.report = estimate_pfail(lattice, decoder, name, p, config.M, config.seed);
            } catch (const std::exception &ex) {
                row.error = ex.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_compare_csv(std::ostream &out, std::span<const CompareRow> rows) {
    out << report_csv_header() << '\n';
    for (const CompareRow &row : rows) {
        if (row.report) {
            out << to_csv_row(*row.report) << '\n';
        } else {
            out << row.decoder << ',' << row.L << ',' << row.p_err << ",,,,,,,,,,\n";
        }
    }
}

}  // namespace tnd
