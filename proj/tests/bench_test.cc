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

#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tnd/noise.h"
#include "tnd/training.h"

using namespace tnd;

namespace {

DecodeFn identity_decoder() {
    return [](const Syndrome &, const Chain &truth, Rng &) { return DecodeOutcome{truth, 0, false}; };
}

DecodeFn logical_flip_decoder(const Lattice &lattice) {
    const Chain z1 = logical_representative(lattice, HomologyClass{true, false});
    return [z1](const Syndrome &, const Chain &truth, Rng &) { return DecodeOutcome{compose(truth, z1), 0, false}; };
}

void expect_consistent(const EvalReport &r) {
    EXPECT_EQ(r.class_counts[0] + r.class_counts[1] + r.class_counts[2] + r.class_counts[3] + r.n_timeout, r.M);
    EXPECT_EQ(r.n_fail, r.M - r.class_counts[0]);
    EXPECT_DOUBLE_EQ(r.p_fail, double(r.n_fail) / double(r.M));
    EXPECT_GE(r.p_fail, 0.0);
    EXPECT_LE(r.p_fail, 1.0);
}

// Exact failure probability of a deterministic decoder and of the optimal
// decoder, summing over every error chain of a small lattice.
struct ExactFailure {
    double decoder = 0.0;
    double optimal = 0.0;
};

ExactFailure exact_failure_l2(const DecodeFn &decoder, double p) {
    const Lattice lattice(2);
    const auto table = oracle::enumerate_cycles(lattice);
    ExactFailure out;
    Rng unused = make_stream(0, "unused");
    for (std::uint64_t m = 0; m < 256; ++m) {
        const Chain e = oracle::chain_from_mask(lattice, m);
        const int w = std::popcount(m);
        const double prob = std::pow(p, w) * std::pow(1 - p, 8 - w);
        const DecodeOutcome r = decoder(syndrome_of(lattice, e), e, unused);
        if (!evaluate_recovery(lattice, e, r.recovery).trivial()) out.decoder += prob;
        if (oracle::ml_decoding_fails(table, e, p)) out.optimal += prob;
    }
    return out;
}

}  // namespace

TEST(estimate_pfail, noiseless_channel_never_fails) {
    const Lattice lattice(4);
    const EvalReport r = estimate_pfail(lattice, make_mwpm_decoder(lattice), "mwpm", 0.0, 500, 1);
    EXPECT_EQ(r.n_fail, 0u);
    EXPECT_EQ(r.class_counts[0], 500u);
    expect_consistent(r);
}

TEST(estimate_pfail, calibration_decoders) {
    for (int L : {2, 4, 6}) {
        const Lattice lattice(L);
        for (double p : {0.0, 0.1, 0.5}) {
            const EvalReport ok = estimate_pfail(lattice, identity_decoder(), "identity", p, 300, 7);
            EXPECT_EQ(ok.p_fail, 0.0);
            expect_consistent(ok);
            const EvalReport flip = estimate_pfail(lattice, logical_flip_decoder(lattice), "flip", p, 300, 7);
            EXPECT_EQ(flip.p_fail, 1.0);
            EXPECT_EQ(flip.class_counts[1], 300u);
            expect_consistent(flip);
        }
    }
}

TEST(estimate_pfail, exceptions_and_timeouts_count_as_failures) {
    const Lattice lattice(3);
    DecodeFn throwing = [](const Syndrome &, const Chain &, Rng &) -> DecodeOutcome {
        throw std::invalid_argument("nope");
    };
    const EvalReport r = estimate_pfail(lattice, throwing, "throwing", 0.1, 50, 1);
    EXPECT_EQ(r.n_timeout, 50u);
    EXPECT_EQ(r.p_fail, 1.0);
    expect_consistent(r);

    DecodeFn slow = [](const Syndrome &, const Chain &truth, Rng &) { return DecodeOutcome{truth, 0, true}; };
    EXPECT_EQ(estimate_pfail(lattice, slow, "slow", 0.1, 50, 1).n_timeout, 50u);
}

TEST(estimate_pfail, rejects_empty_test_set) {
    const Lattice lattice(4);
    EXPECT_THROW(estimate_pfail(lattice, make_mwpm_decoder(lattice), "mwpm", 0.1, 0, 1), std::invalid_argument);
    EXPECT_THROW(homology_histogram(lattice, RbmParams::zeros(32, 16, 4), 0.1, 0, 1), std::invalid_argument);
}

TEST(estimate_pfail, mwpm_matches_exact_enumeration_at_l2) {
    const Lattice lattice(2);
    for (double p : {0.05, 0.10, 0.15}) {
        const ExactFailure exact = exact_failure_l2(make_mwpm_decoder(lattice), p);
        EXPECT_GE(exact.decoder, exact.optimal - 1e-15);
        const std::size_t M = 20000;
        const EvalReport r = estimate_pfail(lattice, make_mwpm_decoder(lattice), "mwpm", p, M, 3);
        const double sigma = std::sqrt(exact.decoder * (1 - exact.decoder) / double(M));
        EXPECT_NEAR(r.p_fail, exact.decoder, 4 * sigma) << "p=" << p;
        EXPECT_GE(r.p_fail, exact.optimal - 4 * sigma) << "p=" << p;
    }
}

TEST(estimate_pfail, mwpm_failure_grows_with_error_rate) {
    const Lattice lattice(4);
    const std::size_t M = 10000;
    const EvalReport low = estimate_pfail(lattice, make_mwpm_decoder(lattice), "mwpm", 0.05, M, 4);
    const EvalReport high = estimate_pfail(lattice, make_mwpm_decoder(lattice), "mwpm", 0.10, M, 4);
    EXPECT_LT(low.p_fail, high.p_fail);
    EXPECT_LT(low.p_fail, 0.15);
    expect_consistent(low);
    expect_consistent(high);
}

TEST(estimate_pfail, deterministic_for_fixed_seed) {
    const Lattice lattice(4);
    const Dataset ds = generate_dataset(lattice, ErrorModel(0.05), 5000, 8);
    Hyperparams h;
    h.n_h = 16;
    h.epochs = 10;
    const RbmParams params = train(ds, h, 9);
    const EvalReport a = homology_histogram(lattice, params, 0.05, 300, 10);
    const EvalReport b = homology_histogram(lattice, params, 0.05, 300, 10);
    EXPECT_TRUE(a.same_outcome(b));
    EXPECT_EQ(a.decoder, "neural");
    expect_consistent(a);
    const EvalReport c = homology_histogram(lattice, params, 0.05, 300, 11);
    EXPECT_EQ(c.seed, 11u);
}

TEST(report_csv, header_and_rows) {
    EXPECT_STREQ(report_csv_header(), "decoder,L,p_err,M,n_fail,p_fail,n_h0,n_z1,n_z2,n_z1z2,n_timeout,seed,wall_time_s");
    EvalReport r;
    r.decoder = "mwpm";
    r.L = 4;
    r.p_err = 0.05;
    r.M = 10;
    r.n_fail = 2;
    r.p_fail = 0.2;
    r.class_counts = {8, 1, 1, 0};
    r.seed = 5;
    r.wall_time_s = 1.5;
    EXPECT_EQ(to_csv_row(r), "mwpm,4,0.05,10,2,0.2,8,1,1,0,0,5,1.5");
    std::ostringstream out;
    const std::vector<EvalReport> reports{r, r};
    write_reports_csv(out, reports);
    EXPECT_EQ(out.str(), std::string(report_csv_header()) + "\n" + to_csv_row(r) + "\n" + to_csv_row(r) + "\n");
}

TEST(compare_decoders, rows_are_sorted_and_missing_models_are_reported) {
    EXPECT_EQ(model_path_for("models/L{L}_p{p}.tnrb", 4, 0.1), "models/L4_p0.10.tnrb");

    const auto dir = std::filesystem::temp_directory_path() / "tnd_compare_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    Rng rng = make_stream(12, "test");
    save_model(ModelFile{3, 0.1, oracle::random_params(18, 9, 4, 0.1, rng)}, dir / "L3_p0.10.tnrb");

    CompareConfig cfg;
    cfg.L = 3;
    cfg.p_grid = {0.12, 0.10};
    cfg.M = 40;
    cfg.decoders = {"neural", "mwpm"};
    cfg.model_pattern = (dir / "L{L}_p{p}.tnrb").string();
    cfg.max_sweeps = 2000;
    const auto rows = compare_decoders(cfg);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].decoder, "mwpm");
    EXPECT_EQ(rows[0].p_err, 0.10);
    EXPECT_EQ(rows[1].p_err, 0.12);
    EXPECT_EQ(rows[2].decoder, "neural");
    EXPECT_TRUE(rows[0].report && rows[1].report && rows[2].report);
    EXPECT_FALSE(rows[3].report);
    EXPECT_FALSE(rows[3].error.empty());

    std::ostringstream out;
    write_compare_csv(out, rows);
    std::istringstream lines(out.str());
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    ASSERT_EQ(all.size(), 5u);
    EXPECT_EQ(all[4], "neural,3,0.12,,,,,,,,,,");
    EXPECT_EQ(std::count(all[4].begin(), all[4].end(), ','), 12);
    std::filesystem::remove_all(dir);
}
