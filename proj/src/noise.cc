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

#include "tnd/noise.h"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "tnd/binary_io.h"

namespace tnd {

namespace {

constexpr char kDatasetMagic[5] = "TNDS";
constexpr std::uint16_t kDatasetVersion = 1;

std::size_t packed_size(std::size_t bits) {
    return (bits + 7) / 8;
}

}  // namespace

ErrorModel::ErrorModel(double p) : p_err(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p_err must lie in [0, 1]");
    }
}

std::vector<double> default_error_grid() {
    std::vector<double> grid;
    for (int i = 5; i <= 15; ++i) {
        grid.push_back(i / 100.0);
    }
    return grid;
}

Chain sample_chain(const Lattice &lattice, const ErrorModel &model, Rng &rng) {
    Chain c = lattice.empty_chain();
    for (auto &bit : c.bits) {
        bit = bernoulli(rng, model.p_err) ? 1 : 0;
    }
    return c;
}

Dataset generate_dataset(const Lattice &lattice, const ErrorModel &model, std::size_t count,
                         std::uint64_t seed) {
    if (count == 0) {
        throw std::invalid_argument("dataset must contain at least one chain");
    }
    Dataset ds;
    ds.L = lattice.size();
    ds.p_err = model.p_err;
    ds.seed = seed;
    ds.chains.resize(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < std::int64_t(count); ++k) {
        Rng rng = make_stream(seed, "dataset", std::uint64_t(k));
        ds.chains[std::size_t(k)] = sample_chain(lattice, model, rng);
    }
    return ds;
}

void save_dataset(const Dataset &dataset, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(FormatErrc::io, "cannot open " + path.string() + " for writing");
    }
    const std::size_t n_links = 2 * std::size_t(dataset.L) * std::size_t(dataset.L);
    out.write(kDatasetMagic, 4);
    binary::write<std::uint16_t>(out, kDatasetVersion);
    binary::write<std::uint16_t>(out, std::uint16_t(dataset.L));
    binary::write<double>(out, dataset.p_err);
    binary::write<std::uint64_t>(out, dataset.chains.size());
    binary::write<std::uint64_t>(out, dataset.seed);

    std::vector<char> record(packed_size(n_links));
    for (const Chain &c : dataset.chains) {
        if (c.size() != n_links) {
            throw std::invalid_argument("save_dataset: chain length does not match L");
        }
        std::fill(record.begin(), record.end(), 0);
        for (std::size_t i = 0; i < n_links; ++i) {
            if (c.bits[i]) {
                record[i / 8] = char(record[i / 8] | (1 << (i % 8)));
            }
        }
        out.write(record.data(), std::streamsize(record.size()));
    }
    if (!out) {
        throw FormatError(FormatErrc::io, "write failed for " + path.string());
    }
}

Dataset load_dataset(const std::filesystem::path &path, std::optional<int> expected_L) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError(FormatErrc::io, "cannot open " + path.string());
    }
    binary::read_magic(in, kDatasetMagic);
    const auto version = binary::read<std::uint16_t>(in, FormatErrc::bad_header);
    if (version != kDatasetVersion) {
        throw FormatError(FormatErrc::bad_version, "dataset version " + std::to_string(version));
    }
    Dataset ds;
    ds.L = binary::read<std::uint16_t>(in, FormatErrc::bad_header);
    ds.p_err = binary::read<double>(in, FormatErrc::bad_header);
    const auto count = binary::read<std::uint64_t>(in, FormatErrc::bad_header);
    ds.seed = binary::read<std::uint64_t>(in, FormatErrc::bad_header);
    if (ds.L < 2 || !(ds.p_err >= 0.0 && ds.p_err <= 1.0) || count == 0) {
        throw FormatError(FormatErrc::bad_header, "invalid L, p_err or M");
    }
    if (expected_L && *expected_L != ds.L) {
        throw FormatError(FormatErrc::lattice_mismatch,
                          "file has L=" + std::to_string(ds.L) + ", expected L=" + std::to_string(*expected_L));
    }

    const std::size_t n_links = 2 * std::size_t(ds.L) * std::size_t(ds.L);
    std::vector<char> record(packed_size(n_links));
    ds.chains.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        in.read(record.data(), std::streamsize(record.size()));
        if (in.gcount() != std::streamsize(record.size())) {
            throw FormatError(FormatErrc::truncated_payload,
                              "record " + std::to_string(k) + " of " + std::to_string(count));
        }
        Chain c{std::vector<std::uint8_t>(n_links)};
        for (std::size_t i = 0; i < n_links; ++i) {
            c.bits[i] = std::uint8_t((record[i / 8] >> (i % 8)) & 1);
        }
        ds.chains.push_back(std::move(c));
    }
    return ds;
}

}  // namespace tnd
