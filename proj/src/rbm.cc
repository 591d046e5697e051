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

#include "tnd/rbm.h"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "tnd/binary_io.h"

namespace tnd {

namespace {

constexpr char kModelMagic[5] = "TNRB";
constexpr std::uint16_t kModelVersion = 1;

void require(bool ok, const char *what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

void require_visible(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s) {
    require(e.size() == params.num_error(), "error layer dimension mismatch");
    require(s.size() == params.num_syndrome(), "syndrome layer dimension mismatch");
}

void write_doubles(std::ostream &out, const double *data, Eigen::Index n) {
    out.write(reinterpret_cast<const char *>(data), std::streamsize(n * Eigen::Index(sizeof(double))));
}

void read_doubles(std::istream &in, double *data, Eigen::Index n) {
    const auto bytes = std::streamsize(n * Eigen::Index(sizeof(double)));
    in.read(reinterpret_cast<char *>(data), bytes);
    if (in.gcount() != bytes) {
        throw FormatError(FormatErrc::truncated_payload, "model parameters");
    }
}

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

RbmParams RbmParams::zeros(Eigen::Index n_e, Eigen::Index n_s, Eigen::Index n_h) {
    RbmParams p;
    p.U = Eigen::MatrixXd::Zero(n_h, n_s);
    p.W = Eigen::MatrixXd::Zero(n_h, n_e);
    p.b = Eigen::VectorXd::Zero(n_e);
    p.c = Eigen::VectorXd::Zero(n_h);
    p.d = Eigen::VectorXd::Zero(n_s);
    return p;
}

void RbmParams::validate() const {
    require(U.rows() == c.size() && W.rows() == c.size(), "hidden dimension mismatch");
    require(W.cols() == b.size(), "error dimension mismatch");
    require(U.cols() == d.size(), "syndrome dimension mismatch");
    require(U.allFinite() && W.allFinite() && b.allFinite() && c.allFinite() && d.allFinite(),
            "non-finite parameter");
}

bool RbmParams::operator==(const RbmParams &o) const {
    auto same = [](const auto &a, const auto &b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
    };
    return same(U, o.U) && same(W, o.W) && same(b, o.b) && same(c, o.c) && same(d, o.d);
}

Eigen::VectorXd to_units(const std::vector<std::uint8_t> &bits) {
    Eigen::VectorXd v(Eigen::Index(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        v[Eigen::Index(i)] = bits[i] ? 1.0 : 0.0;
    }
    return v;
}

VisibleSample to_visible(const Lattice &lattice, const Chain &chain) {
    return VisibleSample{to_units(chain.bits), to_units(syndrome_of(lattice, chain).bits)};
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double z = std::exp(x);
    return z / (1.0 + z);
}

double softplus(double x) {
    if (x > 0.0) {
        return x + std::log1p(std::exp(-x));
    }
    return std::log1p(std::exp(x));
}

double energy(const RbmParams &params, const MachineState &state) {
    require_visible(params, state.e, state.s);
    require(state.h.size() == params.num_hidden(), "hidden layer dimension mismatch");
    return -state.h.dot(params.U * state.s) - state.h.dot(params.W * state.e) - params.b.dot(state.e) -
           params.c.dot(state.h) - params.d.dot(state.s);
}

Eigen::VectorXd hidden_field(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s) {
    require_visible(params, e, s);
    return params.c + params.U * s + params.W * e;
}

double effective_energy(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s) {
    const Eigen::VectorXd x = hidden_field(params, e, s);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        sum += softplus(x[i]);
    }
    return -params.b.dot(e) - params.d.dot(s) - sum;
}

Eigen::VectorXd prob_h_given_vis(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s) {
    return sigmoid(hidden_field(params, e, s));
}

Eigen::VectorXd prob_e_given_h(const RbmParams &params, const Eigen::VectorXd &h) {
    require(h.size() == params.num_hidden(), "hidden layer dimension mismatch");
    return sigmoid(params.b + params.W.transpose() * h);
}

Eigen::VectorXd prob_s_given_h(const RbmParams &params, const Eigen::VectorXd &h) {
    require(h.size() == params.num_hidden(), "hidden layer dimension mismatch");
    return sigmoid(params.d + params.U.transpose() * h);
}

Eigen::VectorXd sample_units(const Eigen::VectorXd &probs, Rng &rng) {
    Eigen::VectorXd out(probs.size());
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        out[i] = bernoulli(rng, probs[i]) ? 1.0 : 0.0;
    }
    return out;
}

MachineState gibbs_sweep(const RbmParams &params, const MachineState &state, bool clamp_syndrome, Rng &rng) {
    MachineState next;
    next.h = sample_units(prob_h_given_vis(params, state.e, state.s), rng);
    next.e = sample_units(prob_e_given_h(params, next.h), rng);
    next.s = clamp_syndrome ? state.s : sample_units(prob_s_given_h(params, next.h), rng);
    return next;
}

VisibleSample enumerate_visible(Eigen::Index n_e, Eigen::Index n_s, std::uint64_t index) {
    VisibleSample v{Eigen::VectorXd(n_e), Eigen::VectorXd(n_s)};
    for (Eigen::Index j = 0; j < n_e; ++j) {
        v.e[j] = double((index >> j) & 1U);
    }
    for (Eigen::Index k = 0; k < n_s; ++k) {
        v.s[k] = double((index >> (n_e + k)) & 1U);
    }
    return v;
}

namespace {

// -E_eff for every visible configuration.
Eigen::VectorXd visible_neg_energies(const RbmParams &params) {
    params.validate();
    const Eigen::Index n_vis = params.num_error() + params.num_syndrome();
    if (n_vis > kMaxOracleVisible) {
        throw std::length_error("oracle size exceeded");
    }
    const std::uint64_t count = std::uint64_t{1} << n_vis;
    Eigen::VectorXd neg_energy(Eigen::Index(count), 1);
    for (std::uint64_t m = 0; m < count; ++m) {
        const VisibleSample v = enumerate_visible(params.num_error(), params.num_syndrome(), m);
        neg_energy[Eigen::Index(m)] = -effective_energy(params, v.e, v.s);
    }
    return neg_energy;
}

double log_sum_exp(const Eigen::VectorXd &x) {
    const double top = x.maxCoeff();
    return top + std::log((x.array() - top).exp().sum());
}

}  // namespace

Eigen::VectorXd exact_visible_log_probs(const RbmParams &params) {
    const Eigen::VectorXd neg_energy = visible_neg_energies(params);
    return neg_energy.array() - log_sum_exp(neg_energy);
}

double exact_log_partition(const RbmParams &params) {
    return log_sum_exp(visible_neg_energies(params));
}

void save_model(const ModelFile &model, const std::filesystem::path &path) {
    const RbmParams &p = model.params;
    p.validate();
    const Eigen::Index n_links = 2 * Eigen::Index(model.L) * model.L;
    if (p.num_error() != n_links || p.num_syndrome() != n_links / 2) {
        throw std::invalid_argument("save_model: parameter shapes do not match L");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(FormatErrc::io, "cannot open " + path.string() + " for writing");
    }
    out.write(kModelMagic, 4);
    binary::write<std::uint16_t>(out, kModelVersion);
    binary::write<std::uint16_t>(out, std::uint16_t(model.L));
    binary::write<std::uint32_t>(out, std::uint32_t(p.num_hidden()));
    binary::write<double>(out, model.p_err);
    const RowMajor U = p.U;
    const RowMajor W = p.W;
    write_doubles(out, U.data(), U.size());
    write_doubles(out, W.data(), W.size());
    write_doubles(out, p.b.data(), p.b.size());
    write_doubles(out, p.c.data(), p.c.size());
    write_doubles(out, p.d.data(), p.d.size());
    if (!out) {
        throw FormatError(FormatErrc::io, "write failed for " + path.string());
    }
}

ModelFile load_model(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError(FormatErrc::io, "cannot open " + path.string());
    }
    binary::read_magic(in, kModelMagic);
    const auto version = binary::read<std::uint16_t>(in, FormatErrc::bad_header);
    if (version != kModelVersion) {
        throw FormatError(FormatErrc::bad_version, "model version " + std::to_string(version));
    }
    ModelFile model;
    model.L = binary::read<std::uint16_t>(in, FormatErrc::bad_header);
    const auto n_h = binary::read<std::uint32_t>(in, FormatErrc::bad_header);
    model.p_err = binary::read<double>(in, FormatErrc::bad_header);
    if (model.L < 2 || n_h == 0) {
        throw FormatError(FormatErrc::bad_header, "invalid L or n_h");
    }
    const Eigen::Index n_e = 2 * Eigen::Index(model.L) * model.L;
    const Eigen::Index n_s = n_e / 2;
    RowMajor U(n_h, n_s);
    RowMajor W(n_h, n_e);
    RbmParams &p = model.params;
    p = RbmParams::zeros(n_e, n_s, n_h);
    read_doubles(in, U.data(), U.size());
    read_doubles(in, W.data(), W.size());
    read_doubles(in, p.b.data(), p.b.size());
    read_doubles(in, p.c.data(), p.c.size());
    read_doubles(in, p.d.data(), p.d.size());
    p.U = U;
    p.W = W;
    if (!p.U.allFinite() || !p.W.allFinite() || !p.b.allFinite() || !p.c.allFinite() || !p.d.allFinite()) {
        throw FormatError(FormatErrc::bad_header, "non-finite parameter in model file");
    }
    return model;
}

}  // namespace tnd
