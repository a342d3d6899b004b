// Copyright 2026 The Harakat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HARAKAT_NN_SEQUENCE_MODEL_HPP
#define HARAKAT_NN_SEQUENCE_MODEL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "harakat/binary_io.hpp"
#include "harakat/error.hpp"
#include "harakat/nn/sample.hpp"

namespace harakat::nn {

enum class ModelKind : std::uint8_t { cw, ce };

struct ModelConfig {
  ModelKind kind = ModelKind::cw;
  std::vector<std::size_t> vocab_sizes;  // one embedding bank per feature
  std::size_t embed_dim = 50;
  std::size_t lstm_units = 100;
  std::size_t dense_units = 100;
  std::size_t label_count = 16;
  double input_dropout = 0.0;
  double dense_dropout = 0.0;

  static ModelConfig cw(std::vector<std::size_t> vocab_sizes, std::size_t label_count = 16) {
    ModelConfig c;
    c.kind = ModelKind::cw;
    c.vocab_sizes = std::move(vocab_sizes);
    c.label_count = label_count;
    return c;
  }

  static ModelConfig ce(std::vector<std::size_t> vocab_sizes) {
    ModelConfig c;
    c.kind = ModelKind::ce;
    c.vocab_sizes = std::move(vocab_sizes);
    c.embed_dim = 100;
    c.label_count = 15;
    c.input_dropout = 0.75;
    c.dense_dropout = 0.15;
    return c;
  }

  std::size_t feature_count() const { return vocab_sizes.size(); }
  std::size_t input_dim() const { return feature_count() * embed_dim; }

  void validate() const {
    if (vocab_sizes.empty() || embed_dim == 0 || lstm_units == 0 || dense_units == 0 || label_count == 0) {
      throw ShapeMismatch("model dimensions must be positive");
    }
    for (auto v : vocab_sizes) {
      if (v == 0) throw ShapeMismatch("empty embedding vocabulary");
    }
    if (!(input_dropout >= 0.0 && input_dropout < 1.0) || !(dense_dropout >= 0.0 && dense_dropout < 1.0)) {
      throw ShapeMismatch("dropout rates must lie in [0, 1)");
    }
    if (kind == ModelKind::ce && label_count != 15) throw ShapeMismatch("CE models predict 15 labels");
  }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Offsets of every parameter block inside the flat parameter vector. All
// matrices are column-major.
struct ParameterLayout {
  struct Lstm {
    std::size_t wx, wh, b;
  };
  std::vector<std::size_t> embedding;  // E x V_f
  Lstm lstm[2];                        // forward, backward
  std::size_t dense_w = 0, dense_b = 0, out_w = 0, out_b = 0;
  std::size_t total = 0;

  explicit ParameterLayout(const ModelConfig& c = {}) {
    std::size_t at = 0;
    for (auto v : c.vocab_sizes) {
      embedding.push_back(at);
      at += c.embed_dim * v;
    }
    const std::size_t h4 = 4 * c.lstm_units;
    for (auto& l : lstm) {
      l.wx = at;
      at += h4 * c.input_dim();
      l.wh = at;
      at += h4 * c.lstm_units;
      l.b = at;
      at += h4;
    }
    dense_w = at;
    at += c.dense_units * 2 * c.lstm_units;
    dense_b = at;
    at += c.dense_units;
    out_w = at;
    at += c.label_count * c.dense_units;
    out_b = at;
    at += c.label_count;
    total = at;
  }
};

// Source of dropout masks; a fresh copy with the same seed replays the same
// masks.
class DropoutRng {
 public:
  explicit DropoutRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

template <class Scalar>
class SequenceModel {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixMap = Eigen::Map<Matrix>;
  using ConstMatrixMap = Eigen::Map<const Matrix>;
  using VectorMap = Eigen::Map<Vector>;
  using ConstVectorMap = Eigen::Map<const Vector>;

  SequenceModel() = default;

  explicit SequenceModel(ModelConfig config) : config_(std::move(config)) {
    config_.validate();
    layout_ = ParameterLayout(config_);
    params_.assign(layout_.total, Scalar(0));
  }

  // Weights uniform in [-0.05, 0.05], biases zero, forget-gate bias one.
  void initialize(std::uint64_t seed) {
    seed_ = seed;
    std::mt19937_64 rng(seed);
    for (auto& p : params_) {
      p = static_cast<Scalar>(-0.05 + 0.1 * (static_cast<double>(rng() >> 11) * 0x1.0p-53));
    }
    const std::size_t h = config_.lstm_units;
    for (const auto& l : layout_.lstm) {
      std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(l.b), 4 * h, Scalar(0));
      std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(l.b + h), h, Scalar(1));
    }
    std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(layout_.dense_b), config_.dense_units, Scalar(0));
    std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(layout_.out_b), config_.label_count, Scalar(0));
  }

  void zero() { std::fill(params_.begin(), params_.end(), Scalar(0)); }

  const ModelConfig& config() const { return config_; }
  const ParameterLayout& layout() const { return layout_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t parameter_count() const { return params_.size(); }
  std::span<Scalar> parameters() { return params_; }
  std::span<const Scalar> parameters() const { return params_; }

  template <class Other>
  SequenceModel<Other> cast() const {
    SequenceModel<Other> out(config_);
    auto dst = out.parameters();
    for (std::size_t i = 0; i < params_.size(); ++i) dst[i] = static_cast<Other>(params_[i]);
    out.set_seed(seed_);
    return out;
  }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  // Per-sample label distributions (label_count x length). Dropout is
  // sampled only when `dropout` is given.
  std::vector<Matrix> forward(std::span<const Sample> batch, DropoutRng* dropout = nullptr) const {
    Pass pass = run_forward(batch, dropout);
    std::vector<Matrix> out;
    out.reserve(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
      out.push_back(pass.probs.middleCols(static_cast<Eigen::Index>(pass.offset[b]),
                                          static_cast<Eigen::Index>(batch[b].length)));
    }
    return out;
  }

  // Mean cross-entropy over scored rows; `grad` receives d loss / d params.
  Scalar loss_and_gradients(std::span<const Sample> batch, std::vector<Scalar>& grad,
                            DropoutRng* dropout = nullptr) const {
    Pass pass = run_forward(batch, dropout);
    grad.assign(params_.size(), Scalar(0));
    const auto [loss, scored] = pass_loss(pass, batch);
    if (scored == 0) return Scalar(0);
    backward(pass, batch, grad, Scalar(1) / static_cast<Scalar>(scored));
    return loss / static_cast<Scalar>(scored);
  }

  // Mean cross-entropy without gradients, in eval mode.
  Scalar loss(std::span<const Sample> batch) const {
    Pass pass = run_forward(batch, nullptr);
    const auto [total, scored] = pass_loss(pass, batch);
    return scored == 0 ? Scalar(0) : total / static_cast<Scalar>(scored);
  }

  // Summed loss and scored-row count, eval mode.
  std::pair<double, std::size_t> loss_sum(std::span<const Sample> batch) const {
    Pass pass = run_forward(batch, nullptr);
    const auto [total, scored] = pass_loss(pass, batch);
    return {static_cast<double>(total), scored};
  }

  // Argmax per row; ties go to the lowest label id.
  std::vector<std::vector<std::int32_t>> predict(std::span<const Sample> batch) const {
    const auto probs = forward(batch);
    std::vector<std::vector<std::int32_t>> out;
    out.reserve(batch.size());
    for (const auto& p : probs) {
      std::vector<std::int32_t> labels(static_cast<std::size_t>(p.cols()));
      for (Eigen::Index t = 0; t < p.cols(); ++t) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < p.rows(); ++k) {
          if (p(k, t) > p(best, t)) best = k;
        }
        labels[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(best);
      }
      out.push_back(std::move(labels));
    }
    return out;
  }

  void write(BinaryWriter& w) const {
    w.u8(static_cast<std::uint8_t>(config_.kind));
    w.u32(static_cast<std::uint32_t>(config_.vocab_sizes.size()));
    for (auto v : config_.vocab_sizes) w.u64(v);
    w.u64(config_.embed_dim);
    w.u64(config_.lstm_units);
    w.u64(config_.dense_units);
    w.u64(config_.label_count);
    w.f64(config_.input_dropout);
    w.f64(config_.dense_dropout);
    w.u64(seed_);
    w.u64(params_.size());
    for (Scalar p : params_) w.f32(static_cast<float>(p));
  }

  static SequenceModel read(BinaryReader& r) {
    ModelConfig c;
    c.kind = static_cast<ModelKind>(r.u8());
    const std::uint32_t features = r.u32();
    for (std::uint32_t i = 0; i < features; ++i) c.vocab_sizes.push_back(r.u64());
    c.embed_dim = r.u64();
    c.lstm_units = r.u64();
    c.dense_units = r.u64();
    c.label_count = r.u64();
    c.input_dropout = r.f64();
    c.dense_dropout = r.f64();
    SequenceModel m(c);
    m.seed_ = r.u64();
    if (r.u64() != m.params_.size()) throw FormatError("parameter count disagrees with model config");
    for (auto& p : m.params_) p = static_cast<Scalar>(r.f32());
    return m;
  }

 private:
  struct Pass {
    std::vector<std::size_t> offset, length, order;  // order: by length, longest first
    std::size_t columns = 0, max_length = 0;
    Matrix x;           // input_dim x N, after dropout
    Matrix input_mask;  // empty when no input dropout
    Matrix gates[2];    // activated i, f, g, o
    Matrix cell[2], hidden[2];
    Matrix dense_in;    // 2H x N, after dropout
    Matrix dense_mask;
    Matrix z;           // dense activations
    Matrix probs;
  };

  ConstMatrixMap block(std::size_t at, std::size_t rows, std::size_t cols) const {
    return ConstMatrixMap(params_.data() + at, static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  }
  static MatrixMap grad_block(std::vector<Scalar>& g, std::size_t at, std::size_t rows, std::size_t cols) {
    return MatrixMap(g.data() + at, static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  }

  void check(const Sample& s) const {
    const std::size_t f = config_.feature_count();
    if (s.features.size() != s.length * f) throw ShapeMismatch("feature rows do not match sequence length");
    if (s.labels.size() != s.length) throw ShapeMismatch("label count does not match sequence length");
    for (std::size_t t = 0; t < s.length; ++t) {
      for (std::size_t k = 0; k < f; ++k) {
        if (s.features[t * f + k] >= config_.vocab_sizes[k]) throw ShapeMismatch("feature id outside vocabulary");
      }
      const auto l = s.labels[t];
      if (l != kIgnoreLabel && (l < 0 || static_cast<std::size_t>(l) >= config_.label_count)) {
        throw ShapeMismatch("label id outside label space");
      }
    }
  }

  static Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, DropoutRng& rng) {
    Matrix m(rows, cols);
    const auto keep = static_cast<Scalar>(1.0 / (1.0 - rate));
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.uniform() < rate ? Scalar(0) : keep;
    }
    return m;
  }

  // Column of sequence b at recurrence step s for direction d.
  static std::size_t column(const Pass& p, std::size_t b, std::size_t s, int d) {
    return d == 0 ? p.offset[b] + s : p.offset[b] + p.length[b] - 1 - s;
  }

  Pass run_forward(std::span<const Sample> batch, DropoutRng* dropout) const {
    Pass p;
    const std::size_t f_count = config_.feature_count();
    const std::size_t e = config_.embed_dim;
    const std::size_t h = config_.lstm_units;
    for (const auto& s : batch) {
      check(s);
      p.offset.push_back(p.columns);
      p.length.push_back(s.length);
      p.columns += s.length;
      p.max_length = std::max(p.max_length, s.length);
    }
    p.order.resize(batch.size());
    std::iota(p.order.begin(), p.order.end(), 0);
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&](std::size_t a, std::size_t b) { return p.length[a] > p.length[b]; });
    const auto n = static_cast<Eigen::Index>(p.columns);

    p.x.resize(static_cast<Eigen::Index>(config_.input_dim()), n);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      for (std::size_t t = 0; t < batch[b].length; ++t) {
        const auto col = static_cast<Eigen::Index>(p.offset[b] + t);
        for (std::size_t k = 0; k < f_count; ++k) {
          const std::uint32_t id = batch[b].features[t * f_count + k];
          p.x.col(col).segment(static_cast<Eigen::Index>(k * e), static_cast<Eigen::Index>(e)) =
              block(layout_.embedding[k] + id * e, e, 1);
        }
      }
    }
    if (dropout != nullptr && config_.input_dropout > 0.0) {
      p.input_mask = dropout_mask(p.x.rows(), n, config_.input_dropout, *dropout);
      p.x.array() *= p.input_mask.array();
    }

    for (int d = 0; d < 2; ++d) {
      const auto& l = layout_.lstm[d];
      const auto wx = block(l.wx, 4 * h, config_.input_dim());
      const auto wh = block(l.wh, 4 * h, h);
      const auto bias = block(l.b, 4 * h, 1);
      Matrix& g = p.gates[d];
      g.noalias() = wx * p.x;
      g.colwise() += bias.col(0);
      p.cell[d].resize(static_cast<Eigen::Index>(h), n);
      p.hidden[d].resize(static_cast<Eigen::Index>(h), n);
      Matrix prev_h, rec;
      const auto hh = static_cast<Eigen::Index>(h);
      for (std::size_t s = 0, active = batch.size(); s < p.max_length; ++s) {
        while (active > 0 && p.length[p.order[active - 1]] <= s) --active;
        if (s > 0) {
          prev_h.resize(hh, static_cast<Eigen::Index>(active));
          for (std::size_t k = 0; k < active; ++k) {
            prev_h.col(static_cast<Eigen::Index>(k)) =
                p.hidden[d].col(static_cast<Eigen::Index>(column(p, p.order[k], s - 1, d)));
          }
          rec.noalias() = wh * prev_h;
        }
        for (std::size_t k = 0; k < active; ++k) {
          const std::size_t b = p.order[k];
          const auto col = static_cast<Eigen::Index>(column(p, b, s, d));
          auto a = g.col(col);
          if (s > 0) a += rec.col(static_cast<Eigen::Index>(k));
          a.segment(0, 2 * hh) = a.segment(0, 2 * hh).array().logistic();
          a.segment(2 * hh, hh) = a.segment(2 * hh, hh).array().tanh();
          a.segment(3 * hh, hh) = a.segment(3 * hh, hh).array().logistic();
          auto c = p.cell[d].col(col);
          c = a.segment(0, hh).cwiseProduct(a.segment(2 * hh, hh));
          if (s > 0) {
            const auto prev = static_cast<Eigen::Index>(column(p, b, s - 1, d));
            c += a.segment(hh, hh).cwiseProduct(p.cell[d].col(prev));
          }
          p.hidden[d].col(col) = a.segment(3 * hh, hh).cwiseProduct(c.array().tanh().matrix());
        }
      }
    }

    p.dense_in.resize(static_cast<Eigen::Index>(2 * h), n);
    p.dense_in.topRows(static_cast<Eigen::Index>(h)) = p.hidden[0];
    p.dense_in.bottomRows(static_cast<Eigen::Index>(h)) = p.hidden[1];
    if (dropout != nullptr && config_.dense_dropout > 0.0) {
      p.dense_mask = dropout_mask(p.dense_in.rows(), n, config_.dense_dropout, *dropout);
      p.dense_in.array() *= p.dense_mask.array();
    }
    const std::size_t dn = config_.dense_units;
    const std::size_t lc = config_.label_count;
    p.z.noalias() = block(layout_.dense_w, dn, 2 * h) * p.dense_in;
    p.z.colwise() += block(layout_.dense_b, dn, 1).col(0);
    p.z = p.z.array().tanh();
    p.probs.noalias() = block(layout_.out_w, lc, dn) * p.z;
    p.probs.colwise() += block(layout_.out_b, lc, 1).col(0);
    for (Eigen::Index c = 0; c < n; ++c) {
      auto col = p.probs.col(c);
      col.array() -= col.maxCoeff();
      col = col.array().exp();
      col /= col.sum();
    }
    return p;
  }

  std::pair<Scalar, std::size_t> pass_loss(const Pass& p, std::span<const Sample> batch) const {
    Scalar total(0);
    std::size_t scored = 0;
    for (std::size_t b = 0; b < batch.size(); ++b) {
      for (std::size_t t = 0; t < batch[b].length; ++t) {
        const auto l = batch[b].labels[t];
        if (l == kIgnoreLabel) continue;
        total -= std::log(std::max(p.probs(l, static_cast<Eigen::Index>(p.offset[b] + t)),
                                   std::numeric_limits<Scalar>::min()));
        ++scored;
      }
    }
    return {total, scored};
  }

  void backward(Pass& p, std::span<const Sample> batch, std::vector<Scalar>& grad, Scalar scale) const {
    const std::size_t h = config_.lstm_units;
    const std::size_t dn = config_.dense_units;
    const std::size_t lc = config_.label_count;
    const std::size_t e = config_.embed_dim;
    const auto hh = static_cast<Eigen::Index>(h);
    const auto n = static_cast<Eigen::Index>(p.columns);

    Matrix dlogits = std::move(p.probs);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      for (std::size_t t = 0; t < batch[b].length; ++t) {
        const auto col = static_cast<Eigen::Index>(p.offset[b] + t);
        const auto l = batch[b].labels[t];
        if (l == kIgnoreLabel) {
          dlogits.col(col).setZero();
        } else {
          dlogits(l, col) -= Scalar(1);
        }
      }
    }
    dlogits *= scale;

    grad_block(grad, layout_.out_w, lc, dn).noalias() += dlogits * p.z.transpose();
    grad_block(grad, layout_.out_b, lc, 1).col(0) += dlogits.rowwise().sum();
    Matrix dz = block(layout_.out_w, lc, dn).transpose() * dlogits;
    dz.array() *= (Scalar(1) - p.z.array().square());
    grad_block(grad, layout_.dense_w, dn, 2 * h).noalias() += dz * p.dense_in.transpose();
    grad_block(grad, layout_.dense_b, dn, 1).col(0) += dz.rowwise().sum();
    Matrix dhcat = block(layout_.dense_w, dn, 2 * h).transpose() * dz;
    if (p.dense_mask.size() > 0) dhcat.array() *= p.dense_mask.array();

    Matrix dx = Matrix::Zero(p.x.rows(), n);
    for (int d = 0; d < 2; ++d) {
      const auto& l = layout_.lstm[d];
      const auto wh = block(l.wh, 4 * h, h);
      Matrix dh = dhcat.middleRows(d * hh, hh);
      Matrix dc = Matrix::Zero(hh, n);
      Matrix dgates(4 * hh, n);
      Matrix da_active, prev_h;
      const Matrix& g = p.gates[d];
      const Matrix& cell = p.cell[d];
      std::size_t active = batch.size();
      std::vector<std::size_t> active_at(p.max_length);
      for (std::size_t s = 0; s < p.max_length; ++s) {
        while (active > 0 && p.length[p.order[active - 1]] <= s) --active;
        active_at[s] = active;
      }
      for (std::size_t s = p.max_length; s-- > 0;) {
        const std::size_t act = active_at[s];
        if (s > 0) {
          da_active.resize(4 * hh, static_cast<Eigen::Index>(act));
          prev_h.resize(hh, static_cast<Eigen::Index>(act));
        }
        for (std::size_t k = 0; k < act; ++k) {
          const std::size_t b = p.order[k];
          const auto col = static_cast<Eigen::Index>(column(p, b, s, d));
          const auto a = g.col(col);
          const auto i_g = a.segment(0, hh).array();
          const auto f_g = a.segment(hh, hh).array();
          const auto g_g = a.segment(2 * hh, hh).array();
          const auto o_g = a.segment(3 * hh, hh).array();
          const auto tc = cell.col(col).array().tanh().eval();
          const auto dhc = dh.col(col).array();
          auto dcc = dc.col(col).array();
          dcc += dhc * o_g * (Scalar(1) - tc.square());
          auto out = dgates.col(col);
          out.segment(3 * hh, hh) = (dhc * tc * o_g * (Scalar(1) - o_g)).matrix();
          out.segment(0, hh) = (dcc * g_g * i_g * (Scalar(1) - i_g)).matrix();
          out.segment(2 * hh, hh) = (dcc * i_g * (Scalar(1) - g_g.square())).matrix();
          if (s > 0) {
            const auto prev = static_cast<Eigen::Index>(column(p, b, s - 1, d));
            out.segment(hh, hh) = (dcc * cell.col(prev).array() * f_g * (Scalar(1) - f_g)).matrix();
            dc.col(prev).array() += dcc * f_g;
            da_active.col(static_cast<Eigen::Index>(k)) = out;
            prev_h.col(static_cast<Eigen::Index>(k)) = p.hidden[d].col(prev);
          } else {
            out.segment(hh, hh).setZero();
          }
        }
        if (s > 0 && act > 0) {
          grad_block(grad, l.wh, 4 * h, h).noalias() += da_active * prev_h.transpose();
          const Matrix dprev = wh.transpose() * da_active;
          for (std::size_t k = 0; k < act; ++k) {
            const auto prev = static_cast<Eigen::Index>(column(p, p.order[k], s - 1, d));
            dh.col(prev) += dprev.col(static_cast<Eigen::Index>(k));
          }
        }
      }
      grad_block(grad, l.wx, 4 * h, config_.input_dim()).noalias() += dgates * p.x.transpose();
      grad_block(grad, l.b, 4 * h, 1).col(0) += dgates.rowwise().sum();
      dx.noalias() += block(l.wx, 4 * h, config_.input_dim()).transpose() * dgates;
    }
    if (p.input_mask.size() > 0) dx.array() *= p.input_mask.array();

    const std::size_t f_count = config_.feature_count();
    for (std::size_t b = 0; b < batch.size(); ++b) {
      for (std::size_t t = 0; t < batch[b].length; ++t) {
        const auto col = static_cast<Eigen::Index>(p.offset[b] + t);
        for (std::size_t k = 0; k < f_count; ++k) {
          const std::uint32_t id = batch[b].features[t * f_count + k];
          grad_block(grad, layout_.embedding[k] + id * e, e, 1).col(0) +=
              dx.col(col).segment(static_cast<Eigen::Index>(k * e), static_cast<Eigen::Index>(e));
        }
      }
    }
  }

  ModelConfig config_;
  ParameterLayout layout_;
  std::vector<Scalar> params_;
  std::uint64_t seed_ = 0;
};

}  // namespace harakat::nn

#endif  // HARAKAT_NN_SEQUENCE_MODEL_HPP
