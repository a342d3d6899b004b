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

#ifndef HARAKAT_NN_TRAINER_HPP
#define HARAKAT_NN_TRAINER_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "harakat/error.hpp"
#include "harakat/nn/adamax.hpp"
#include "harakat/nn/sample.hpp"
#include "harakat/nn/sequence_model.hpp"

namespace harakat::nn {

struct TrainConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 256;
  std::size_t patience = 5;
  std::size_t max_epochs = 100;
  std::uint64_t seed = 1;

  void validate() const {
    if (batch_size == 0) throw Error("batch size must be at least 1");
    if (patience == 0) throw Error("patience must be at least 1");
    if (max_epochs == 0) throw Error("max_epochs must be at least 1");
    if (!(learning_rate > 0.0)) throw Error("learning rate must be positive");
  }
};

// Tracks the best validation loss; a strict decrease counts as improvement.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  // Returns true when `loss` improves on the best so far.
  bool update(std::size_t epoch, double loss) {
    if (loss < best_loss_) {
      best_loss_ = loss;
      best_epoch_ = epoch;
      wait_ = 0;
      return true;
    }
    ++wait_;
    return false;
  }

  bool should_stop() const { return wait_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }

 private:
  std::size_t patience_;
  std::size_t wait_ = 0;
  std::size_t best_epoch_ = 0;
  double best_loss_ = std::numeric_limits<double>::infinity();
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  bool improved = false;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  bool early_stopped = false;

  std::size_t stopped_epoch() const { return epochs.empty() ? 0 : epochs.back().epoch; }

  void write_log(std::ostream& out) const {
    out << "epoch\ttrain_loss\tval_loss\timproved\n";
    const auto flags = out.flags();
    out << std::setprecision(9);
    for (const auto& e : epochs) {
      out << e.epoch << '\t' << e.train_loss << '\t' << e.val_loss << '\t' << (e.improved ? 1 : 0) << '\n';
    }
    out << "# best_epoch\t" << best_epoch << '\n';
    out << "# stopped\t" << (early_stopped ? "early" : "max_epochs") << '\n';
    out.flags(flags);
  }
};

struct TrainHooks {
  // Replaces the built-in validation loss when set.
  std::function<double(std::size_t epoch, const SequenceModel<float>&)> validation_loss;
  std::function<void(const EpochRecord&, const SequenceModel<float>&)> on_epoch;
};

// Mean eval-mode loss over a dataset, evaluated in chunks.
inline double dataset_loss(const SequenceModel<float>& model, std::span<const Sample> data,
                           std::size_t chunk = 256) {
  double total = 0.0;
  std::size_t scored = 0;
  for (std::size_t i = 0; i < data.size(); i += chunk) {
    const auto [sum, n] = model.loss_sum(data.subspan(i, std::min(chunk, data.size() - i)));
    total += sum;
    scored += n;
  }
  return scored == 0 ? 0.0 : total / static_cast<double>(scored);
}

// Mini-batch Adamax training with early stopping on validation loss. The
// model ends up holding the best-validation snapshot.
inline TrainHistory train(SequenceModel<float>& model, std::span<const Sample> train_set,
                          std::span<const Sample> val_set, const TrainConfig& cfg, const TrainHooks& hooks = {}) {
  cfg.validate();
  if (train_set.empty()) throw EmptyDataset("training");
  if (val_set.empty() && !hooks.validation_loss) throw EmptyDataset("validation");

  Adamax<float> optimizer(model.parameter_count(), cfg.learning_rate);
  EarlyStopping stopper(cfg.patience);
  std::mt19937_64 shuffle_rng(cfg.seed ^ 0x53485546464c45ULL);
  DropoutRng dropout(cfg.seed ^ 0x44524f504f5554ULL);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<float> grad;
  std::vector<Sample> batch;
  std::vector<float> best(model.parameters().begin(), model.parameters().end());

  TrainHistory history;
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double loss_sum = 0.0;
    std::size_t scored = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      batch.clear();
      for (std::size_t k = start; k < std::min(order.size(), start + cfg.batch_size); ++k) {
        batch.push_back(train_set[order[k]]);
      }
      std::size_t n = 0;
      for (const auto& s : batch) n += s.scored();
      const float loss = model.loss_and_gradients(batch, grad, &dropout);
      if (n == 0) continue;
      optimizer.step(model.parameters(), grad);
      loss_sum += static_cast<double>(loss) * static_cast<double>(n);
      scored += n;
    }
    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = scored == 0 ? 0.0 : loss_sum / static_cast<double>(scored);
    record.val_loss = hooks.validation_loss ? hooks.validation_loss(epoch, model) : dataset_loss(model, val_set);
    record.improved = stopper.update(epoch, record.val_loss);
    if (record.improved) {
      best.assign(model.parameters().begin(), model.parameters().end());
      history.best_epoch = epoch;
    }
    history.epochs.push_back(record);
    if (hooks.on_epoch) hooks.on_epoch(record, model);
    if (stopper.should_stop()) {
      history.early_stopped = true;
      break;
    }
  }
  std::copy(best.begin(), best.end(), model.parameters().begin());
  return history;
}

}  // namespace harakat::nn

#endif  // HARAKAT_NN_TRAINER_HPP
