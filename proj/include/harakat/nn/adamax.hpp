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

#ifndef HARAKAT_NN_ADAMAX_HPP
#define HARAKAT_NN_ADAMAX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "harakat/error.hpp"

namespace harakat::nn {

// Adamax: first-moment EMA and an infinity-norm second moment, with the
// bias-corrected step lr / (1 - beta1^t).
template <class Scalar>
class Adamax {
 public:
  explicit Adamax(std::size_t size, double learning_rate = 0.001, double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-7)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(size, Scalar(0)),
        u_(size, Scalar(0)) {}

  void step(std::span<Scalar> params, std::span<const Scalar> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size()) {
      throw ShapeMismatch("optimizer state does not match parameter count");
    }
    ++t_;
    const auto step = static_cast<Scalar>(lr_ / (1.0 - std::pow(beta1_, static_cast<double>(t_))));
    const auto b1 = static_cast<Scalar>(beta1_);
    const auto b2 = static_cast<Scalar>(beta2_);
    const auto eps = static_cast<Scalar>(epsilon_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const Scalar g = grads[i];
      m_[i] = b1 * m_[i] + (Scalar(1) - b1) * g;
      u_[i] = std::max(b2 * u_[i], std::abs(g));
      params[i] -= step * m_[i] / (u_[i] + eps);
    }
  }

  std::uint64_t steps() const { return t_; }
  double learning_rate() const { return lr_; }
  const std::vector<Scalar>& first_moment() const { return m_; }
  const std::vector<Scalar>& infinity_norm() const { return u_; }

 private:
  double lr_, beta1_, beta2_, epsilon_;
  std::vector<Scalar> m_, u_;
  std::uint64_t t_ = 0;
};

}  // namespace harakat::nn

#endif  // HARAKAT_NN_ADAMAX_HPP
