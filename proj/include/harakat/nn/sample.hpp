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

#ifndef HARAKAT_NN_SAMPLE_HPP
#define HARAKAT_NN_SAMPLE_HPP

#include <cstdint>
#include <vector>

namespace harakat::nn {

inline constexpr std::int32_t kIgnoreLabel = -1;

// One encoded sequence: `length` rows of `feature_count` categorical ids,
// stored row-major, plus one label per row (kIgnoreLabel rows carry no loss).
struct Sample {
  std::size_t length = 0;
  std::vector<std::uint32_t> features;
  std::vector<std::int32_t> labels;

  std::size_t scored() const {
    std::size_t n = 0;
    for (auto l : labels) n += l != kIgnoreLabel ? 1 : 0;
    return n;
  }
};

}  // namespace harakat::nn

#endif  // HARAKAT_NN_SAMPLE_HPP
