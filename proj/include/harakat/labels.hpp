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

#ifndef HARAKAT_LABELS_HPP
#define HARAKAT_LABELS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "harakat/codec.hpp"

namespace harakat {

namespace detail {

inline constexpr std::array<Vowel, 7> kLabelVowels{
    Vowel::fatha, Vowel::kasra, Vowel::damma, Vowel::sukun,
    Vowel::fathatan, Vowel::dammatan, Vowel::kasratan};

// Shadda combines with every vowel except sukun.
inline constexpr std::array<Vowel, 6> kShaddaVowels{
    Vowel::fatha, Vowel::kasra, Vowel::damma,
    Vowel::fathatan, Vowel::dammatan, Vowel::kasratan};

// The fourteen combinations in fixed order: seven bare vowels, bare shadda,
// then shadda with each of the six compatible vowels.
constexpr std::array<MarkCombo, 14> make_combinations() {
  std::array<MarkCombo, 14> out{};
  std::size_t k = 0;
  for (Vowel v : kLabelVowels) out[k++] = MarkCombo::of(v);
  out[k++] = MarkCombo::of(Vowel::none, true);
  for (Vowel v : kShaddaVowels) out[k++] = MarkCombo::of(v, true);
  return out;
}

inline constexpr auto kCombinations = make_combinations();

inline constexpr std::array<std::string_view, 14> kCombinationNames{
    "a", "i", "u", "o", "F", "N", "K", "~", "~a", "~i", "~u", "~F", "~N", "~K"};

constexpr std::optional<std::size_t> combination_index(const MarkCombo& m) {
  if (m.is_virtual) return std::nullopt;
  for (std::size_t k = 0; k < kCombinations.size(); ++k) {
    if (kCombinations[k] == m) return k;
  }
  return std::nullopt;
}

}  // namespace detail

// Case-ending label: one of the fourteen mark combinations or Virtual ("#").
class CeLabel {
 public:
  static constexpr std::size_t kCount = 15;
  static constexpr std::uint8_t kVirtualId = 14;

  constexpr CeLabel() = default;
  constexpr explicit CeLabel(std::uint8_t id) : id_(id) {}

  static constexpr CeLabel virtual_label() { return CeLabel(kVirtualId); }

  // None has no CE label; callers decide how empty slots are read.
  static constexpr std::optional<CeLabel> from_combo(const MarkCombo& m) {
    if (m.is_virtual) return virtual_label();
    if (auto k = detail::combination_index(m)) return CeLabel(static_cast<std::uint8_t>(*k));
    return std::nullopt;
  }

  static constexpr std::optional<CeLabel> parse(std::string_view name) {
    if (name == "#") return virtual_label();
    for (std::size_t k = 0; k < detail::kCombinationNames.size(); ++k) {
      if (detail::kCombinationNames[k] == name) return CeLabel(static_cast<std::uint8_t>(k));
    }
    return std::nullopt;
  }

  constexpr std::uint8_t id() const { return id_; }
  constexpr bool is_virtual() const { return id_ == kVirtualId; }
  constexpr MarkCombo combo() const {
    return is_virtual() ? MarkCombo::virtual_mark() : detail::kCombinations[id_];
  }
  constexpr std::string_view name() const {
    return is_virtual() ? std::string_view("#") : detail::kCombinationNames[id_];
  }

  friend constexpr bool operator==(CeLabel, CeLabel) = default;
  friend constexpr auto operator<=>(CeLabel, CeLabel) = default;

 private:
  std::uint8_t id_ = 0;
};

// Core-word label: None, the fourteen combinations, or CoreOnly, the
// placeholder trained on case-ending slots that carry no shadda.
class CwLabel {
 public:
  static constexpr std::size_t kCount = 16;
  static constexpr std::uint8_t kNoneId = 0;
  static constexpr std::uint8_t kCoreOnlyId = 15;

  constexpr CwLabel() = default;
  constexpr explicit CwLabel(std::uint8_t id) : id_(id) {}

  static constexpr CwLabel none() { return CwLabel(kNoneId); }
  static constexpr CwLabel core_only() { return CwLabel(kCoreOnlyId); }

  static constexpr CwLabel from_combo(const MarkCombo& m) {
    if (m.empty() || m.is_virtual) return none();
    if (auto k = detail::combination_index(m)) return CwLabel(static_cast<std::uint8_t>(*k + 1));
    return none();
  }

  constexpr std::uint8_t id() const { return id_; }
  constexpr bool is_core_only() const { return id_ == kCoreOnlyId; }

  // CoreOnly decodes to an empty combo.
  constexpr MarkCombo combo() const {
    if (id_ == kNoneId || id_ == kCoreOnlyId) return MarkCombo::none();
    return detail::kCombinations[id_ - 1u];
  }

  constexpr std::string_view name() const {
    if (id_ == kNoneId) return "-";
    if (id_ == kCoreOnlyId) return "*";
    return detail::kCombinationNames[id_ - 1u];
  }

  friend constexpr bool operator==(CwLabel, CwLabel) = default;

 private:
  std::uint8_t id_ = kNoneId;
};

}  // namespace harakat

#endif  // HARAKAT_LABELS_HPP
