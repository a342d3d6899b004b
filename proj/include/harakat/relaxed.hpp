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

#ifndef HARAKAT_RELAXED_HPP
#define HARAKAT_RELAXED_HPP

#include "harakat/codec.hpp"
#include "harakat/labels.hpp"

namespace harakat {

// Slot letters on which an empty or sukun case ending reads as the virtual
// marker: word-final long vowels and alef forms.
constexpr bool virtual_slot_letter(char letter) {
  return letter == 'A' || letter == 'Y' || letter == '|' || letter == '`' || letter == 'w' ||
         letter == 'y';
}

// Case-ending label of a word with an assigned slot. Empty slots read as
// sukun (or virtual on long-vowel letters).
inline CeLabel case_label(const DiacritizedWord& w) {
  if (!w.ce_index || *w.ce_index >= w.bare.size()) return CeLabel::virtual_label();
  const std::size_t slot = *w.ce_index;
  const MarkCombo& m = w.marks[slot];
  if (m.is_virtual) return CeLabel::virtual_label();
  const bool empty_or_sukun = m.empty() || m == MarkCombo::of(Vowel::sukun);
  if (empty_or_sukun && virtual_slot_letter(w.bare[slot])) return CeLabel::virtual_label();
  if (m.empty()) return *CeLabel::from_combo(MarkCombo::of(Vowel::sukun));
  return *CeLabel::from_combo(m);
}

// Relaxed scoring normalization: the case-ending slot is replaced by its
// label (empty == sukun), and the default diacritics fatHa+alef, kasra+ya and
// damma+waw are removed from every other letter. Idempotent; bare letters are
// untouched.
inline DiacritizedWord relaxed_normalize(DiacritizedWord w) {
  const std::size_t n = w.bare.size();
  if (w.ce_index && *w.ce_index < n) w.marks[*w.ce_index] = case_label(w).combo();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (w.ce_index == i) continue;
    MarkCombo& m = w.marks[i];
    const char next = w.bare[i + 1];
    if ((m.vowel == Vowel::fatha && next == 'A') || (m.vowel == Vowel::kasra && next == 'y') ||
        (m.vowel == Vowel::damma && next == 'w')) {
      m.vowel = Vowel::none;
    }
  }
  return w;
}

}  // namespace harakat

#endif  // HARAKAT_RELAXED_HPP
