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

#ifndef HARAKAT_POSTCORRECT_HPP
#define HARAKAT_POSTCORRECT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "harakat/codec.hpp"
#include "harakat/corpus.hpp"
#include "harakat/relaxed.hpp"

namespace harakat {

struct CorrectionPolicy {
  bool enabled = true;
};

// Core form used for comparison: relaxed marks everywhere except the
// case-ending slot, which keeps only its shadda.
inline std::string core_key(const DiacritizedWord& word, std::optional<std::size_t> slot) {
  DiacritizedWord w = word;
  w.ce_index = slot;
  const bool slot_shadda = slot && *slot < w.marks.size() && w.marks[*slot].shadda;
  w = relaxed_normalize(std::move(w));
  if (slot && *slot < w.marks.size()) w.marks[*slot] = MarkCombo::of(Vowel::none, slot_shadda);
  return recompose(w);
}

// Replaces a core form never seen with this bare word by the most frequent
// seen one (counts aggregated per core form; ties go to the lexicographically
// smallest form). The case-ending vowel of the prediction is kept.
inline DiacritizedWord post_correct(const DiacritizedWord& predicted, const Lexicon& lex) {
  const Lexicon::Forms* forms = lex.forms(predicted.bare);
  if (forms == nullptr) return predicted;
  const auto slot = predicted.ce_index;

  struct Group {
    std::uint64_t total = 0;
    std::string best_form;
    std::uint32_t best_count = 0;
  };
  std::map<std::string, Group> groups;
  for (const auto& [form, count] : *forms) {
    DiacritizedWord w = decompose(form);
    Group& g = groups[core_key(w, slot)];
    g.total += count;
    if (count > g.best_count) {  // forms iterate in lexicographic order
      g.best_count = count;
      g.best_form = form;
    }
  }
  if (groups.contains(core_key(predicted, slot))) return predicted;

  const Group* winner = nullptr;
  for (const auto& [key, g] : groups) {
    if (winner == nullptr || g.total > winner->total ||
        (g.total == winner->total && g.best_form < winner->best_form)) {
      winner = &g;
    }
  }
  DiacritizedWord out = decompose(winner->best_form);
  out.ce_index = slot;
  if (slot && *slot < out.marks.size()) {
    const bool shadda = out.marks[*slot].shadda;
    MarkCombo m = predicted.marks[*slot];
    if (m.is_virtual) {
      m = shadda ? MarkCombo::of(Vowel::none, true) : MarkCombo::virtual_mark();
    } else {
      m.shadda = shadda && m.vowel != Vowel::sukun;
    }
    out.marks[*slot] = m;
  }
  return out;
}

inline DiacritizedWord post_correct(const DiacritizedWord& predicted, const Lexicon& lex,
                                    const CorrectionPolicy& policy) {
  return policy.enabled ? post_correct(predicted, lex) : predicted;
}

}  // namespace harakat

#endif  // HARAKAT_POSTCORRECT_HPP
