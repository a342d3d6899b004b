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

#ifndef HARAKAT_TESTS_SYNTHETIC_HPP
#define HARAKAT_TESTS_SYNTHETIC_HPP

// Synthetic diacritized corpus in TSV form with gold segmentation and POS.
//
// Every root appears as "b/l + noun" (PREP reading) and as a four-letter verb
// starting with the same letter, so the bare forms collide. The two readings
// differ in core marks and in case ending; the context is random, so only the
// segment structure (CW) or the prefix/POS fields (CE) can tell them apart.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace harakat::testing {

struct SyntheticWord {
  std::string diacritized;
  std::string segmentation;
  std::string pos;
  std::string gender_number;
};

struct SyntheticOptions {
  std::size_t sentences = 2000;
  std::size_t min_words = 3;
  std::size_t max_words = 6;
  std::size_t roots = 40;
  double homograph_share = 0.5;
  double punctuation_share = 0.3;
};

class SyntheticLanguage {
 public:
  explicit SyntheticLanguage(std::uint64_t lexicon_seed, std::size_t root_count = 40) {
    static constexpr char kConsonants[] = {'k', 't', 'd', 'r', 's', 'm', 'n', 'q', 'f', 'j',
                                           'H', 'E', 'z', '$', 'S', 'D', 'T', 'g', 'x', 'h'};
    static constexpr char kVowels[] = {'a', 'i', 'u'};
    std::mt19937_64 rng(lexicon_seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    while (roots_.size() < root_count) {
      Root r;
      for (char& c : r.letters) c = kConsonants[pick(sizeof kConsonants)];
      if (r.letters[0] == r.letters[1] || r.letters[1] == r.letters[2]) continue;
      bool dup = false;
      for (const auto& o : roots_) dup = dup || o.letters == r.letters;
      if (dup) continue;
      r.v1 = kVowels[pick(3)];
      r.v2 = kVowels[pick(3)];
      roots_.push_back(r);
    }
  }

  std::size_t root_count() const { return roots_.size(); }

  // PREP + noun: "bi" + C1 v1 C2 v2 C3 + genitive.
  SyntheticWord prep_noun(std::size_t root, char prep) const {
    const Root& r = roots_[root];
    const std::string stem = stem_letters(r);
    return {std::string(1, prep) + "i" + noun_core(r) + "i", std::string(1, prep) + "+" + stem, "PREP+NOUN",
            "m/sg"};
  }

  // Four-letter verb: prep letter + root, pattern CaCoCaCa.
  SyntheticWord verb(std::size_t root, char first) const {
    const Root& r = roots_[root];
    std::string d;
    d += first;
    d += 'a';
    d += r.letters[0];
    d += 'o';
    d += r.letters[1];
    d += 'a';
    d += r.letters[2];
    d += 'a';
    return {d, std::string(1, first) + stem_letters(r), "VERB", "m/sg"};
  }

  SyntheticWord definite_noun(std::size_t root) const {
    const Root& r = roots_[root];
    return {"Alo" + noun_core(r) + "u", "Al+" + stem_letters(r), "DET+NOUN", "m/sg"};
  }

  SyntheticWord indefinite_noun(std::size_t root) const {
    const Root& r = roots_[root];
    return {noun_core(r) + "N", stem_letters(r), "NOUN", "m/sg"};
  }

  SyntheticWord feminine_noun(std::size_t root) const {
    const Root& r = roots_[root];
    std::string core = noun_core(r);
    return {core + "apF", stem_letters(r) + "+p", "NOUN+NSUFF", "f/sg"};
  }

  SyntheticWord noun_with_pronoun(std::size_t root) const {
    const Root& r = roots_[root];
    return {noun_core(r) + "uhu", stem_letters(r) + "+h", "NOUN+PRON", "m/sg"};
  }

  static SyntheticWord punctuation() { return {".", ".", "PUNC", "_"}; }

  // TSV text: token, diacritized, segmentation, POS, gender/number.
  std::string corpus_tsv(std::uint64_t seed, const SyntheticOptions& o = {}) const {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::string out;
    for (std::size_t s = 0; s < o.sentences; ++s) {
      if (s > 0) out += "\n";
      const std::size_t n = o.min_words + static_cast<std::size_t>(rng() % (o.max_words - o.min_words + 1));
      for (std::size_t w = 0; w < n; ++w) {
        const std::size_t root = static_cast<std::size_t>(rng() % roots_.size());
        SyntheticWord word;
        if (uniform() < o.homograph_share) {
          const char prep = rng() % 2 == 0 ? 'b' : 'l';
          word = rng() % 2 == 0 ? prep_noun(root, prep) : verb(root, prep);
        } else {
          switch (rng() % 4) {
            case 0: word = definite_noun(root); break;
            case 1: word = indefinite_noun(root); break;
            case 2: word = feminine_noun(root); break;
            default: word = noun_with_pronoun(root); break;
          }
        }
        out += row(word);
      }
      if (uniform() < o.punctuation_share) out += row(punctuation());
    }
    return out;
  }

  static std::string row(const SyntheticWord& w) {
    std::string bare;
    for (char c : w.diacritized) {
      if (std::string_view("aiuoFNK~").find(c) == std::string_view::npos) bare.push_back(c);
    }
    return bare + "\t" + w.diacritized + "\t" + w.segmentation + "\t" + w.pos + "\t" + w.gender_number + "\n";
  }

 private:
  struct Root {
    std::array<char, 3> letters{};
    char v1 = 'a', v2 = 'a';
  };

  static std::string stem_letters(const Root& r) { return {r.letters[0], r.letters[1], r.letters[2]}; }

  // C1 v1 C2 v2 C3 (case ending appended by the caller).
  static std::string noun_core(const Root& r) {
    return {r.letters[0], r.v1, r.letters[1], r.v2, r.letters[2]};
  }

  std::vector<Root> roots_;
};

}  // namespace harakat::testing

#endif  // HARAKAT_TESTS_SYNTHETIC_HPP
