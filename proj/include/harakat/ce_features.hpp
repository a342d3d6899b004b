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

#ifndef HARAKAT_CE_FEATURES_HPP
#define HARAKAT_CE_FEATURES_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harakat/binary_io.hpp"
#include "harakat/codec.hpp"
#include "harakat/cw_features.hpp"
#include "harakat/error.hpp"
#include "harakat/labels.hpp"
#include "harakat/morpho.hpp"
#include "harakat/nn/sample.hpp"
#include "harakat/relaxed.hpp"
#include "harakat/sentence.hpp"
#include "harakat/utf8.hpp"

namespace harakat {

enum class CeField : std::uint8_t {
  word,
  word_pos,
  gender_number,
  stem,
  stem_pos,
  prefixes,
  prefix_pos,
  suffixes,
  suffix_pos,
  stem_template,
  word_head_uni,
  word_head_bi,
  word_tail_uni,
  word_tail_bi,
  stem_head_uni,
  stem_head_bi,
  stem_tail_uni,
  stem_tail_bi,
  is_sukun_word,
  is_named_entity,
};

inline constexpr std::size_t kCeFieldCount = 20;

inline constexpr std::array<std::string_view, kCeFieldCount> kCeFieldNames{
    "word",          "word_pos",      "gender_number", "stem",          "stem_pos",
    "prefixes",      "prefix_pos",    "suffixes",      "suffix_pos",    "stem_template",
    "word_head_uni", "word_head_bi",  "word_tail_uni", "word_tail_bi",  "stem_head_uni",
    "stem_head_bi",  "stem_tail_uni", "stem_tail_bi",  "is_sukun_word", "is_named_entity"};

enum class FeatureSet : std::uint8_t { word, word_surface, word_pos, word_morph, word_surface_pos_morph, all_misc };

inline constexpr std::array<std::string_view, 6> kFeatureSetNames{
    "word", "word-surface", "word-POS", "word-morph", "word-surface-POS-morph", "all-misc"};

inline constexpr std::array<FeatureSet, 6> kAllFeatureSets{
    FeatureSet::word,       FeatureSet::word_surface,           FeatureSet::word_pos,
    FeatureSet::word_morph, FeatureSet::word_surface_pos_morph, FeatureSet::all_misc};

inline std::string_view feature_set_name(FeatureSet s) { return kFeatureSetNames[static_cast<std::size_t>(s)]; }

inline FeatureSet parse_feature_set(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureSetNames.size(); ++i) {
    if (kFeatureSetNames[i] == name) return static_cast<FeatureSet>(i);
  }
  throw Error("unknown feature set '" + std::string(name) + "'");
}

inline std::array<bool, kCeFieldCount> live_fields(FeatureSet s) {
  using F = CeField;
  std::array<bool, kCeFieldCount> live{};
  auto on = [&](std::initializer_list<F> fields) {
    for (F f : fields) live[static_cast<std::size_t>(f)] = true;
  };
  const bool surface = s == FeatureSet::word_surface || s == FeatureSet::word_surface_pos_morph;
  const bool pos = s == FeatureSet::word_pos || s == FeatureSet::word_surface_pos_morph;
  const bool morph = s == FeatureSet::word_morph || s == FeatureSet::word_surface_pos_morph;
  on({F::word});
  if (surface) on({F::stem, F::prefixes, F::suffixes});
  if (pos) on({F::word_pos, F::stem_pos, F::prefix_pos, F::suffix_pos, F::gender_number});
  if (morph) on({F::stem_template});
  if (s == FeatureSet::all_misc) live.fill(true);
  return live;
}

// ---------------------------------------------------------------------------
// Word lists
// ---------------------------------------------------------------------------

using WordSet = std::set<std::string, std::less<>>;

struct CeWordLists {
  WordSet sukun_words;
  WordSet named_entities;
};

// One entry per line, Arabic script or Buckwalter; diacritics are dropped.
inline WordSet load_ne_gazetteer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open gazetteer " + path.string());
  WordSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto decoded = utf8::decode(line);
    if (!decoded) throw EncodingError(line_no);
    bool arabic = false;
    for (char32_t cp : *decoded) arabic = arabic || in_arabic_block(cp);
    const Token t = make_token(line, arabic ? TextEncoding::arabic : TextEncoding::buckwalter);
    out.insert(t.bare());
  }
  return out;
}

// Bare words seen at least `threshold` times in training whose case ending
// was sukun every time.
inline WordSet build_sukun_list(std::span<const SentenceRecord> train, const Annotator& annotator,
                                std::size_t threshold = 3) {
  const CeLabel sukun = *CeLabel::from_combo(MarkCombo::of(Vowel::sukun));
  std::map<std::string, std::pair<std::size_t, bool>, std::less<>> seen;
  for (const auto& s : train) {
    const auto annotations = annotator.annotate(s);
    for (std::size_t t = 0; t < s.tokens.size(); ++t) {
      if (!s.tokens[t].arabic) continue;
      DiacritizedWord w = s.tokens[t].word;
      assign_ce_slot(w, annotations[t].segmentation);
      auto& [count, always] = seen.try_emplace(w.bare, 0, true).first->second;
      ++count;
      always = always && case_label(w) == sukun;
    }
  }
  WordSet out;
  for (const auto& [word, stats] : seen) {
    if (stats.second && stats.first >= threshold) out.insert(word);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature values
// ---------------------------------------------------------------------------

using CeValues = std::array<std::string, kCeFieldCount>;

inline constexpr std::string_view kEmptyValue = "-";
inline constexpr char kBoundary = '^';

namespace detail {

inline std::vector<std::string> characters(std::string_view text) {
  std::vector<std::string> out;
  const auto decoded = utf8::decode(text);
  if (!decoded) {
    for (char c : text) out.emplace_back(1, c);
    return out;
  }
  for (char32_t cp : *decoded) {
    std::string s;
    utf8::append(s, cp);
    out.push_back(std::move(s));
  }
  return out;
}

struct HeadTail {
  std::string head_uni, head_bi, tail_uni, tail_bi;
};

// Length-1 strings pad their bigrams with a boundary symbol.
inline HeadTail head_tail(std::string_view text) {
  const auto chars = characters(text);
  if (chars.empty()) return {std::string(kEmptyValue), std::string(kEmptyValue), std::string(kEmptyValue),
                             std::string(kEmptyValue)};
  HeadTail h;
  const std::size_t n = chars.size();
  h.head_uni = chars.front();
  h.tail_uni = chars.back();
  if (n == 1) {
    h.head_bi = std::string(1, kBoundary) + chars.front();
    h.tail_bi = chars.back() + std::string(1, kBoundary);
  } else {
    h.head_bi = chars[0] + chars[1];
    h.tail_bi = chars[n - 2] + chars[n - 1];
  }
  return h;
}

inline std::string join_or_empty(const std::vector<std::string>& parts, std::string_view lead = "") {
  if (parts.empty()) return std::string(kEmptyValue);
  std::string out(lead);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back('+');
    out += parts[i];
  }
  return out;
}

}  // namespace detail

inline CeValues ce_values(const Token& token, const MorphoAnnotation& a, const CeWordLists& lists) {
  using F = CeField;
  CeValues v;
  auto set = [&](F f, std::string value) { v[static_cast<std::size_t>(f)] = std::move(value); };
  const std::string& word = token.bare();
  const std::string stem = token.arabic ? a.segmentation.extended_stem() : word;
  set(F::word, word);
  set(F::word_pos, a.word_pos);
  set(F::gender_number, a.gender_number());
  set(F::stem, stem);
  set(F::stem_pos, a.stem_pos);
  set(F::prefixes, detail::join_or_empty(a.segmentation.prefixes));
  set(F::prefix_pos, detail::join_or_empty(a.prefix_pos));
  set(F::suffixes, detail::join_or_empty(a.segmentation.suffixes, "+"));
  set(F::suffix_pos, detail::join_or_empty(a.suffix_pos));
  set(F::stem_template, a.stem_template);
  const auto wh = detail::head_tail(word);
  const auto sh = detail::head_tail(stem);
  set(F::word_head_uni, wh.head_uni);
  set(F::word_head_bi, wh.head_bi);
  set(F::word_tail_uni, wh.tail_uni);
  set(F::word_tail_bi, wh.tail_bi);
  set(F::stem_head_uni, sh.head_uni);
  set(F::stem_head_bi, sh.head_bi);
  set(F::stem_tail_uni, sh.tail_uni);
  set(F::stem_tail_bi, sh.tail_bi);
  const bool arabic = token.arabic;
  set(F::is_sukun_word, arabic && lists.sukun_words.contains(word) ? "1" : "0");
  set(F::is_named_entity, arabic && lists.named_entities.contains(word) ? "1" : "0");
  return v;
}

// Reference case-ending label of a token under its annotation.
inline CeLabel reference_ce_label(const Token& token, const MorphoAnnotation& a) {
  if (!token.arabic) return CeLabel::virtual_label();
  DiacritizedWord w = token.word;
  assign_ce_slot(w, a.segmentation);
  return case_label(w);
}

// Per-field value vocabularies: reserved PAD/UNK/MASK, then values in byte
// order. Boolean fields always hold "0" and "1".
class CeVocabulary {
 public:
  using FieldMap = std::map<std::string, std::uint32_t, std::less<>>;

  static CeVocabulary build(std::span<const CeValues> rows) {
    std::array<std::set<std::string>, kCeFieldCount> values;
    for (const auto& r : rows) {
      for (std::size_t f = 0; f < kCeFieldCount; ++f) values[f].insert(r[f]);
    }
    for (auto f : {CeField::is_sukun_word, CeField::is_named_entity}) {
      values[static_cast<std::size_t>(f)].insert({"0", "1"});
    }
    CeVocabulary v;
    for (std::size_t f = 0; f < kCeFieldCount; ++f) {
      std::uint32_t id = kFirstValueId;
      for (const auto& s : values[f]) v.fields_[f].emplace(s, id++);
    }
    return v;
  }

  std::uint32_t id(CeField field, std::string_view value) const {
    const auto& m = fields_[static_cast<std::size_t>(field)];
    const auto it = m.find(value);
    return it == m.end() ? kUnkId : it->second;
  }

  std::size_t size(CeField field) const { return kFirstValueId + fields_[static_cast<std::size_t>(field)].size(); }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < kCeFieldCount; ++f) out.push_back(kFirstValueId + fields_[f].size());
    return out;
  }

  const FieldMap& field(CeField f) const { return fields_[static_cast<std::size_t>(f)]; }

  void write(BinaryWriter& w) const {
    w.u32(static_cast<std::uint32_t>(kCeFieldCount));
    for (const auto& m : fields_) {
      w.u64(m.size());
      for (const auto& [value, id] : m) {
        w.str(value);
        w.u32(id);
      }
    }
  }

  static CeVocabulary read(BinaryReader& r) {
    if (r.u32() != kCeFieldCount) throw FormatError("CE vocabulary field count mismatch");
    CeVocabulary v;
    for (auto& m : v.fields_) {
      const std::uint64_t n = r.u64();
      for (std::uint64_t i = 0; i < n; ++i) {
        std::string value = r.str();
        m.emplace(std::move(value), r.u32());
      }
    }
    return v;
  }

  friend bool operator==(const CeVocabulary&, const CeVocabulary&) = default;

 private:
  std::array<FieldMap, kCeFieldCount> fields_;
};

struct CeExample {
  std::vector<CeValues> values;  // one per token
  std::vector<CeLabel> labels;
  std::vector<bool> arabic;

  std::size_t size() const { return values.size(); }
};

inline CeExample encode_ce(const SentenceRecord& s, std::span<const MorphoAnnotation> annotations,
                           const CeWordLists& lists) {
  if (annotations.size() != s.tokens.size()) throw ShapeMismatch("annotation count differs from token count");
  CeExample ex;
  for (std::size_t t = 0; t < s.tokens.size(); ++t) {
    ex.values.push_back(ce_values(s.tokens[t], annotations[t], lists));
    ex.labels.push_back(reference_ce_label(s.tokens[t], annotations[t]));
    ex.arabic.push_back(s.tokens[t].arabic);
  }
  return ex;
}

// Field ids of one row with the fields outside the selector masked.
inline std::array<std::uint32_t, kCeFieldCount> extract_ce_row(const CeValues& values, const CeVocabulary& vocab,
                                                              FeatureSet selector = FeatureSet::all_misc) {
  const auto live = live_fields(selector);
  std::array<std::uint32_t, kCeFieldCount> ids{};
  for (std::size_t f = 0; f < kCeFieldCount; ++f) {
    ids[f] = live[f] ? vocab.id(static_cast<CeField>(f), values[f]) : kMaskId;
  }
  return ids;
}

// Every token is scored, non-Arabic ones with the virtual label.
inline nn::Sample ce_sample(const CeExample& ex, const CeVocabulary& vocab, FeatureSet selector) {
  nn::Sample s;
  s.length = ex.size();
  s.features.reserve(ex.size() * kCeFieldCount);
  for (std::size_t t = 0; t < ex.size(); ++t) {
    const auto ids = extract_ce_row(ex.values[t], vocab, selector);
    s.features.insert(s.features.end(), ids.begin(), ids.end());
    s.labels.push_back(static_cast<std::int32_t>(ex.labels[t].id()));
  }
  return s;
}

inline void dump_ce_example(std::ostream& out, const CeExample& ex) {
  for (std::size_t f = 0; f < kCeFieldCount; ++f) out << kCeFieldNames[f] << '\t';
  out << "label\n";
  for (std::size_t t = 0; t < ex.size(); ++t) {
    for (const auto& v : ex.values[t]) out << v << '\t';
    out << ex.labels[t].name() << '\n';
  }
}

}  // namespace harakat

#endif  // HARAKAT_CE_FEATURES_HPP
