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

#ifndef HARAKAT_CW_FEATURES_HPP
#define HARAKAT_CW_FEATURES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harakat/binary_io.hpp"
#include "harakat/codec.hpp"
#include "harakat/corpus.hpp"
#include "harakat/error.hpp"
#include "harakat/labels.hpp"
#include "harakat/morpho.hpp"
#include "harakat/nn/sample.hpp"
#include "harakat/sentence.hpp"

namespace harakat {

inline constexpr std::size_t kMaxSentenceRows = 1250;

// Reserved ids shared by every categorical vocabulary.
inline constexpr std::uint32_t kPadId = 0;
inline constexpr std::uint32_t kUnkId = 1;
inline constexpr std::uint32_t kMaskId = 2;
inline constexpr std::uint32_t kFirstValueId = 3;

enum class SegLabel : std::uint8_t { B, M, E, S, WB };

inline char seg_label_char(SegLabel s) {
  static constexpr std::array<char, 5> kChars{'B', 'M', 'E', 'S', 'W'};
  return kChars[static_cast<std::size_t>(s)];
}

inline std::vector<SegLabel> seg_labels(const Segmentation& seg) {
  std::vector<SegLabel> out;
  for (const auto& s : seg.segments()) {
    if (s.empty()) continue;
    if (s.size() == 1) {
      out.push_back(SegLabel::S);
      continue;
    }
    out.push_back(SegLabel::B);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) out.push_back(SegLabel::M);
    out.push_back(SegLabel::E);
  }
  return out;
}

// "S+BE+BMME"
inline std::string render_seg_labels(const Segmentation& seg) {
  std::string out;
  for (const auto& s : seg.segments()) {
    if (s.empty()) continue;
    if (!out.empty()) out.push_back('+');
    for (SegLabel l : seg_labels(Segmentation{{}, s, {}, {}})) out.push_back(seg_label_char(l));
  }
  return out;
}

inline std::vector<bool> case_flags(const DiacritizedWord& word, const Segmentation& seg) {
  std::vector<bool> flags(word.bare.size(), false);
  if (!word.bare.empty()) flags[std::min(seg.ce_slot(), word.bare.size() - 1)] = true;
  return flags;
}

// Sets word.ce_index from the segmentation.
inline void assign_ce_slot(DiacritizedWord& word, const Segmentation& seg) {
  if (word.bare.empty()) return;
  word.ce_index = std::min(seg.ce_slot(), word.bare.size() - 1);
}

// CW training label of one letter. The case-ending slot keeps only its
// shadda; everything else there belongs to the CE model.
inline CwLabel cw_label(const MarkCombo& mark, bool is_slot) {
  if (!is_slot) return CwLabel::from_combo(mark.is_virtual ? MarkCombo::none() : mark);
  return mark.shadda ? CwLabel::from_combo(MarkCombo::of(Vowel::none, true)) : CwLabel::core_only();
}

// ---------------------------------------------------------------------------
// Vocabularies
// ---------------------------------------------------------------------------

// Closed character vocabulary: reserved ids, then the letters seen in
// training in byte order.
class CharVocabulary {
 public:
  static constexpr std::uint32_t kWbId = 3;
  static constexpr std::uint32_t kForeignId = 4;
  static constexpr std::uint32_t kFirstLetterId = 5;

  CharVocabulary() = default;

  static CharVocabulary build(std::span<const SentenceRecord> train) {
    std::set<char> letters;
    for (const auto& s : train) {
      for (const auto& t : s.tokens) {
        if (t.arabic) letters.insert(t.word.bare.begin(), t.word.bare.end());
      }
    }
    CharVocabulary v;
    v.letters_.assign(letters.begin(), letters.end());
    v.index();
    return v;
  }

  std::uint32_t id(char letter) const {
    const auto it = ids_.find(letter);
    return it == ids_.end() ? kUnkId : it->second;
  }

  std::size_t size() const { return kFirstLetterId + letters_.size(); }
  const std::string& letters() const { return letters_; }

  std::string symbol(std::uint32_t id) const {
    switch (id) {
      case kPadId: return "<pad>";
      case kUnkId: return "<unk>";
      case kMaskId: return "<mask>";
      case kWbId: return "<wb>";
      case kForeignId: return "<foreign>";
      default: return id - kFirstLetterId < letters_.size() ? std::string(1, letters_[id - kFirstLetterId]) : "<?>";
    }
  }

  void write(BinaryWriter& w) const { w.str(letters_); }
  static CharVocabulary read(BinaryReader& r) {
    CharVocabulary v;
    v.letters_ = r.str();
    v.index();
    return v;
  }

  friend bool operator==(const CharVocabulary& a, const CharVocabulary& b) { return a.letters_ == b.letters_; }

 private:
  void index() {
    ids_.clear();
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      ids_[letters_[i]] = kFirstLetterId + static_cast<std::uint32_t>(i);
    }
  }

  std::string letters_;
  std::map<char, std::uint32_t> ids_;
};

// Column order of the CW feature rows.
enum class CwColumn : std::uint8_t { chars, seg, prior, case_flag };
inline constexpr std::size_t kCwFeatureCount = 4;

enum class CwFeatureSet : std::uint8_t { chars, char_seg, char_prior, all };

inline constexpr std::array<std::string_view, 4> kCwFeatureSetNames{"CHAR", "CHAR+SEG", "CHAR+PRIOR", "ALL"};

inline std::string_view cw_feature_set_name(CwFeatureSet s) {
  return kCwFeatureSetNames[static_cast<std::size_t>(s)];
}

inline CwFeatureSet parse_cw_feature_set(std::string_view name) {
  for (std::size_t i = 0; i < kCwFeatureSetNames.size(); ++i) {
    if (kCwFeatureSetNames[i] == name) return static_cast<CwFeatureSet>(i);
  }
  throw Error("unknown CW feature set '" + std::string(name) + "' (expected CHAR, CHAR+SEG, CHAR+PRIOR or ALL)");
}

// CASE is part of every setup.
inline std::array<bool, kCwFeatureCount> cw_live_columns(CwFeatureSet s) {
  switch (s) {
    case CwFeatureSet::chars: return {true, false, false, true};
    case CwFeatureSet::char_seg: return {true, true, false, true};
    case CwFeatureSet::char_prior: return {true, false, true, true};
    case CwFeatureSet::all: break;
  }
  return {true, true, true, true};
}

// Vocabulary sizes per column, given the character vocabulary.
inline std::vector<std::size_t> cw_vocab_sizes(const CharVocabulary& chars) {
  return {chars.size(), kFirstValueId + 5, kFirstValueId + 256, kFirstValueId + 2};
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

struct CwRow {
  std::uint32_t char_id = kPadId;
  SegLabel seg = SegLabel::WB;
  PriorBits prior = PriorBits::all();
  bool case_flag = false;
};

struct CwTokenSpan {
  std::size_t token = 0;  // index in the source sentence
  std::size_t begin = 0;  // first row
  std::size_t length = 0;
  bool arabic = false;
};

struct CwExample {
  std::vector<CwRow> rows;
  std::vector<CwLabel> labels;
  std::vector<bool> scored;  // false on WB and non-Arabic rows
  std::vector<CwTokenSpan> spans;

  std::size_t size() const { return rows.size(); }

  nn::Sample sample(CwFeatureSet set = CwFeatureSet::all) const {
    const auto live = cw_live_columns(set);
    nn::Sample s;
    s.length = rows.size();
    s.features.reserve(rows.size() * kCwFeatureCount);
    s.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const CwRow& r = rows[i];
      const std::array<std::uint32_t, kCwFeatureCount> ids{
          r.char_id, kFirstValueId + static_cast<std::uint32_t>(r.seg), kFirstValueId + r.prior.raw(),
          kFirstValueId + (r.case_flag ? 1u : 0u)};
      for (std::size_t c = 0; c < kCwFeatureCount; ++c) s.features.push_back(live[c] ? ids[c] : kMaskId);
      s.labels.push_back(scored[i] ? static_cast<std::int32_t>(labels[i].id()) : nn::kIgnoreLabel);
    }
    return s;
  }
};

class CwEncoder {
 public:
  CwEncoder(const CharVocabulary& chars, const PriorTable& priors, std::size_t max_rows = kMaxSentenceRows)
      : chars_(&chars), priors_(&priors), max_rows_(max_rows) {}

  // Encodes a sentence with its annotations, splitting it at word boundaries
  // into chunks of at most max_rows rows.
  std::vector<CwExample> encode(const SentenceRecord& s, std::span<const MorphoAnnotation> annotations) const {
    if (annotations.size() != s.tokens.size()) {
      throw ShapeMismatch("annotation count differs from token count");
    }
    std::vector<CwExample> out;
    std::size_t t = 0;
    while (t < s.tokens.size()) {
      std::size_t end = t;
      std::size_t rows = 0;
      while (end < s.tokens.size()) {
        const std::size_t need = token_rows(s.tokens[end]) + (end > t ? 1 : 0);
        if (rows + need > max_rows_) break;
        rows += need;
        ++end;
      }
      if (end == t) throw TokenTooLong("token " + std::to_string(t) + " needs " + std::to_string(token_rows(s.tokens[t])) +
                                             " rows, limit is " + std::to_string(max_rows_));
      out.push_back(encode_range(s, annotations, t, end));
      t = end;
    }
    return out;
  }

  std::vector<CwExample> encode(const SentenceRecord& s, const Annotator& annotator) const {
    const auto annotations = annotator.annotate(s);
    return encode(s, annotations);
  }

  std::size_t max_rows() const { return max_rows_; }

 private:
  static std::size_t token_rows(const Token& t) { return t.arabic ? t.word.bare.size() : 1; }

  CwExample encode_range(const SentenceRecord& s, std::span<const MorphoAnnotation> annotations,
                         std::size_t first, std::size_t last) const {
    CwExample ex;
    for (std::size_t t = first; t < last; ++t) {
      if (t > first) {
        ex.rows.push_back(CwRow{CharVocabulary::kWbId, SegLabel::WB, PriorBits::all(), false});
        ex.labels.push_back(CwLabel::none());
        ex.scored.push_back(false);
      }
      const Token& token = s.tokens[t];
      CwTokenSpan span{t, ex.rows.size(), token_rows(token), token.arabic};
      if (!token.arabic) {
        ex.rows.push_back(CwRow{CharVocabulary::kForeignId, SegLabel::S, PriorBits::all(), false});
        ex.labels.push_back(CwLabel::none());
        ex.scored.push_back(false);
        ex.spans.push_back(span);
        continue;
      }
      const Segmentation& seg = annotations[t].segmentation;
      const std::string& bare = token.word.bare;
      if (seg.joined() != bare) {
        throw AnnotationMismatch("segmentation '" + seg.render() + "' does not spell '" + bare + "'");
      }
      const auto segs = seg_labels(seg);
      const auto prior = priors_->lookup_word(seg);
      const auto flags = case_flags(token.word, seg);
      for (std::size_t i = 0; i < bare.size(); ++i) {
        ex.rows.push_back(CwRow{chars_->id(bare[i]), segs[i], prior[i], flags[i]});
        ex.labels.push_back(cw_label(token.word.marks[i], flags[i]));
        ex.scored.push_back(true);
      }
      ex.spans.push_back(span);
    }
    return ex;
  }

  const CharVocabulary* chars_;
  const PriorTable* priors_;
  std::size_t max_rows_;
};

// Debug dump: char, seg, prior bits, case flag, label.
inline void dump_cw_example(std::ostream& out, const CwExample& ex, const CharVocabulary& chars) {
  out << "char\tseg\tprior\tcase\tlabel\n";
  for (std::size_t i = 0; i < ex.rows.size(); ++i) {
    const CwRow& r = ex.rows[i];
    out << chars.symbol(r.char_id) << '\t'
        << (r.seg == SegLabel::WB ? std::string("WB") : std::string(1, seg_label_char(r.seg))) << '\t'
        << r.prior.str() << '\t' << (r.case_flag ? 1 : 0) << '\t'
        << (ex.scored[i] ? std::string(ex.labels[i].name()) : std::string("_")) << '\n';
  }
}

}  // namespace harakat

#endif  // HARAKAT_CW_FEATURES_HPP
