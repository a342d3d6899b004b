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

#ifndef HARAKAT_EVAL_HPP
#define HARAKAT_EVAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "harakat/codec.hpp"
#include "harakat/cw_features.hpp"
#include "harakat/error.hpp"
#include "harakat/labels.hpp"
#include "harakat/morpho.hpp"
#include "harakat/relaxed.hpp"
#include "harakat/sentence.hpp"

namespace harakat {

enum class ScoreMode : std::uint8_t { cw, ce, full };

inline std::string_view score_mode_name(ScoreMode m) {
  switch (m) {
    case ScoreMode::cw: return "cw";
    case ScoreMode::ce: return "ce";
    case ScoreMode::full: break;
  }
  return "full";
}

inline ScoreMode parse_score_mode(std::string_view s) {
  if (s == "cw") return ScoreMode::cw;
  if (s == "ce") return ScoreMode::ce;
  if (s == "full") return ScoreMode::full;
  throw Error("unknown scoring mode '" + std::string(s) + "' (expected cw, ce or full)");
}

struct ScoreReport {
  ScoreMode mode = ScoreMode::full;
  std::uint64_t token_count = 0;
  std::uint64_t error_count = 0;
  std::uint64_t letter_count = 0;  // DER denominator: every letter of every Arabic token
  std::uint64_t letter_errors = 0;

  double wer() const { return token_count == 0 ? 0.0 : static_cast<double>(error_count) / token_count; }
  double der() const { return letter_count == 0 ? 0.0 : static_cast<double>(letter_errors) / letter_count; }
  double ceer() const { return wer(); }
  bool has_der() const { return mode != ScoreMode::ce; }
};

using ConfusionMatrix = std::array<std::array<std::uint64_t, CeLabel::kCount>, CeLabel::kCount>;

struct ConfusionReport {
  ConfusionMatrix matrix{};  // [reference][hypothesis]

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& row : matrix) {
      for (auto c : row) n += c;
    }
    return n;
  }
  std::uint64_t errors() const {
    std::uint64_t n = 0;
    for (std::size_t r = 0; r < CeLabel::kCount; ++r) {
      for (std::size_t h = 0; h < CeLabel::kCount; ++h) n += r == h ? 0 : matrix[r][h];
    }
    return n;
  }
  std::uint64_t reference_count(std::size_t label) const {
    std::uint64_t n = 0;
    for (auto c : matrix[label]) n += c;
    return n;
  }
};

// A token pair after alignment: relaxed-normalized words with the slot taken
// from the reference annotation.
struct AlignedToken {
  bool arabic = false;
  DiacritizedWord ref, hyp;
};

// Aligns two corpora token by token and applies the relaxed rules.
inline std::vector<std::vector<AlignedToken>> align(std::span<const SentenceRecord> ref,
                                                    std::span<const SentenceRecord> hyp,
                                                    const Annotator& annotator) {
  if (ref.size() != hyp.size()) {
    throw AlignmentError(std::min(ref.size(), hyp.size()), 0,
                         "reference has " + std::to_string(ref.size()) + " sentences, hypothesis " +
                             std::to_string(hyp.size()));
  }
  std::vector<std::vector<AlignedToken>> out(ref.size());
  for (std::size_t s = 0; s < ref.size(); ++s) {
    const auto& rt = ref[s].tokens;
    const auto& ht = hyp[s].tokens;
    if (rt.size() != ht.size()) {
      throw AlignmentError(s, std::min(rt.size(), ht.size()),
                           "token counts differ (" + std::to_string(rt.size()) + " vs " +
                               std::to_string(ht.size()) + ")");
    }
    const auto annotations = annotator.annotate(ref[s]);
    for (std::size_t t = 0; t < rt.size(); ++t) {
      if (rt[t].arabic != ht[t].arabic || rt[t].bare() != ht[t].bare()) {
        throw AlignmentError(s, t, "'" + rt[t].bare() + "' vs '" + ht[t].bare() + "'");
      }
      AlignedToken a;
      a.arabic = rt[t].arabic;
      if (a.arabic) {
        a.ref = rt[t].word;
        a.hyp = ht[t].word;
        assign_ce_slot(a.ref, annotations[t].segmentation);
        a.hyp.ce_index = a.ref.ce_index;
        a.ref = relaxed_normalize(std::move(a.ref));
        a.hyp = relaxed_normalize(std::move(a.hyp));
      }
      out[s].push_back(std::move(a));
    }
  }
  return out;
}

inline ScoreReport score(std::span<const SentenceRecord> ref, std::span<const SentenceRecord> hyp, ScoreMode mode,
                         const Annotator& annotator) {
  ScoreReport r;
  r.mode = mode;
  for (const auto& sentence : align(ref, hyp, annotator)) {
    for (const auto& a : sentence) {
      if (!a.arabic) {
        if (mode == ScoreMode::ce) ++r.token_count;  // virtual on both sides
        continue;
      }
      ++r.token_count;
      const std::size_t slot = *a.ref.ce_index;
      std::size_t core_errors = 0;
      for (std::size_t i = 0; i < a.ref.bare.size(); ++i) {
        if (i != slot && a.ref.marks[i] != a.hyp.marks[i]) ++core_errors;
      }
      const bool ce_error = case_label(a.ref) != case_label(a.hyp);
      switch (mode) {
        case ScoreMode::cw:
          r.letter_count += a.ref.bare.size();
          r.letter_errors += core_errors;
          r.error_count += core_errors > 0 ? 1 : 0;
          break;
        case ScoreMode::ce:
          r.error_count += ce_error ? 1 : 0;
          break;
        case ScoreMode::full:
          r.letter_count += a.ref.bare.size();
          r.letter_errors += core_errors + (ce_error ? 1 : 0);
          r.error_count += core_errors > 0 || ce_error ? 1 : 0;
          break;
      }
    }
  }
  return r;
}

inline ConfusionReport confusion(std::span<const SentenceRecord> ref, std::span<const SentenceRecord> hyp,
                                 const Annotator& annotator) {
  ConfusionReport c;
  for (const auto& sentence : align(ref, hyp, annotator)) {
    for (const auto& a : sentence) {
      const CeLabel r = a.arabic ? case_label(a.ref) : CeLabel::virtual_label();
      const CeLabel h = a.arabic ? case_label(a.hyp) : CeLabel::virtual_label();
      ++c.matrix[r.id()][h.id()];
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

struct ErrorRow {
  std::string label;  // "a => u" or "a <=> u"
  std::uint64_t count = 0;
  double share = 0.0;  // percent of all errors
};

// Off-diagonal pairs, both directions of a pair merged into one "<=>" row
// when both occur; sorted by count, then label order.
inline std::vector<ErrorRow> error_rows(const ConfusionReport& c, bool ascii = false) {
  const std::string both = ascii ? " <=> " : " ⇔ ";
  const std::string one = ascii ? " => " : " ⇒ ";
  struct Key {
    std::size_t a, b;
  };
  std::vector<std::pair<Key, ErrorRow>> rows;
  const double total = static_cast<double>(c.errors());
  for (std::size_t a = 0; a < CeLabel::kCount; ++a) {
    for (std::size_t b = a + 1; b < CeLabel::kCount; ++b) {
      const auto ab = c.matrix[a][b];
      const auto ba = c.matrix[b][a];
      const std::string na(CeLabel(static_cast<std::uint8_t>(a)).name());
      const std::string nb(CeLabel(static_cast<std::uint8_t>(b)).name());
      if (ab > 0 && ba > 0) {
        rows.push_back({{a, b}, {na + both + nb, ab + ba, 0.0}});
      } else if (ab > 0) {
        rows.push_back({{a, b}, {na + one + nb, ab, 0.0}});
      } else if (ba > 0) {
        rows.push_back({{b, a}, {nb + one + na, ba, 0.0}});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.second.count > y.second.count; });
  std::vector<ErrorRow> out;
  for (auto& [key, row] : rows) {
    row.share = total == 0.0 ? 0.0 : 100.0 * static_cast<double>(row.count) / total;
    out.push_back(std::move(row));
  }
  return out;
}

inline std::string format_rate(double v, int precision = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

inline void write_score_text(std::ostream& out, const ScoreReport& r) {
  out << "# relaxed scoring; DER denominator = all letters of Arabic tokens\n";
  out << "mode: " << score_mode_name(r.mode) << '\n';
  out << "tokens: " << r.token_count << '\n';
  out << "errors: " << r.error_count << '\n';
  if (r.mode == ScoreMode::ce) {
    out << "CEER: " << format_rate(r.ceer()) << '\n';
  } else {
    out << "WER: " << format_rate(r.wer()) << '\n';
    out << "DER: " << format_rate(r.der()) << " (" << r.letter_errors << '/' << r.letter_count << ")\n";
  }
}

inline void write_score_tsv(std::ostream& out, const ScoreReport& r) {
  out << "mode\ttokens\terrors\twer\tletters\tletter_errors\tder\n";
  out << score_mode_name(r.mode) << '\t' << r.token_count << '\t' << r.error_count << '\t' << format_rate(r.wer(), 6)
      << '\t' << r.letter_count << '\t' << r.letter_errors << '\t'
      << (r.has_der() ? format_rate(r.der(), 6) : std::string("NA")) << '\n';
}

inline void write_confusion_text(std::ostream& out, const ConfusionReport& c) {
  out << "Error\tCount\t%\n";
  for (const auto& row : error_rows(c)) {
    out << row.label << '\t' << row.count << '\t' << format_rate(row.share, 1) << '\n';
  }
  out << "\nLabel\tFrequency\tAccuracy\n";
  const double total = static_cast<double>(c.total());
  for (std::size_t l = 0; l < CeLabel::kCount; ++l) {
    const auto n = c.reference_count(l);
    if (n == 0) continue;
    out << CeLabel(static_cast<std::uint8_t>(l)).name() << '\t' << format_rate(100.0 * n / total, 1) << "%\t"
        << format_rate(100.0 * c.matrix[l][l] / n, 1) << "%\n";
  }
}

inline void write_confusion_tsv(std::ostream& out, const ConfusionReport& c) {
  out << "reference\\hypothesis";
  for (std::size_t h = 0; h < CeLabel::kCount; ++h) out << '\t' << CeLabel(static_cast<std::uint8_t>(h)).name();
  out << '\n';
  for (std::size_t r = 0; r < CeLabel::kCount; ++r) {
    out << CeLabel(static_cast<std::uint8_t>(r)).name();
    for (auto v : c.matrix[r]) out << '\t' << v;
    out << '\n';
  }
}

}  // namespace harakat

#endif  // HARAKAT_EVAL_HPP
