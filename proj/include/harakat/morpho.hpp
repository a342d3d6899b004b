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

#ifndef HARAKAT_MORPHO_HPP
#define HARAKAT_MORPHO_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "harakat/error.hpp"
#include "harakat/sentence.hpp"

namespace harakat {

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

struct Segmentation {
  std::vector<std::string> prefixes;
  std::string stem;
  std::vector<std::string> noun_suffixes;  // gender/number markers, e.g. "p"
  std::vector<std::string> suffixes;       // attached pronouns

  // Segments in surface order.
  std::vector<std::string> segments() const {
    std::vector<std::string> out(prefixes);
    out.push_back(stem);
    out.insert(out.end(), noun_suffixes.begin(), noun_suffixes.end());
    out.insert(out.end(), suffixes.begin(), suffixes.end());
    return out;
  }

  std::string joined() const {
    std::string out;
    for (const auto& s : segments()) out += s;
    return out;
  }

  // "w+b+mktb+t+nA"
  std::string render() const {
    std::string out;
    for (const auto& s : segments()) {
      if (!out.empty()) out.push_back('+');
      out += s;
    }
    return out;
  }

  // Stem with its noun suffixes re-attached ("mktb" + "p" -> "mktbp").
  std::string extended_stem() const {
    std::string out = stem;
    for (const auto& s : noun_suffixes) out += s;
    return out;
  }

  std::string joined_prefixes() const { return join(prefixes); }
  std::string joined_suffixes() const { return join(suffixes); }

  std::size_t prefix_length() const {
    std::size_t n = 0;
    for (const auto& p : prefixes) n += p.size();
    return n;
  }

  // Letter carrying the case ending: the last letter of the stem plus noun
  // suffixes, before any pronominal suffix.
  std::size_t ce_slot() const {
    const std::size_t end = prefix_length() + extended_stem().size();
    return end == 0 ? 0 : end - 1;
  }

  friend bool operator==(const Segmentation&, const Segmentation&) = default;

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out.push_back('+');
      out += p;
    }
    return out;
  }
};

enum class Gender { masculine, feminine, unknown };
enum class Number { singular, dual, plural, unknown };

inline constexpr std::string_view kUnknownTag = "unknown";
inline constexpr std::string_view kUnknownTemplate = "UNK";

struct MorphoAnnotation {
  Segmentation segmentation;
  std::string word_pos{kUnknownTag};
  std::string stem_pos{kUnknownTag};
  std::vector<std::string> prefix_pos;
  std::vector<std::string> suffix_pos;
  Gender gender = Gender::unknown;
  Number number = Number::unknown;
  std::string stem_template{kUnknownTemplate};

  std::string gender_number() const {
    static constexpr std::array<std::string_view, 3> kG{"m", "f", "unknown"};
    static constexpr std::array<std::string_view, 4> kN{"sg", "du", "pl", "unknown"};
    return std::string(kG[static_cast<std::size_t>(gender)]) + "/" +
           std::string(kN[static_cast<std::size_t>(number)]);
  }

  friend bool operator==(const MorphoAnnotation&, const MorphoAnnotation&) = default;
};

// ---------------------------------------------------------------------------
// Fallback affix segmenter
// ---------------------------------------------------------------------------

// Longest-match affix stripping over a closed inventory. Prefixes follow the
// grammar [w|f] ([b|k|l] [Al] | Al | s); pronoun suffixes are stripped first,
// then one gender/number suffix.
class AffixSegmenter {
 public:
  Segmentation segment(std::string_view word) const {
    Segmentation seg;
    std::string_view rest = word;

    std::vector<std::string> best;
    std::size_t best_len = 0;
    for (const auto& candidate : prefix_candidates()) {
      std::size_t len = 0;
      for (const auto& p : candidate) len += p.size();
      if (len <= best_len || len > rest.size()) continue;
      std::string joined;
      for (const auto& p : candidate) joined += p;
      if (rest.substr(0, len) != joined) continue;
      if (!prefix_allowed(candidate, rest, len)) continue;
      best = candidate;
      best_len = len;
    }
    seg.prefixes = best;
    rest.remove_prefix(best_len);

    bool has_pronoun = false;
    for (std::string_view p : kPronounSuffixes) {
      const std::size_t need = p.size() == 1 ? 3 : 2;
      if (rest.size() >= p.size() + need && rest.ends_with(p)) {
        seg.suffixes.emplace_back(p);
        rest.remove_suffix(p.size());
        has_pronoun = true;
        break;
      }
    }
    const std::span<const std::string_view> noun_suffixes =
        has_pronoun ? std::span<const std::string_view>(kNounSuffixesBeforePronoun)
                    : std::span<const std::string_view>(kNounSuffixes);
    for (std::string_view s : noun_suffixes) {
      const std::size_t need = s.size() == 1 ? 2 : 3;
      if (rest.size() >= s.size() + need && rest.ends_with(s)) {
        seg.noun_suffixes.emplace_back(s);
        rest.remove_suffix(s.size());
        break;
      }
    }
    seg.stem = std::string(rest);
    return seg;
  }

  static std::string_view prefix_tag(std::string_view p) {
    if (p == "w" || p == "f") return "CONJ";
    if (p == "b" || p == "k" || p == "l") return "PREP";
    if (p == "Al") return "DET";
    if (p == "s") return "FUT_PART";
    return kUnknownTag;
  }

  static bool is_prefix(std::string_view p) { return prefix_tag(p) != kUnknownTag; }

  static bool is_noun_suffix(std::string_view s) {
    return std::find(kNounSuffixes.begin(), kNounSuffixes.end(), s) != kNounSuffixes.end() ||
           s == "t";
  }

  static bool is_pronoun(std::string_view s) {
    return std::find(kPronounSuffixes.begin(), kPronounSuffixes.end(), s) != kPronounSuffixes.end();
  }

  // Longest first.
  static constexpr std::array<std::string_view, 12> kPronounSuffixes{
      "hmA", "kmA", "hA", "hm", "hn", "km", "kn", "nA", "ny", "h", "k", "y"};
  static constexpr std::array<std::string_view, 7> kNounSuffixes{
      "tAn", "tyn", "At", "An", "wn", "yn", "p"};
  static constexpr std::array<std::string_view, 2> kNounSuffixesBeforePronoun{"At", "t"};

 private:
  static const std::vector<std::vector<std::string>>& prefix_candidates() {
    static const std::vector<std::vector<std::string>> candidates = [] {
      std::vector<std::vector<std::string>> out;
      for (std::string conj : {"", "w", "f"}) {
        std::vector<std::vector<std::string>> tails = {{}, {"Al"}, {"s"}};
        for (std::string prep : {"b", "k", "l"}) {
          tails.push_back({prep});
          tails.push_back({prep, "Al"});
        }
        for (auto tail : tails) {
          std::vector<std::string> c;
          if (!conj.empty()) c.push_back(conj);
          c.insert(c.end(), tail.begin(), tail.end());
          if (!c.empty()) out.push_back(std::move(c));
        }
      }
      return out;
    }();
    return candidates;
  }

  static bool prefix_allowed(const std::vector<std::string>& c, std::string_view word,
                             std::size_t len) {
    const std::size_t residual = word.size() - len;
    const bool has_conj = c.front() == "w" || c.front() == "f";
    const bool has_det = c.back() == "Al";
    const bool has_fut = c.back() == "s";
    const bool has_prep = std::any_of(c.begin(), c.end(), [](const std::string& p) {
      return p == "b" || p == "k" || p == "l";
    });
    if (has_det) return residual >= 2;
    if (residual < 3) return false;
    if (has_fut) {
      const char next = word[len];
      return has_conj && (next == 'y' || next == 't' || next == 'n' || next == '>');
    }
    if (has_prep) return has_conj;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Stem templates
// ---------------------------------------------------------------------------

struct TemplateEntry {
  std::string pattern;  // f/E/l are root slots, every other letter is fixed
  std::size_t fixed_letters() const {
    return static_cast<std::size_t>(std::count_if(pattern.begin(), pattern.end(), [](char c) {
      return c != 'f' && c != 'E' && c != 'l';
    }));
  }
};

class TemplateInventory {
 public:
  TemplateInventory() = default;
  explicit TemplateInventory(std::vector<TemplateEntry> entries) : entries_(std::move(entries)) {}

  static const TemplateInventory& builtin() {
    static const TemplateInventory inventory = [] {
      std::vector<TemplateEntry> entries;
      for (std::string_view p : kBuiltinPatterns) entries.push_back({std::string(p)});
      return TemplateInventory(std::move(entries));
    }();
    return inventory;
  }

  // TSV: template <TAB> length; '#' starts a comment line.
  static TemplateInventory load_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open template inventory " + path.string());
    std::vector<TemplateEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.front() == '#') continue;
      const auto tab = line.find('\t');
      std::string pattern = line.substr(0, tab);
      if (pattern == "template") continue;
      if (tab != std::string::npos && std::stoul(line.substr(tab + 1)) != pattern.size()) {
        throw FormatError("template length column disagrees for " + pattern);
      }
      entries.push_back({pattern});
    }
    return TemplateInventory(std::move(entries));
  }

  void write_tsv(std::ostream& out) const {
    out << "template\tlength\n";
    for (const auto& e : entries_) out << e.pattern << '\t' << e.pattern.size() << '\n';
  }

  // Positional match; the entry with the most fixed letters wins, ties go to
  // inventory order.
  std::string match(std::string_view stem) const {
    const TemplateEntry* best = nullptr;
    for (const auto& e : entries_) {
      if (e.pattern.size() != stem.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < stem.size() && ok; ++i) {
        const char t = e.pattern[i];
        if (t != 'f' && t != 'E' && t != 'l' && t != stem[i]) ok = false;
      }
      if (ok && (best == nullptr || e.fixed_letters() > best->fixed_letters())) best = &e;
    }
    return best ? best->pattern : std::string(kUnknownTemplate);
  }

  const std::vector<TemplateEntry>& entries() const { return entries_; }

  static constexpr std::array<std::string_view, 42> kBuiltinPatterns{
      "fEl",    "fAEl",   "fEAl",   "fEyl",   "fEwl",   "fEll",    "mfEl",
      ">fEl",   "tfEl",   "yfEl",   "nfEl",   "fElp",   "fwAEl",   "fEAlp",
      "fEylp",  "fAElp",  "mfElp",  "mfEwl",  "mfAEl",  "mfEAl",   "mfEyl",
      "tfAEl",  "tfEyl",  "AnfEl",  "AftEl",  ">fEAl",  "fElAn",   "fEwlp",
      "mnfEl",  "mftEl",  "fEAyl",  "mfAEyl", "mfEwlp", "mfAElp",  "mtfAEl",
      "AftEAl", "AnfEAl", "AstfEl", "tfEylp", "mstfEl", "AstfEAl", "mstfElp"};

 private:
  std::vector<TemplateEntry> entries_;
};

inline std::string stem_template(std::string_view stem) {
  return TemplateInventory::builtin().match(stem);
}

// ---------------------------------------------------------------------------
// Annotators
// ---------------------------------------------------------------------------

struct AnnotatorCapabilities {
  bool segmentation = false;
  bool pos = false;
  bool gender_number = false;
  bool stem_template = false;
};

// Tag used for tokens outside the Arabic alphabet.
inline std::string non_arabic_tag(std::string_view surface) {
  const auto decoded = utf8::decode(surface);
  if (!decoded || decoded->empty()) return "FOREIGN";
  bool digits = true;
  bool punct = true;
  for (char32_t cp : *decoded) {
    const bool is_digit = (cp >= '0' && cp <= '9') || (cp >= 0x0660 && cp <= 0x0669) ||
                          (cp >= 0x06F0 && cp <= 0x06F9);
    const bool is_punct = (cp < 0x80 && std::ispunct(static_cast<int>(cp))) || cp == 0x060C ||
                          cp == 0x061B || cp == 0x061F || cp == 0x06D4 || cp == 0x066A ||
                          cp == 0x066B || cp == 0x066C;
    digits = digits && (is_digit || cp == '.' || cp == ',');
    punct = punct && is_punct;
  }
  if (punct) return "PUNC";
  if (digits) return "NUM";
  return "FOREIGN";
}

class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual std::string_view id() const = 0;
  virtual AnnotatorCapabilities capabilities() const = 0;
  // One annotation per token; deterministic.
  virtual std::vector<MorphoAnnotation> annotate(std::span<const Token> sentence) const = 0;

  std::vector<MorphoAnnotation> annotate(const SentenceRecord& s) const {
    return annotate(std::span<const Token>(s.tokens));
  }

  // Convenience for lists of bare Buckwalter words.
  std::vector<MorphoAnnotation> annotate_words(std::span<const std::string> words) const {
    std::vector<Token> tokens;
    tokens.reserve(words.size());
    for (const auto& w : words) tokens.push_back(make_token(w, TextEncoding::buckwalter));
    return annotate(std::span<const Token>(tokens));
  }
};

using AnnotatorHandle = std::shared_ptr<const Annotator>;

class NaiveAnnotator : public Annotator {
 public:
  explicit NaiveAnnotator(TemplateInventory templates = TemplateInventory::builtin())
      : templates_(std::move(templates)) {}

  std::string_view id() const override { return "naive"; }
  AnnotatorCapabilities capabilities() const override { return {true, false, true, true}; }

  std::vector<MorphoAnnotation> annotate(std::span<const Token> sentence) const override {
    std::vector<MorphoAnnotation> out;
    out.reserve(sentence.size());
    for (const auto& t : sentence) out.push_back(annotate_token(t));
    return out;
  }
  using Annotator::annotate;

  MorphoAnnotation annotate_token(const Token& t) const {
    if (!t.arabic) return annotate_non_arabic(t.surface);
    return annotate_segmentation(segmenter_.segment(t.word.bare));
  }

  MorphoAnnotation annotate_segmentation(Segmentation seg) const {
    MorphoAnnotation a;
    for (const auto& p : seg.prefixes) a.prefix_pos.emplace_back(AffixSegmenter::prefix_tag(p));
    for (const auto& s : seg.suffixes) {
      a.suffix_pos.emplace_back(AffixSegmenter::is_pronoun(s) ? "PRON" : std::string(kUnknownTag));
    }
    infer_gender_number(seg, a);
    a.stem_template = templates_.match(seg.extended_stem());
    a.segmentation = std::move(seg);
    return a;
  }

  static MorphoAnnotation annotate_non_arabic(const std::string& surface) {
    MorphoAnnotation a;
    a.segmentation.stem = surface;
    a.word_pos = non_arabic_tag(surface);
    a.stem_pos = a.word_pos;
    return a;
  }

  const TemplateInventory& templates() const { return templates_; }
  const AffixSegmenter& segmenter() const { return segmenter_; }

 private:
  static void infer_gender_number(const Segmentation& seg, MorphoAnnotation& a) {
    if (seg.noun_suffixes.empty()) return;
    const std::string& s = seg.noun_suffixes.back();
    if (s == "p" || s == "t") {
      a.gender = Gender::feminine, a.number = Number::singular;
    } else if (s == "At") {
      a.gender = Gender::feminine, a.number = Number::plural;
    } else if (s == "wn" || s == "yn") {
      a.gender = Gender::masculine, a.number = Number::plural;
    } else if (s == "An") {
      a.number = Number::dual;
    } else if (s == "tAn" || s == "tyn") {
      a.gender = Gender::feminine, a.number = Number::dual;
    }
  }

  AffixSegmenter segmenter_;
  TemplateInventory templates_;
};

namespace detail {

inline std::vector<std::string> split_plus(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '+') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline void parse_gender_number(std::string_view text, Gender& g, Number& n) {
  std::string gs, ns;
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    gs = lower(text.substr(0, slash));
    ns = lower(text.substr(slash + 1));
  } else if (text.size() == 2) {
    gs = lower(text.substr(0, 1));
    ns = lower(text.substr(1, 1));
  } else {
    return;
  }
  if (gs == "m" || gs == "masc" || gs == "masculine") g = Gender::masculine;
  if (gs == "f" || gs == "fem" || gs == "feminine") g = Gender::feminine;
  if (ns == "s" || ns == "sg" || ns == "singular") n = Number::singular;
  if (ns == "d" || ns == "du" || ns == "dual") n = Number::dual;
  if (ns == "p" || ns == "pl" || ns == "plural") n = Number::plural;
}

inline bool is_prefix_tag(std::string_view tag) {
  return tag == "CONJ" || tag == "PREP" || tag == "DET" || tag == "FUT_PART";
}

}  // namespace detail

// Uses the TSV gold columns of each token when present and the naive
// annotator for whatever they leave out.
class GoldAnnotator : public Annotator {
 public:
  explicit GoldAnnotator(TemplateInventory templates = TemplateInventory::builtin())
      : naive_(std::move(templates)) {}

  std::string_view id() const override { return "gold"; }
  AnnotatorCapabilities capabilities() const override { return {true, true, true, true}; }

  std::vector<MorphoAnnotation> annotate(std::span<const Token> sentence) const override {
    std::vector<MorphoAnnotation> out;
    out.reserve(sentence.size());
    for (const auto& t : sentence) out.push_back(annotate_token(t, t.gold));
    return out;
  }
  using Annotator::annotate;

  // Gold columns supplied separately from the tokens; counts must agree.
  std::vector<MorphoAnnotation> annotate(std::span<const Token> sentence,
                                         std::span<const GoldColumns> gold) const {
    if (gold.size() != sentence.size()) {
      throw AnnotationMismatch("gold columns cover " + std::to_string(gold.size()) +
                               " tokens, sentence has " + std::to_string(sentence.size()));
    }
    std::vector<MorphoAnnotation> out;
    out.reserve(sentence.size());
    for (std::size_t i = 0; i < sentence.size(); ++i) out.push_back(annotate_token(sentence[i], gold[i]));
    return out;
  }

  MorphoAnnotation annotate_token(const Token& t, const GoldColumns& gold) const {
    MorphoAnnotation a;
    if (!t.arabic) {
      a = NaiveAnnotator::annotate_non_arabic(t.surface);
    } else if (gold.segmentation) {
      a = from_gold_segmentation(t.word.bare, *gold.segmentation, gold.pos);
    } else {
      a = naive_.annotate_token(t);
    }
    if (gold.pos) a.word_pos = *gold.pos;
    if (gold.pos && !t.arabic) a.stem_pos = *gold.pos;
    if (gold.gender_number) {
      a.gender = Gender::unknown;
      a.number = Number::unknown;
      detail::parse_gender_number(*gold.gender_number, a.gender, a.number);
    }
    return a;
  }

 private:
  MorphoAnnotation from_gold_segmentation(const std::string& bare, const std::string& segmentation,
                                          const std::optional<std::string>& pos) const {
    const auto segs = detail::split_plus(segmentation);
    std::string concat;
    for (const auto& s : segs) concat += s;
    if (concat != bare) {
      throw AnnotationMismatch("segmentation '" + segmentation + "' does not spell '" + bare + "'");
    }
    std::vector<std::string> tags;
    if (pos) {
      tags = detail::split_plus(*pos);
      if (tags.size() != segs.size()) {
        throw AnnotationMismatch("POS '" + *pos + "' has " + std::to_string(tags.size()) +
                                 " tags for " + std::to_string(segs.size()) + " segments");
      }
    }

    std::size_t stem = 0;
    if (!tags.empty()) {
      while (stem + 1 < segs.size() && detail::is_prefix_tag(tags[stem])) ++stem;
    } else {
      while (stem + 1 < segs.size() && AffixSegmenter::is_prefix(segs[stem])) ++stem;
    }
    Segmentation seg;
    seg.prefixes.assign(segs.begin(), segs.begin() + static_cast<std::ptrdiff_t>(stem));
    seg.stem = segs[stem];
    std::size_t i = stem + 1;
    while (i < segs.size() &&
           (tags.empty() ? AffixSegmenter::is_noun_suffix(segs[i]) : tags[i] == "NSUFF")) {
      seg.noun_suffixes.push_back(segs[i++]);
    }
    seg.suffixes.assign(segs.begin() + static_cast<std::ptrdiff_t>(i), segs.end());

    MorphoAnnotation a = naive_.annotate_segmentation(seg);
    if (!tags.empty()) {
      a.prefix_pos.assign(tags.begin(), tags.begin() + static_cast<std::ptrdiff_t>(stem));
      std::string stem_pos = tags[stem];
      for (std::size_t k = stem + 1; k < i; ++k) stem_pos += "+" + tags[k];
      a.stem_pos = stem_pos;
      a.suffix_pos.assign(tags.begin() + static_cast<std::ptrdiff_t>(i), tags.end());
    }
    return a;
  }

  NaiveAnnotator naive_;
};

inline AnnotatorHandle make_annotator(std::string_view id,
                                      const TemplateInventory& templates = TemplateInventory::builtin()) {
  if (id == "naive") return std::make_shared<NaiveAnnotator>(templates);
  if (id == "gold") return std::make_shared<GoldAnnotator>(templates);
  throw Error("unknown annotator '" + std::string(id) + "' (expected gold or naive)");
}

}  // namespace harakat

#endif  // HARAKAT_MORPHO_HPP
