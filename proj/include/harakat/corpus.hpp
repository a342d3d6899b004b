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

#ifndef HARAKAT_CORPUS_HPP
#define HARAKAT_CORPUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "harakat/binary_io.hpp"
#include "harakat/codec.hpp"
#include "harakat/error.hpp"
#include "harakat/morpho.hpp"
#include "harakat/sentence.hpp"
#include "harakat/utf8.hpp"

namespace harakat {

enum class CorpusFormat { plain, tsv };

struct Corpus {
  std::vector<SentenceRecord> sentences;
  TextEncoding encoding = TextEncoding::buckwalter;
};

namespace detail {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based byte column
};

inline std::vector<Field> split_whitespace(std::string_view line) {
  std::vector<Field> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().remove_suffix(1);
  return out;
}

inline std::optional<std::string> column(const std::vector<std::string_view>& cols, std::size_t k) {
  if (k >= cols.size() || cols[k].empty() || cols[k] == "_") return std::nullopt;
  return std::string(cols[k]);
}

inline Token token_at(std::string_view text, TextEncoding enc, std::size_t line, std::size_t column) {
  try {
    return make_token(text, enc);
  } catch (const PositionedError& e) {
    throw MalformedToken(line, column + e.position(), e.what());
  } catch (const EncodingError&) {
    throw EncodingError(line);
  }
}

inline TextEncoding detect_encoding(std::string_view text) {
  const auto decoded = utf8::decode(text);
  if (!decoded) return TextEncoding::buckwalter;
  for (char32_t cp : *decoded) {
    if (in_arabic_block(cp)) return TextEncoding::arabic;
  }
  return TextEncoding::buckwalter;
}

}  // namespace detail

// Parses corpus text. Plain: one whitespace-tokenized sentence per line.
// TSV: one token per row (token, diacritized form, segmentation, POS,
// gender/number; trailing columns optional, "_" marks a missing value), blank
// lines between sentences, '#' comment lines.
inline Corpus parse_corpus(std::string_view text, CorpusFormat format,
                           std::optional<TextEncoding> encoding = std::nullopt,
                           const std::string& source_id = "") {
  Corpus corpus;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  std::vector<std::string_view> lines;
  while (begin <= text.size()) {
    const auto nl = text.find('\n', begin);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(begin, end - begin));
    if (nl == std::string_view::npos) break;
    begin = nl + 1;
  }
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (!utf8::decode(lines[k])) throw EncodingError(k + 1);
  }
  corpus.encoding = encoding.value_or(detail::detect_encoding(text));
  const TextEncoding enc = corpus.encoding;

  if (format == CorpusFormat::plain) {
    for (std::string_view line : lines) {
      ++line_no;
      SentenceRecord record;
      for (const auto& f : detail::split_whitespace(line)) {
        record.tokens.push_back(detail::token_at(f.text, enc, line_no, f.column));
      }
      if (record.tokens.empty()) continue;
      record.raw = std::string(line);
      if (!record.raw.empty() && record.raw.back() == '\r') record.raw.pop_back();
      record.source_id = source_id + ":" + std::to_string(line_no);
      record.line = line_no;
      corpus.sentences.push_back(std::move(record));
    }
    return corpus;
  }

  SentenceRecord current;
  auto flush = [&] {
    if (current.tokens.empty()) return;
    for (std::size_t i = 0; i < current.tokens.size(); ++i) {
      if (i > 0) current.raw.push_back(' ');
      current.raw += current.tokens[i].surface;
    }
    corpus.sentences.push_back(std::move(current));
    current = SentenceRecord{};
  };
  for (std::string_view line : lines) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    const auto cols = detail::split_tabs(line);
    const auto surface = detail::column(cols, 0);
    if (!surface) throw MalformedToken(line_no, 1, "empty token column");
    const auto diacritized = detail::column(cols, 1);
    Token token = detail::token_at(diacritized.value_or(*surface), enc, line_no,
                                   diacritized ? cols[0].size() + 2 : 1);
    if (diacritized) {
      const Token plain = detail::token_at(*surface, enc, line_no, 1);
      if (plain.arabic != token.arabic || plain.bare() != token.bare()) {
        throw MalformedToken(line_no, cols[0].size() + 2,
                             "diacritized form does not match token '" + *surface + "'");
      }
    }
    token.surface = *surface;
    token.gold.segmentation = detail::column(cols, 2);
    token.gold.pos = detail::column(cols, 3);
    token.gold.gender_number = detail::column(cols, 4);
    if (current.tokens.empty()) {
      current.source_id = source_id + ":" + std::to_string(line_no);
      current.line = line_no;
    }
    current.tokens.push_back(std::move(token));
  }
  flush();
  return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          std::optional<TextEncoding> encoding = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return parse_corpus(read_file(path), format, encoding, path.filename().string());
}

// Deterministic random sentence-level split. |validation| = round(fraction * N).
inline std::pair<std::vector<SentenceRecord>, std::vector<SentenceRecord>> split_validation(
    std::span<const SentenceRecord> corpus, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error("validation fraction must be in (0, 1)");
  if (corpus.empty()) throw EmptyCorpus();
  const std::size_t n = corpus.size();
  const auto n_val = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> is_val(n, false);
  for (std::size_t k = 0; k < n_val; ++k) is_val[order[k]] = true;
  std::pair<std::vector<SentenceRecord>, std::vector<SentenceRecord>> out;
  for (std::size_t i = 0; i < n; ++i) (is_val[i] ? out.second : out.first).push_back(corpus[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon
// ---------------------------------------------------------------------------

class Lexicon {
 public:
  using Forms = std::map<std::string, std::uint32_t, std::less<>>;

  void add(const DiacritizedWord& word, std::uint32_t count = 1) {
    DiacritizedWord w = word;
    w.ce_index.reset();
    for (auto& m : w.marks) {
      if (m.is_virtual) m = MarkCombo::none();
    }
    entries_[w.bare][recompose(w)] += count;
    total_tokens_ += count;
  }

  const Forms* forms(std::string_view bare) const {
    const auto it = entries_.find(bare);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(std::string_view bare) const { return forms(bare) != nullptr; }

  // Highest count; ties go to the lexicographically smallest form.
  std::optional<std::string> most_frequent(std::string_view bare) const {
    const Forms* f = forms(bare);
    if (f == nullptr) return std::nullopt;
    const auto best = std::max_element(f->begin(), f->end(), [](const auto& a, const auto& b) {
      return a.second < b.second;  // first maximum in key order
    });
    return best->first;
  }

  const std::map<std::string, Forms, std::less<>>& entries() const { return entries_; }
  std::uint64_t total_tokens() const { return total_tokens_; }
  bool empty() const { return entries_.empty(); }

  void write(BinaryWriter& w) const {
    w.u32(kBuckwalterTableVersion);
    w.u64(total_tokens_);
    w.u64(entries_.size());
    for (const auto& [bare, forms] : entries_) {
      w.str(bare);
      w.u64(forms.size());
      for (const auto& [form, count] : forms) {
        w.str(form);
        w.u32(count);
      }
    }
  }

  static Lexicon read(BinaryReader& r) {
    if (r.u32() != kBuckwalterTableVersion) throw ModelVersionMismatch("lexicon table version");
    Lexicon lex;
    lex.total_tokens_ = r.u64();
    const std::uint64_t n = r.u64();
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string bare = r.str();
      Forms forms;
      const std::uint64_t k = r.u64();
      for (std::uint64_t j = 0; j < k; ++j) {
        std::string form = r.str();
        forms[std::move(form)] = r.u32();
      }
      lex.entries_.emplace(std::move(bare), std::move(forms));
    }
    return lex;
  }

  void save(const std::filesystem::path& path) const {
    BinaryWriter w;
    w.header("lexicon");
    write(w);
    write_file_atomic(path, w.data());
  }

  static Lexicon load(const std::filesystem::path& path) {
    auto r = BinaryReader::from_file(path);
    r.expect_kind("lexicon");
    return read(r);
  }

  void export_tsv(std::ostream& out) const {
    out << "bare\tform\tcount\n";
    for (const auto& [bare, forms] : entries_) {
      for (const auto& [form, count] : forms) out << bare << '\t' << form << '\t' << count << '\n';
    }
  }

 private:
  std::map<std::string, Forms, std::less<>> entries_;
  std::uint64_t total_tokens_ = 0;
};

inline Lexicon build_lexicon(std::span<const SentenceRecord> train) {
  Lexicon lex;
  for (const auto& s : train) {
    for (const auto& t : s.tokens) {
      if (t.arabic) lex.add(t.word);
    }
  }
  return lex;
}

// ---------------------------------------------------------------------------
// PRIOR table
// ---------------------------------------------------------------------------

// Per segment, per letter: the union of primitive marks observed in training.
class PriorTable {
 public:
  void observe(std::string_view segment, std::span<const MarkCombo> marks) {
    auto [it, inserted] = entries_.try_emplace(std::string(segment));
    if (inserted) it->second.assign(segment.size(), PriorBits{});
    for (std::size_t i = 0; i < segment.size(); ++i) it->second[i].merge(PriorBits::of(marks[i]));
  }

  bool contains(std::string_view segment) const { return entries_.find(segment) != entries_.end(); }

  // Unseen segments allow every mark.
  std::vector<PriorBits> lookup(std::string_view segment) const {
    const auto it = entries_.find(segment);
    if (it == entries_.end()) return std::vector<PriorBits>(segment.size(), PriorBits::all());
    return it->second;
  }

  std::vector<PriorBits> lookup_word(const Segmentation& seg) const {
    std::vector<PriorBits> out;
    for (const auto& s : seg.segments()) {
      const auto bits = lookup(s);
      out.insert(out.end(), bits.begin(), bits.end());
    }
    return out;
  }

  const std::map<std::string, std::vector<PriorBits>, std::less<>>& entries() const { return entries_; }

  void write(BinaryWriter& w) const {
    w.u32(kBuckwalterTableVersion);
    w.u64(entries_.size());
    for (const auto& [seg, bits] : entries_) {
      w.str(seg);
      w.u64(bits.size());
      for (PriorBits b : bits) w.u8(b.raw());
    }
  }

  static PriorTable read(BinaryReader& r) {
    if (r.u32() != kBuckwalterTableVersion) throw ModelVersionMismatch("prior table version");
    PriorTable table;
    const std::uint64_t n = r.u64();
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string seg = r.str();
      const std::uint64_t len = r.u64();
      if (len != seg.size()) throw FormatError("prior vector length disagrees with segment " + seg);
      std::vector<PriorBits> bits;
      for (std::uint64_t k = 0; k < len; ++k) bits.emplace_back(r.u8());
      table.entries_.emplace(std::move(seg), std::move(bits));
    }
    return table;
  }

  void save(const std::filesystem::path& path) const {
    BinaryWriter w;
    w.header("priors");
    write(w);
    write_file_atomic(path, w.data());
  }

  static PriorTable load(const std::filesystem::path& path) {
    auto r = BinaryReader::from_file(path);
    r.expect_kind("priors");
    return read(r);
  }

  void export_tsv(std::ostream& out) const {
    out << "segment\tbits\n";
    for (const auto& [seg, bits] : entries_) {
      out << seg << '\t';
      for (std::size_t i = 0; i < bits.size(); ++i) out << (i ? " " : "") << bits[i].str();
      out << '\n';
    }
  }

 private:
  std::map<std::string, std::vector<PriorBits>, std::less<>> entries_;
};

inline PriorTable build_prior_table(std::span<const SentenceRecord> train, const Annotator& annotator) {
  PriorTable table;
  for (const auto& s : train) {
    const auto annotations = annotator.annotate(s);
    for (std::size_t t = 0; t < s.tokens.size(); ++t) {
      const Token& token = s.tokens[t];
      if (!token.arabic) continue;
      std::size_t offset = 0;
      for (const auto& seg : annotations[t].segmentation.segments()) {
        table.observe(seg, std::span<const MarkCombo>(token.word.marks).subspan(offset, seg.size()));
        offset += seg.size();
      }
    }
  }
  return table;
}

// Order-sensitive fingerprint of a corpus' canonical text.
inline std::uint64_t corpus_fingerprint(std::span<const SentenceRecord> corpus) {
  std::uint64_t h = fnv1a("");
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) {
      h = fnv1a(t.arabic ? recompose(t.word) : t.surface, h);
      h = fnv1a(" ", h);
    }
    h = fnv1a("\n", h);
  }
  return h;
}

}  // namespace harakat

#endif  // HARAKAT_CORPUS_HPP
