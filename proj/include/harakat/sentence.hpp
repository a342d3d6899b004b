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

#ifndef HARAKAT_SENTENCE_HPP
#define HARAKAT_SENTENCE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harakat/codec.hpp"
#include "harakat/utf8.hpp"

namespace harakat {

enum class TextEncoding { arabic, buckwalter };

// Optional gold annotation columns from a TSV corpus, kept verbatim.
struct GoldColumns {
  std::optional<std::string> segmentation;   // "w+Al+ktAb"
  std::optional<std::string> pos;            // "CONJ+DET+NOUN"
  std::optional<std::string> gender_number;  // "f/sg"

  bool empty() const { return !segmentation && !pos && !gender_number; }
  friend bool operator==(const GoldColumns&, const GoldColumns&) = default;
};

struct Token {
  std::string surface;   // text as it appeared in the input
  bool arabic = false;   // false: punctuation, digits, Latin, mixed script
  DiacritizedWord word;  // Buckwalter; only meaningful for Arabic tokens
  GoldColumns gold;

  // Bare Buckwalter form for Arabic tokens, the surface otherwise.
  const std::string& bare() const { return arabic ? word.bare : surface; }

  friend bool operator==(const Token&, const Token&) = default;
};

struct SentenceRecord {
  std::vector<Token> tokens;
  std::string raw;
  std::string source_id;
  std::size_t line = 0;  // first input line, 1-based; 0 when not read from a file

  std::size_t arabic_count() const {
    std::size_t n = 0;
    for (const auto& t : tokens) n += t.arabic ? 1 : 0;
    return n;
  }
};

// Builds a token from raw text. A token is Arabic when every character
// (after tatweel deletion) belongs to the Buckwalter table; the diacritics are
// then validated by decompose(), whose errors propagate.
inline Token make_token(std::string_view text, TextEncoding encoding) {
  Token token;
  token.surface = std::string(text);
  std::string bw;
  if (encoding == TextEncoding::arabic) {
    const auto decoded = utf8::decode(text);
    if (!decoded) throw EncodingError(0);
    for (char32_t cp : *decoded) {
      if (cp == 0x0640) continue;
      const auto symbol = symbol_of(cp);
      if (!symbol) return token;
      bw.push_back(*symbol);
    }
  } else {
    for (char c : text) {
      if (c == kTatweel) continue;
      if (!is_buckwalter_symbol(c)) return token;
      bw.push_back(c);
    }
  }
  if (bw.empty()) return token;
  token.word = decompose(bw);
  token.arabic = true;
  return token;
}

// Token text in the requested encoding; Arabic tokens are re-rendered from
// their (possibly re-diacritized) word.
inline std::string render_token(const Token& token, TextEncoding encoding) {
  if (!token.arabic) return token.surface;
  const std::string bw = recompose(token.word);
  return encoding == TextEncoding::arabic ? bw_to_arabic(bw) : bw;
}

inline std::string render_sentence(const SentenceRecord& s, TextEncoding encoding) {
  std::string out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += render_token(s.tokens[i], encoding);
  }
  return out;
}

// Copy of the sentence with every diacritic removed.
inline SentenceRecord strip_sentence(const SentenceRecord& s) {
  SentenceRecord out = s;
  for (auto& t : out.tokens) {
    if (!t.arabic) continue;
    for (auto& m : t.word.marks) m = MarkCombo::none();
    t.word.ce_index.reset();
  }
  return out;
}

}  // namespace harakat

#endif  // HARAKAT_SENTENCE_HPP
