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

#ifndef HARAKAT_CODEC_HPP
#define HARAKAT_CODEC_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "harakat/error.hpp"
#include "harakat/utf8.hpp"

namespace harakat {

// ---------------------------------------------------------------------------
// Buckwalter table
// ---------------------------------------------------------------------------

enum class SymbolClass : std::uint8_t { letter, mark };

struct BuckwalterEntry {
  char symbol;
  char32_t codepoint;
  SymbolClass cls;
};

// Bumped whenever the table below changes; persisted in every binary file.
inline constexpr std::uint32_t kBuckwalterTableVersion = 1;

// Standard Buckwalter transliteration plus the common extensions for
// Persian/Urdu letters. Dagger alef, alef wasla, madda and hamza seats are
// plain letters: only the eight primitive diacritics are marks.
inline constexpr std::array<BuckwalterEntry, 51> kBuckwalterTable{{
    {'\'', 0x0621, SymbolClass::letter},  // hamza
    {'|', 0x0622, SymbolClass::letter},   // alef with madda
    {'>', 0x0623, SymbolClass::letter},   // alef with hamza above
    {'&', 0x0624, SymbolClass::letter},   // waw with hamza
    {'<', 0x0625, SymbolClass::letter},   // alef with hamza below
    {'}', 0x0626, SymbolClass::letter},   // ya with hamza
    {'A', 0x0627, SymbolClass::letter},
    {'b', 0x0628, SymbolClass::letter},
    {'p', 0x0629, SymbolClass::letter},  // ta marbuta
    {'t', 0x062A, SymbolClass::letter},
    {'v', 0x062B, SymbolClass::letter},
    {'j', 0x062C, SymbolClass::letter},
    {'H', 0x062D, SymbolClass::letter},
    {'x', 0x062E, SymbolClass::letter},
    {'d', 0x062F, SymbolClass::letter},
    {'*', 0x0630, SymbolClass::letter},
    {'r', 0x0631, SymbolClass::letter},
    {'z', 0x0632, SymbolClass::letter},
    {'s', 0x0633, SymbolClass::letter},
    {'$', 0x0634, SymbolClass::letter},
    {'S', 0x0635, SymbolClass::letter},
    {'D', 0x0636, SymbolClass::letter},
    {'T', 0x0637, SymbolClass::letter},
    {'Z', 0x0638, SymbolClass::letter},
    {'E', 0x0639, SymbolClass::letter},
    {'g', 0x063A, SymbolClass::letter},
    {'_', 0x0640, SymbolClass::letter},  // tatweel
    {'f', 0x0641, SymbolClass::letter},
    {'q', 0x0642, SymbolClass::letter},
    {'k', 0x0643, SymbolClass::letter},
    {'l', 0x0644, SymbolClass::letter},
    {'m', 0x0645, SymbolClass::letter},
    {'n', 0x0646, SymbolClass::letter},
    {'h', 0x0647, SymbolClass::letter},
    {'w', 0x0648, SymbolClass::letter},
    {'Y', 0x0649, SymbolClass::letter},  // alef maksura
    {'y', 0x064A, SymbolClass::letter},
    {'F', 0x064B, SymbolClass::mark},  // fathatan
    {'N', 0x064C, SymbolClass::mark},  // dammatan
    {'K', 0x064D, SymbolClass::mark},  // kasratan
    {'a', 0x064E, SymbolClass::mark},  // fatha
    {'u', 0x064F, SymbolClass::mark},  // damma
    {'i', 0x0650, SymbolClass::mark},  // kasra
    {'~', 0x0651, SymbolClass::mark},  // shadda
    {'o', 0x0652, SymbolClass::mark},  // sukun
    {'`', 0x0670, SymbolClass::letter},  // dagger alef
    {'{', 0x0671, SymbolClass::letter},  // alef wasla
    {'P', 0x067E, SymbolClass::letter},
    {'J', 0x0686, SymbolClass::letter},
    {'V', 0x06A4, SymbolClass::letter},
    {'G', 0x06AF, SymbolClass::letter},
}};

inline constexpr char kTatweel = '_';

namespace detail {

inline constexpr int kNoEntry = -1;

constexpr std::array<int, 128> make_symbol_index() {
  std::array<int, 128> index{};
  for (auto& slot : index) slot = kNoEntry;
  for (std::size_t i = 0; i < kBuckwalterTable.size(); ++i) {
    index[static_cast<unsigned char>(kBuckwalterTable[i].symbol)] = static_cast<int>(i);
  }
  return index;
}

inline constexpr char32_t kArabicBlockStart = 0x0600;

constexpr std::array<int, 256> make_codepoint_index() {
  std::array<int, 256> index{};
  for (auto& slot : index) slot = kNoEntry;
  for (std::size_t i = 0; i < kBuckwalterTable.size(); ++i) {
    index[kBuckwalterTable[i].codepoint - kArabicBlockStart] = static_cast<int>(i);
  }
  return index;
}

inline constexpr auto kSymbolIndex = make_symbol_index();
inline constexpr auto kCodepointIndex = make_codepoint_index();

constexpr const BuckwalterEntry* entry_for_symbol(char symbol) {
  const auto c = static_cast<unsigned char>(symbol);
  if (c >= 128 || kSymbolIndex[c] == kNoEntry) return nullptr;
  return &kBuckwalterTable[static_cast<std::size_t>(kSymbolIndex[c])];
}

constexpr const BuckwalterEntry* entry_for_codepoint(char32_t cp) {
  if (cp < kArabicBlockStart || cp >= kArabicBlockStart + 256) return nullptr;
  const int i = kCodepointIndex[cp - kArabicBlockStart];
  return i == kNoEntry ? nullptr : &kBuckwalterTable[static_cast<std::size_t>(i)];
}

}  // namespace detail

constexpr bool is_buckwalter_symbol(char c) { return detail::entry_for_symbol(c) != nullptr; }

constexpr bool is_buckwalter_letter(char c) {
  const auto* e = detail::entry_for_symbol(c);
  return e != nullptr && e->cls == SymbolClass::letter;
}

constexpr bool is_buckwalter_mark(char c) {
  const auto* e = detail::entry_for_symbol(c);
  return e != nullptr && e->cls == SymbolClass::mark;
}

// True for codepoints in the Unicode Arabic block (mapped or not).
constexpr bool in_arabic_block(char32_t cp) { return cp >= 0x0600 && cp <= 0x06FF; }

constexpr std::optional<char32_t> codepoint_of(char symbol) {
  const auto* e = detail::entry_for_symbol(symbol);
  if (e == nullptr) return std::nullopt;
  return e->codepoint;
}

constexpr std::optional<char> symbol_of(char32_t cp) {
  const auto* e = detail::entry_for_codepoint(cp);
  if (e == nullptr) return std::nullopt;
  return e->symbol;
}

// Buckwalter -> UTF-8 Arabic. Throws UnknownSymbol with the byte index.
inline std::string bw_to_arabic(std::string_view bw) {
  std::string out;
  out.reserve(bw.size() * 2);
  for (std::size_t i = 0; i < bw.size(); ++i) {
    const auto cp = codepoint_of(bw[i]);
    if (!cp) throw UnknownSymbol(i);
    utf8::append(out, *cp);
  }
  return out;
}

// Arabic codepoints -> Buckwalter. Throws UnknownCodepoint with the
// codepoint index.
inline std::string arabic_to_bw(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto symbol = symbol_of(text[i]);
    if (!symbol) throw UnknownCodepoint(i);
    out.push_back(*symbol);
  }
  return out;
}

inline std::string arabic_to_bw(std::string_view utf8_text) {
  const auto decoded = utf8::decode(utf8_text);
  if (!decoded) throw EncodingError(0);
  return arabic_to_bw(std::u32string_view(*decoded));
}

// Writes the table as TSV: symbol, codepoint, class.
inline void dump_buckwalter_table(std::ostream& out) {
  out << "# buckwalter table version " << kBuckwalterTableVersion << "\n";
  out << "symbol\tcodepoint\tclass\n";
  static constexpr char kHex[] = "0123456789ABCDEF";
  for (const auto& e : kBuckwalterTable) {
    std::string cp = "U+";
    for (int shift = 12; shift >= 0; shift -= 4) cp.push_back(kHex[(e.codepoint >> shift) & 0xF]);
    out << e.symbol << '\t' << cp << '\t'
        << (e.cls == SymbolClass::letter ? "letter" : "mark") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Diacritic marks
// ---------------------------------------------------------------------------

// Vowel and nunation marks. Shadda is carried separately on MarkCombo.
enum class Vowel : std::uint8_t {
  none,
  fatha,     // a
  kasra,     // i
  damma,     // u
  sukun,     // o
  fathatan,  // F
  dammatan,  // N
  kasratan,  // K
};

// The eight primitive marks in PRIOR bit order (a, i, u, o, K, N, F, ~).
enum class PrimitiveMark : std::uint8_t { a, i, u, o, K, N, F, shadda };
inline constexpr std::size_t kPrimitiveMarkCount = 8;

constexpr std::optional<Vowel> vowel_from_symbol(char c) {
  switch (c) {
    case 'a': return Vowel::fatha;
    case 'i': return Vowel::kasra;
    case 'u': return Vowel::damma;
    case 'o': return Vowel::sukun;
    case 'F': return Vowel::fathatan;
    case 'N': return Vowel::dammatan;
    case 'K': return Vowel::kasratan;
    default: return std::nullopt;
  }
}

constexpr char vowel_symbol(Vowel v) {
  switch (v) {
    case Vowel::fatha: return 'a';
    case Vowel::kasra: return 'i';
    case Vowel::damma: return 'u';
    case Vowel::sukun: return 'o';
    case Vowel::fathatan: return 'F';
    case Vowel::dammatan: return 'N';
    case Vowel::kasratan: return 'K';
    case Vowel::none: break;
  }
  return '\0';
}

constexpr std::optional<PrimitiveMark> primitive_of(Vowel v) {
  switch (v) {
    case Vowel::fatha: return PrimitiveMark::a;
    case Vowel::kasra: return PrimitiveMark::i;
    case Vowel::damma: return PrimitiveMark::u;
    case Vowel::sukun: return PrimitiveMark::o;
    case Vowel::kasratan: return PrimitiveMark::K;
    case Vowel::dammatan: return PrimitiveMark::N;
    case Vowel::fathatan: return PrimitiveMark::F;
    case Vowel::none: break;
  }
  return std::nullopt;
}

// Marks attached to one letter: an optional shadda plus at most one vowel,
// or the virtual case-ending marker.
struct MarkCombo {
  Vowel vowel = Vowel::none;
  bool shadda = false;
  bool is_virtual = false;

  static constexpr MarkCombo none() { return {}; }
  static constexpr MarkCombo of(Vowel v, bool with_shadda = false) { return {v, with_shadda, false}; }
  static constexpr MarkCombo virtual_mark() { return {Vowel::none, false, true}; }

  constexpr bool empty() const { return vowel == Vowel::none && !shadda && !is_virtual; }
  constexpr bool valid() const {
    if (is_virtual) return vowel == Vowel::none && !shadda;
    return !(shadda && vowel == Vowel::sukun);
  }

  // Buckwalter rendering in canonical order (shadda first). Virtual renders
  // as "#" here; recompose() emits nothing for it.
  std::string str() const {
    if (is_virtual) return "#";
    std::string s;
    if (shadda) s.push_back('~');
    if (vowel != Vowel::none) s.push_back(vowel_symbol(vowel));
    return s;
  }

  friend constexpr bool operator==(const MarkCombo&, const MarkCombo&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const MarkCombo& m) {
  return os << (m.empty() ? std::string("-") : m.str());
}

// Eight-bit allowed-diacritic vector. Bit k corresponds to PrimitiveMark k.
class PriorBits {
 public:
  constexpr PriorBits() = default;
  constexpr explicit PriorBits(std::uint8_t raw) : bits_(raw) {}
  static constexpr PriorBits all() { return PriorBits(0xFF); }

  constexpr void set(PrimitiveMark m) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(m)); }
  constexpr bool test(PrimitiveMark m) const { return (bits_ >> static_cast<unsigned>(m)) & 1u; }
  constexpr void merge(PriorBits other) { bits_ |= other.bits_; }
  constexpr std::uint8_t raw() const { return bits_; }

  // Observed marks of one letter occurrence.
  static constexpr PriorBits of(const MarkCombo& m) {
    PriorBits b;
    if (m.is_virtual) return b;
    if (m.shadda) b.set(PrimitiveMark::shadda);
    if (auto p = primitive_of(m.vowel)) b.set(*p);
    return b;
  }

  // "01100000": character k is bit k, in the a,i,u,o,K,N,F,~ order.
  std::string str() const {
    std::string s(kPrimitiveMarkCount, '0');
    for (std::size_t k = 0; k < kPrimitiveMarkCount; ++k) {
      if ((bits_ >> k) & 1u) s[k] = '1';
    }
    return s;
  }

  friend constexpr bool operator==(PriorBits, PriorBits) = default;

 private:
  std::uint8_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Diacritized words
// ---------------------------------------------------------------------------

struct DiacritizedWord {
  std::string bare;               // Buckwalter letters only
  std::vector<MarkCombo> marks;   // one per letter of `bare`
  std::optional<std::size_t> ce_index;

  bool well_formed() const {
    if (marks.size() != bare.size()) return false;
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (!marks[i].valid()) return false;
      if (marks[i].is_virtual && ce_index != i) return false;
    }
    return !ce_index || *ce_index < bare.size();
  }

  friend bool operator==(const DiacritizedWord&, const DiacritizedWord&) = default;
};

// Splits a diacritized Buckwalter word into letters and per-letter marks.
// Mark order inside a letter is normalized to shadda-then-vowel.
inline DiacritizedWord decompose(std::string_view word) {
  DiacritizedWord out;
  out.bare.reserve(word.size());
  out.marks.reserve(word.size());
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    const char c = word[pos];
    const auto* entry = detail::entry_for_symbol(c);
    if (entry == nullptr) throw UnknownSymbol(pos);
    if (entry->cls == SymbolClass::letter) {
      out.bare.push_back(c);
      out.marks.push_back(MarkCombo::none());
      continue;
    }
    if (out.bare.empty()) throw OrphanMark(pos);
    MarkCombo& combo = out.marks.back();
    if (c == '~') {
      if (combo.shadda || combo.vowel == Vowel::sukun) throw InvalidMarkCombination(pos);
      combo.shadda = true;
      continue;
    }
    const Vowel v = *vowel_from_symbol(c);
    if (combo.vowel != Vowel::none) throw DoubleVowel(pos);
    if (v == Vowel::sukun && combo.shadda) throw InvalidMarkCombination(pos);
    combo.vowel = v;
  }
  return out;
}

inline std::string recompose(const DiacritizedWord& word) {
  std::string out;
  out.reserve(word.bare.size() * 3);
  for (std::size_t i = 0; i < word.bare.size(); ++i) {
    out.push_back(word.bare[i]);
    const MarkCombo& m = word.marks[i];
    if (m.is_virtual) continue;
    if (m.shadda) out.push_back('~');
    if (m.vowel != Vowel::none) out.push_back(vowel_symbol(m.vowel));
  }
  return out;
}

inline std::string strip_diacritics(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (!is_buckwalter_mark(c)) out.push_back(c);
  }
  return out;
}

// Canonical form of a diacritized Buckwalter word (shadda before vowel).
inline std::string canonicalize(std::string_view word) { return recompose(decompose(word)); }

}  // namespace harakat

#endif  // HARAKAT_CODEC_HPP
