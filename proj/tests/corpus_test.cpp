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


#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "harakat/corpus.hpp"
#include "harakat/morpho.hpp"
#include "support/cli.hpp"
#include "support/oracles.hpp"

namespace harakat {
namespace {

std::vector<SentenceRecord> bw_sentences(const std::string& text) {
  return parse_corpus(text, CorpusFormat::plain, TextEncoding::buckwalter).sentences;
}

std::vector<SentenceRecord> numbered(std::size_t n) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += "ktb" + std::string(i % 7 + 1, 'A') + "\n";
  return bw_sentences(text);
}

TEST(ParseCorpus, SingleArabicToken) {
  const auto c = parse_corpus("كَتَبَ\n", CorpusFormat::plain);
  EXPECT_EQ(c.encoding, TextEncoding::arabic);
  ASSERT_EQ(c.sentences.size(), 1u);
  ASSERT_EQ(c.sentences[0].tokens.size(), 1u);
  const auto& w = c.sentences[0].tokens[0].word;
  EXPECT_EQ(w.bare, "ktb");
  for (const auto& m : w.marks) EXPECT_EQ(m, MarkCombo::of(Vowel::fatha));
}

TEST(ParseCorpus, EmptyInput) {
  EXPECT_TRUE(parse_corpus("", CorpusFormat::plain).sentences.empty());
  EXPECT_TRUE(parse_corpus("\n\n", CorpusFormat::tsv).sentences.empty());
}

TEST(ParseCorpus, OrphanMarkIsMalformed) {
  try {
    parse_corpus("كتب\n ً\n", CorpusFormat::plain);
    FAIL();
  } catch (const MalformedToken& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(ParseCorpus, InvalidUtf8ReportsLine) {
  try {
    parse_corpus("ktb\nk\xC3(b\n", CorpusFormat::plain);
    FAIL();
  } catch (const EncodingError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseCorpus, TatweelAndPunctuation) {
  const auto c = parse_corpus("كـتـب .\n", CorpusFormat::plain);
  ASSERT_EQ(c.sentences[0].tokens.size(), 2u);
  EXPECT_EQ(c.sentences[0].tokens[0].word.bare, "ktb");
  EXPECT_FALSE(c.sentences[0].tokens[1].arabic);
  EXPECT_EQ(c.sentences[0].tokens[1].bare(), ".");
}

TEST(ParseCorpus, TsvColumns) {
  const std::string text =
      "# comment\n"
      "wbmktbtnA\twabimakotabatinaA\tw+b+mktb+t+nA\tCONJ+PREP+NOUN+NSUFF+PRON\tf/sg\n"
      ".\t_\n"
      "\n"
      "ktAb\tkitaAb\n";
  const auto c = parse_corpus(text, CorpusFormat::tsv, TextEncoding::buckwalter, "t");
  ASSERT_EQ(c.sentences.size(), 2u);
  const Token& t = c.sentences[0].tokens[0];
  EXPECT_EQ(t.word.bare, "wbmktbtnA");
  EXPECT_EQ(t.gold.segmentation, "w+b+mktb+t+nA");
  EXPECT_EQ(t.gold.pos, "CONJ+PREP+NOUN+NSUFF+PRON");
  EXPECT_EQ(t.gold.gender_number, "f/sg");
  EXPECT_FALSE(c.sentences[0].tokens[1].arabic);
  EXPECT_EQ(c.sentences[1].line, 5u);
  EXPECT_FALSE(c.sentences[1].tokens[0].gold.segmentation);
}

TEST(ParseCorpus, TsvDiacritizedMustMatch) {
  EXPECT_THROW(parse_corpus("ktAb\tkutub\n", CorpusFormat::tsv, TextEncoding::buckwalter), MalformedToken);
}

TEST(ParseCorpus, BlankPlainLinesAreSkipped) {
  const auto s = bw_sentences("ktb\n\nqlm\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].line, 3u);
}

TEST(SplitValidation, Sizes) {
  auto [train, val] = split_validation(numbered(100), 0.05, 3);
  EXPECT_EQ(train.size(), 95u);
  EXPECT_EQ(val.size(), 5u);
  auto [t2, v2] = split_validation(numbered(2), 0.5, 3);
  EXPECT_EQ(t2.size(), 1u);
  EXPECT_EQ(v2.size(), 1u);
}

TEST(SplitValidation, DeterministicAndDisjoint) {
  const auto corpus = numbered(50);
  const auto a = split_validation(corpus, 0.2, 9);
  const auto b = split_validation(corpus, 0.2, 9);
  ASSERT_EQ(a.second.size(), b.second.size());
  for (std::size_t i = 0; i < a.second.size(); ++i) EXPECT_EQ(a.second[i].raw, b.second[i].raw);
  std::multiset<std::size_t> lines;
  for (const auto& s : a.first) lines.insert(s.line);
  for (const auto& s : a.second) lines.insert(s.line);
  EXPECT_EQ(lines.size(), 50u);
  EXPECT_EQ(std::set<std::size_t>(lines.begin(), lines.end()).size(), 50u);
}

TEST(SplitValidation, Errors) {
  EXPECT_THROW(split_validation({}, 0.05, 1), EmptyCorpus);
  EXPECT_THROW(split_validation(numbered(3), 0.0, 1), Error);
  EXPECT_THROW(split_validation(numbered(3), 1.0, 1), Error);
}

TEST(LexiconTest, CountsForms) {
  const auto lex = build_lexicon(bw_sentences("kitaAb kitaAb kut~aAb\n"));
  const auto* f = lex.forms("ktAb");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->size(), 2u);
  EXPECT_EQ(f->at("kitaAb"), 2u);
  EXPECT_EQ(f->at("kut~aAb"), 1u);
  EXPECT_EQ(lex.most_frequent("ktAb"), "kitaAb");
  EXPECT_EQ(lex.total_tokens(), 3u);
  EXPECT_FALSE(lex.most_frequent("qlm"));
}

TEST(LexiconTest, EmptyTrain) {
  EXPECT_TRUE(build_lexicon({}).empty());
}

TEST(LexiconTest, FormsStripToTheirKey) {
  std::mt19937_64 rng(3);
  std::string text;
  for (int i = 0; i < 200; ++i) text += testing::random_word(rng, "ktbAwy") + (i % 5 == 4 ? "\n" : " ");
  const auto lex = build_lexicon(bw_sentences(text));
  for (const auto& [bare, forms] : lex.entries()) {
    for (const auto& [form, count] : forms) {
      EXPECT_EQ(strip_diacritics(form), bare);
      EXPECT_GT(count, 0u);
    }
  }
}

TEST(LexiconTest, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const auto lex = build_lexicon(bw_sentences("kitaAb kut~aAb qalamN\n"));
  lex.save(dir / "lex.bin");
  const auto back = Lexicon::load(dir / "lex.bin");
  EXPECT_EQ(back.entries(), lex.entries());
  EXPECT_EQ(back.total_tokens(), lex.total_tokens());
  EXPECT_THROW(PriorTable::load(dir / "lex.bin"), FormatError);
}

TEST(PriorTableTest, ToyVectors) {
  const NaiveAnnotator naive;
  const auto table = build_prior_table(bw_sentences("kitaAb kut~aAb\n"), naive);
  EXPECT_EQ(table.lookup("ktAb")[0].str(), "01100000");
  EXPECT_EQ(table.lookup("ktAb")[1].str(), "10000001");
  for (const auto& b : table.lookup("qlm")) EXPECT_EQ(b.str(), "11111111");
  const auto once = build_prior_table(bw_sentences("katab\n"), naive);
  EXPECT_EQ(once.lookup("ktb")[0].str(), "10000000");
  EXPECT_EQ(once.lookup("ktb")[2].str(), "00000000");
}

TEST(PriorTableTest, SegmentsAreKeyedSeparately) {
  const NaiveAnnotator naive;
  const auto table = build_prior_table(bw_sentences("wAlkitaAbu\n"), naive);
  EXPECT_TRUE(table.contains("w"));
  EXPECT_TRUE(table.contains("Al"));
  EXPECT_EQ(table.lookup("ktAb")[0].str(), "01000000");
}

TEST(PriorTableTest, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const NaiveAnnotator naive;
  const auto table = build_prior_table(bw_sentences("kitaAb kut~aAb wAlqalamu\n"), naive);
  table.save(dir / "p.bin");
  const auto back = PriorTable::load(dir / "p.bin");
  std::ostringstream a, b;
  table.export_tsv(a);
  back.export_tsv(b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Fingerprint, OrderSensitive) {
  EXPECT_NE(corpus_fingerprint(bw_sentences("ktb\nqlm\n")), corpus_fingerprint(bw_sentences("qlm\nktb\n")));
  EXPECT_EQ(corpus_fingerprint(bw_sentences("ktb\nqlm\n")), corpus_fingerprint(bw_sentences("ktb\n\nqlm\n")));
}

}  // namespace
}  // namespace harakat
