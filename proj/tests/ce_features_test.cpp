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

#include "harakat/ce_features.hpp"
#include "harakat/corpus.hpp"
#include "support/cli.hpp"

namespace harakat {
namespace {

std::vector<SentenceRecord> bw(const std::string& text) {
  return parse_corpus(text, CorpusFormat::plain, TextEncoding::buckwalter).sentences;
}

const std::string& field(const CeValues& v, CeField f) { return v[static_cast<std::size_t>(f)]; }

TEST(CeValuesTest, AffixedWord) {
  const auto s = parse_corpus("wbmktbtnA\t_\tw+b+mktb+t+nA\tCONJ+PREP+NOUN+NSUFF+PRON\tf/sg\n", CorpusFormat::tsv,
                              TextEncoding::buckwalter)
                     .sentences[0];
  const auto a = GoldAnnotator().annotate(s);
  const auto v = ce_values(s.tokens[0], a[0], {});
  EXPECT_EQ(field(v, CeField::word), "wbmktbtnA");
  EXPECT_EQ(field(v, CeField::prefixes), "w+b");
  EXPECT_EQ(field(v, CeField::suffixes), "+nA");
  EXPECT_EQ(field(v, CeField::word_head_uni), "w");
  EXPECT_EQ(field(v, CeField::word_head_bi), "wb");
  EXPECT_EQ(field(v, CeField::word_tail_uni), "A");
  EXPECT_EQ(field(v, CeField::word_tail_bi), "nA");
  EXPECT_EQ(field(v, CeField::stem), "mktbt");
  EXPECT_EQ(field(v, CeField::stem_tail_uni), "t");
  EXPECT_EQ(field(v, CeField::stem_tail_bi), "bt");
  EXPECT_EQ(field(v, CeField::word_pos), "CONJ+PREP+NOUN+NSUFF+PRON");
  EXPECT_EQ(field(v, CeField::prefix_pos), "CONJ+PREP");
  EXPECT_EQ(field(v, CeField::suffix_pos), "PRON");
  EXPECT_EQ(field(v, CeField::gender_number), "f/sg");
}

TEST(CeValuesTest, TemplateAndLists) {
  const auto s = bw("mktbp jwn\n")[0];
  const auto a = NaiveAnnotator().annotate(s);
  CeWordLists lists;
  lists.sukun_words.insert("jwn");
  const auto v0 = ce_values(s.tokens[0], a[0], lists);
  const auto v1 = ce_values(s.tokens[1], a[1], lists);
  EXPECT_EQ(field(v0, CeField::stem_template), "mfElp");
  EXPECT_EQ(field(v0, CeField::is_sukun_word), "0");
  EXPECT_EQ(field(v1, CeField::is_sukun_word), "1");
  EXPECT_EQ(field(v1, CeField::is_named_entity), "0");
}

TEST(CeValuesTest, EmptyAffixesAndShortWords) {
  const auto s = bw("w .\n")[0];
  const auto a = NaiveAnnotator().annotate(s);
  const auto v = ce_values(s.tokens[0], a[0], {});
  EXPECT_EQ(field(v, CeField::prefixes), "-");
  EXPECT_EQ(field(v, CeField::suffixes), "-");
  EXPECT_EQ(field(v, CeField::word_head_bi), "^w");
  EXPECT_EQ(field(v, CeField::word_tail_bi), "w^");
  const auto p = ce_values(s.tokens[1], a[1], {});
  EXPECT_EQ(field(p, CeField::word_pos), "PUNC");
}

TEST(SukunList, Membership) {
  const NaiveAnnotator naive;
  const auto train = bw(
      "mino mino mino mino mino\n"
      "Eano Eana Eano\n"
      "lamo lamo\n");
  const auto list = build_sukun_list(train, naive);
  EXPECT_TRUE(list.contains("mn"));
  EXPECT_FALSE(list.contains("En"));
  EXPECT_FALSE(list.contains("lm"));
  EXPECT_TRUE(build_sukun_list(train, naive, 2).contains("lm"));
  EXPECT_FALSE(list.contains("qd"));
}

TEST(Gazetteer, Loading) {
  testing::TempDir dir;
  testing::write_text(dir / "ne.txt", "jwn\njwn\n# comment\nلندن\n");
  const auto ne = load_ne_gazetteer(dir / "ne.txt");
  EXPECT_EQ(ne.size(), 2u);
  EXPECT_TRUE(ne.contains("jwn"));
  EXPECT_TRUE(ne.contains("lndn"));
  testing::write_text(dir / "empty.txt", "");
  EXPECT_TRUE(load_ne_gazetteer(dir / "empty.txt").empty());
  EXPECT_THROW(load_ne_gazetteer(dir / "missing.txt"), IoError);
}

TEST(Selectors, LiveFields) {
  auto count = [](FeatureSet s) {
    const auto live = live_fields(s);
    return std::count(live.begin(), live.end(), true);
  };
  const auto word = live_fields(FeatureSet::word);
  EXPECT_EQ(count(FeatureSet::word), 1);
  EXPECT_TRUE(word[static_cast<std::size_t>(CeField::word)]);
  const auto surface = live_fields(FeatureSet::word_surface);
  EXPECT_EQ(count(FeatureSet::word_surface), 4);
  for (auto f : {CeField::word, CeField::stem, CeField::prefixes, CeField::suffixes}) {
    EXPECT_TRUE(surface[static_cast<std::size_t>(f)]);
  }
  EXPECT_EQ(count(FeatureSet::all_misc), static_cast<std::ptrdiff_t>(kCeFieldCount));
  EXPECT_EQ(parse_feature_set("word-surface-POS-morph"), FeatureSet::word_surface_pos_morph);
  EXPECT_THROW(parse_feature_set("everything"), Error);
}

TEST(Selectors, MaskedRow) {
  const auto s = bw("wAlkitaAbu\n")[0];
  const auto a = NaiveAnnotator().annotate(s);
  const auto v = ce_values(s.tokens[0], a[0], {});
  const auto vocab = CeVocabulary::build(std::vector<CeValues>{v});
  const auto word = extract_ce_row(v, vocab, FeatureSet::word);
  const auto all = extract_ce_row(v, vocab, FeatureSet::all_misc);
  EXPECT_EQ(word[0], all[0]);
  EXPECT_GE(word[0], kFirstValueId);
  for (std::size_t f = 1; f < kCeFieldCount; ++f) {
    EXPECT_EQ(word[f], kMaskId);
    EXPECT_GE(all[f], kFirstValueId);
  }
}

TEST(CeExampleTest, LabelsIncludeNonArabic) {
  const auto s = bw("wAlkitaAbu . fiy\n")[0];
  const NaiveAnnotator naive;
  const auto ex = encode_ce(s, naive.annotate(s), {});
  ASSERT_EQ(ex.size(), 3u);
  EXPECT_EQ(ex.labels[0].name(), "u");
  EXPECT_TRUE(ex.labels[1].is_virtual());
  EXPECT_TRUE(ex.labels[2].is_virtual());
  const auto vocab = CeVocabulary::build(ex.values);
  const auto sample = ce_sample(ex, vocab, FeatureSet::all_misc);
  EXPECT_EQ(sample.scored(), 3u);
  EXPECT_EQ(sample.features.size(), 3 * kCeFieldCount);
}

TEST(CeVocabularyTest, RoundTripAndUnknown) {
  const auto s = bw("wAlkitaAbu jwn\n")[0];
  const auto ex = encode_ce(s, NaiveAnnotator().annotate(s), {});
  const auto vocab = CeVocabulary::build(ex.values);
  BinaryWriter w;
  vocab.write(w);
  BinaryReader r(w.data());
  EXPECT_EQ(CeVocabulary::read(r), vocab);
  EXPECT_EQ(vocab.id(CeField::word, "zzz"), kUnkId);
  EXPECT_EQ(vocab.size(CeField::is_sukun_word), kFirstValueId + 2);
}

}  // namespace
}  // namespace harakat
