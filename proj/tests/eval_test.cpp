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
#include <sstream>

#include "harakat/corpus.hpp"
#include "harakat/eval.hpp"
#include "support/oracles.hpp"

namespace harakat {
namespace {

std::vector<SentenceRecord> bw(const std::string& text) {
  return parse_corpus(text, CorpusFormat::plain, TextEncoding::buckwalter).sentences;
}

const NaiveAnnotator kNaive;

TEST(Score, IdenticalCorporaScoreZero) {
  const auto c = bw("wAlkitaAbu jadiydN .\nkataba\n");
  for (auto mode : {ScoreMode::cw, ScoreMode::ce, ScoreMode::full}) {
    const auto r = score(c, c, mode, kNaive);
    EXPECT_EQ(r.error_count, 0u);
    EXPECT_EQ(r.letter_errors, 0u);
    EXPECT_GT(r.token_count, 0u);
  }
}

TEST(Score, WordErrorRate) {
  const auto r = score(bw("kataba qalamN fiy baytK\n"), bw("kutiba qalamN fiy baytK\n"), ScoreMode::cw, kNaive);
  EXPECT_EQ(r.token_count, 4u);
  EXPECT_DOUBLE_EQ(r.wer(), 0.25);
}

TEST(Score, DiacriticErrorRate) {
  const auto r = score(bw("kataba\n"), bw("kitaba\n"), ScoreMode::cw, kNaive);
  EXPECT_EQ(r.letter_count, 3u);
  EXPECT_EQ(r.letter_errors, 1u);
  EXPECT_NEAR(r.der(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(score(bw("kataba\n"), bw("kitaba\n"), ScoreMode::full, kNaive).der(), 1.0 / 3.0, 1e-12);
}

TEST(Score, RelaxedRules) {
  EXPECT_EQ(score(bw("kitAb\n"), bw("kitaAbo\n"), ScoreMode::full, kNaive).error_count, 0u);
  EXPECT_EQ(score(bw("yaquwlu\n"), bw("yaqwlu\n"), ScoreMode::full, kNaive).error_count, 0u);
  EXPECT_EQ(score(bw("fiy\n"), bw("fyo\n"), ScoreMode::full, kNaive).error_count, 0u);
  EXPECT_EQ(score(bw("kataba\n"), bw("kataba~\n"), ScoreMode::full, kNaive).error_count, 1u);
}

TEST(Score, CaseEndingOnlyAffectsCeModes) {
  const auto ref = bw("kitaAbu .\n");
  const auto hyp = bw("kitaAba .\n");
  EXPECT_EQ(score(ref, hyp, ScoreMode::cw, kNaive).error_count, 0u);
  const auto ce = score(ref, hyp, ScoreMode::ce, kNaive);
  EXPECT_EQ(ce.token_count, 2u);
  EXPECT_EQ(ce.error_count, 1u);
  const auto full = score(ref, hyp, ScoreMode::full, kNaive);
  EXPECT_EQ(full.token_count, 1u);
  EXPECT_EQ(full.letter_errors, 1u);
}

TEST(Score, AlignmentErrors) {
  try {
    score(bw("ktb qlm\n"), bw("ktb\n"), ScoreMode::cw, kNaive);
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.sentence(), 0u);
  }
  try {
    score(bw("ktb qlm\n"), bw("ktb qlb\n"), ScoreMode::cw, kNaive);
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.token(), 1u);
  }
  EXPECT_THROW(score(bw("ktb\nqlm\n"), bw("ktb\n"), ScoreMode::cw, kNaive), AlignmentError);
}

TEST(Score, AgreesWithOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = testing::random_corpus_pair(rng);
    const auto ref = bw(pair.ref);
    const auto hyp = bw(pair.hyp);
    const auto oref = testing::oracle_tokens(ref, ref, kNaive);
    const auto ohyp = testing::oracle_tokens(hyp, ref, kNaive);
    for (auto [mode, m] : {std::pair{ScoreMode::cw, 'w'}, {ScoreMode::ce, 'c'}, {ScoreMode::full, 'f'}}) {
      const auto got = score(ref, hyp, mode, kNaive);
      const auto want = testing::oracle_score(oref, ohyp, m);
      ASSERT_EQ(got.token_count, want.tokens) << pair.ref << pair.hyp;
      ASSERT_EQ(got.error_count, want.errors) << pair.ref << pair.hyp;
      ASSERT_EQ(got.letter_count, want.letters) << pair.ref << pair.hyp;
      ASSERT_EQ(got.letter_errors, want.letter_errors) << pair.ref << pair.hyp;
    }
  }
}

TEST(Confusion, OffDiagonalMatchesCeErrors) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pair = testing::random_corpus_pair(rng);
    const auto ref = bw(pair.ref);
    const auto hyp = bw(pair.hyp);
    const auto c = confusion(ref, hyp, kNaive);
    const auto s = score(ref, hyp, ScoreMode::ce, kNaive);
    EXPECT_EQ(c.errors(), s.error_count);
    EXPECT_EQ(c.total(), s.token_count);
  }
}

TEST(Confusion, SingleError) {
  const auto ref = bw("kataba kataba kataba kataba kataba kataba kataba kataba kataba kataba\n");
  const auto hyp = bw("katabu kataba kataba kataba kataba kataba kataba kataba kataba kataba\n");
  const auto c = confusion(ref, hyp, kNaive);
  const auto a = CeLabel::parse("a")->id();
  const auto u = CeLabel::parse("u")->id();
  EXPECT_EQ(c.matrix[a][u], 1u);
  EXPECT_EQ(c.errors(), 1u);
  const auto rows = error_rows(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].label, "a ⇒ u");
  EXPECT_DOUBLE_EQ(rows[0].share, 100.0);
}

TEST(Confusion, BothDirectionsMerge) {
  const auto ref = bw("kataba katabu katabu\n");
  const auto hyp = bw("katabu kataba kataba\n");
  const auto rows = error_rows(confusion(ref, hyp, kNaive));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].label, "a ⇔ u");
  EXPECT_EQ(rows[0].count, 3u);
  EXPECT_EQ(error_rows(confusion(ref, hyp, kNaive), true)[0].label, "a <=> u");
}

TEST(Confusion, AllCorrectHasNoErrors) {
  const auto c = bw("kataba katabu .\n");
  const auto report = confusion(c, c, kNaive);
  EXPECT_EQ(report.errors(), 0u);
  EXPECT_TRUE(error_rows(report).empty());
}

TEST(Reports, TextAndTsv) {
  const auto ref = bw("kataba katabu\n");
  const auto hyp = bw("kataba kataba\n");
  std::ostringstream text, tsv;
  write_score_text(text, score(ref, hyp, ScoreMode::ce, kNaive));
  write_score_tsv(tsv, score(ref, hyp, ScoreMode::cw, kNaive));
  EXPECT_NE(text.str().find("CEER: 0.5000"), std::string::npos);
  EXPECT_NE(tsv.str().find("cw\t2\t0\t0.000000"), std::string::npos);
  std::ostringstream conf;
  write_confusion_text(conf, confusion(ref, hyp, kNaive));
  EXPECT_NE(conf.str().find("u ⇒ a\t1\t100.0"), std::string::npos);
  EXPECT_EQ(parse_score_mode("full"), ScoreMode::full);
  EXPECT_THROW(parse_score_mode("strict"), Error);
}

}  // namespace
}  // namespace harakat
