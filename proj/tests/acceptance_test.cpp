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


// End-to-end acceptance checks. Each test is one criterion; the listener
// prints a single PASS/FAIL line per criterion after it runs.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>

#include "harakat/harakat.hpp"
#include "support/cli.hpp"
#include "support/nn_support.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace harakat {
namespace {

namespace fs = std::filesystem;

std::vector<SentenceRecord> bw(const std::string& text) {
  return parse_corpus(text, CorpusFormat::plain, TextEncoding::buckwalter).sentences;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

TEST(Acceptance, C01_CodecRoundTrip) {
  std::mt19937_64 rng(1);
  std::string letters;
  for (char c : testing::all_letters()) letters.push_back(c);
  const auto start = std::chrono::steady_clock::now();
  std::size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string x = testing::random_word(rng, letters, 1, 10);
    if (recompose(decompose(x)) != x) ++failures;
    if (arabic_to_bw(bw_to_arabic(x)) != x) ++failures;
  }
  const double elapsed = seconds_since(start);
  std::printf("  codec: 10000 words, %zu failures, %.3f s\n", failures, elapsed);
  EXPECT_EQ(failures, 0u);
  EXPECT_LT(elapsed, 5.0);
}

TEST(Acceptance, C02_SegmentAndPriorExamples) {
  EXPECT_EQ(render_seg_labels(AffixSegmenter().segment("wAlktAb")), "S+BE+BMME");
  const NaiveAnnotator naive;
  const auto table = build_prior_table(bw("kitaAb kut~aAb\n"), naive);
  const auto ktab = table.lookup("ktAb");
  ASSERT_FALSE(ktab.empty());
  EXPECT_EQ(ktab[0].str(), "01100000");
  for (const auto& bits : table.lookup("qlm")) EXPECT_EQ(bits.str(), "11111111");
  const CharVocabulary chars = CharVocabulary::build(bw("kitaAb kut~aAb\n"));
  const auto unseen = CwEncoder(chars, table).encode(bw("qalam\n")[0], naive);
  for (const auto& row : unseen[0].rows) {
    EXPECT_EQ(row.prior.str(), "11111111");
  }
}

TEST(Acceptance, C03_PriorReplay) {
  std::mt19937_64 rng(3);
  const NaiveAnnotator naive;
  std::size_t occurrences = 0, misses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    const std::size_t words = 5 + testing::pick(rng, 20);
    for (std::size_t i = 0; i < words; ++i) {
      text += testing::random_word(rng, "wblktAmyfs", 1, 7);
      text += (i % 5 == 4 || i + 1 == words) ? "\n" : " ";
    }
    const auto train = bw(text);
    const auto chars = CharVocabulary::build(train);
    const auto priors = build_prior_table(train, naive);
    const CwEncoder encoder(chars, priors);
    for (const auto& s : train) {
      for (const auto& ex : encoder.encode(s, naive)) {
        for (const auto& span : ex.spans) {
          const auto& word = s.tokens[span.token].word;
          for (std::size_t i = 0; i < span.length; ++i) {
            const PriorBits observed = PriorBits::of(word.marks[i]);
            ++occurrences;
            if ((ex.rows[span.begin + i].prior.raw() & observed.raw()) != observed.raw()) ++misses;
          }
        }
      }
    }
  }
  std::printf("  prior replay: %zu letter occurrences, %zu misses\n", occurrences, misses);
  EXPECT_GT(occurrences, 0u);
  EXPECT_EQ(misses, 0u);
}

TEST(Acceptance, C04_GradientCheck) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto kind = seed % 2 == 0 ? nn::ModelKind::cw : nn::ModelKind::ce;
    std::mt19937_64 rng(seed);
    nn::SequenceModel<double> model(testing::tiny_config(rng, kind));
    model.initialize(seed);
    for (auto& p : model.parameters()) p *= 10.0;
    ASSERT_LE(model.parameter_count(), 2000u);
    const auto batch = testing::random_samples(rng, model.config(), 3, 5);
    const double err = testing::max_gradient_error(model, batch, seed * 31);
    worst = std::max(worst, err);
    EXPECT_LT(err, 1e-4) << "model " << seed;
  }
  std::printf("  gradient check: max relative error %.3g over 20 models\n", worst);
}

TEST(Acceptance, C05_Memorization) {
  testing::SyntheticLanguage lang(5, 12);
  const auto corpus = parse_corpus(lang.corpus_tsv(50, {.sentences = 50}), CorpusFormat::tsv);
  const std::span<const SentenceRecord> all(corpus.sentences);
  const GoldAnnotator gold;
  nn::TrainConfig cfg;
  cfg.batch_size = 8;
  cfg.max_epochs = 200;
  cfg.patience = 200;
  const auto start = std::chrono::steady_clock::now();
  const auto cw = train_cw(all, all, gold, CwFeatureSet::all, cfg, ModelShape::cw_default());
  const double cw_seconds = seconds_since(start);
  const Diacritizer cw_only(&cw.bundle, nullptr, std::make_shared<GoldAnnotator>(), nullptr, {{false}});
  const double cw_accuracy = 1.0 - score(corpus.sentences, cw_only.diacritize(all), ScoreMode::cw, gold).wer();

  const auto ce = train_ce(all, all, gold, FeatureSet::all_misc, {}, cfg, ModelShape::ce_default());
  const Diacritizer ce_only(nullptr, &ce.bundle, std::make_shared<GoldAnnotator>(), nullptr, {{false}});
  const double ce_accuracy = 1.0 - score(corpus.sentences, ce_only.diacritize(all), ScoreMode::ce, gold).ceer();
  std::printf("  memorization: CW token accuracy %.4f in %zu epochs (%.1f s), CE accuracy %.4f in %zu epochs\n",
              cw_accuracy, cw.history.stopped_epoch(), cw_seconds, ce_accuracy, ce.history.stopped_epoch());
  EXPECT_GE(cw_accuracy, 0.99);
  EXPECT_GE(ce_accuracy, 0.99);
  EXPECT_LT(cw_seconds, 300.0);
}

TEST(Acceptance, C06_FeatureUtilityOrdering) {
  testing::SyntheticLanguage lang(11);
  const auto corpus = parse_corpus(lang.corpus_tsv(1, {.sentences = 2000}), CorpusFormat::tsv);
  const auto test = parse_corpus(lang.corpus_tsv(2, {.sentences = 300}), CorpusFormat::tsv);
  const auto [train, val] = split_validation(corpus.sentences, 0.05, 1);
  const GoldAnnotator gold;
  std::vector<double> chars_wer, all_wer, word_ceer, misc_ceer;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    nn::TrainConfig cfg;
    cfg.batch_size = 32;
    cfg.max_epochs = 10;
    cfg.seed = seed;
    for (auto set : {CwFeatureSet::chars, CwFeatureSet::all}) {
      const auto r = train_cw(train, val, gold, set, cfg, ModelShape::cw_default());
      const Diacritizer d(&r.bundle, nullptr, std::make_shared<GoldAnnotator>(), nullptr, {{false}});
      const double wer = score(test.sentences, d.diacritize(test.sentences), ScoreMode::cw, gold).wer();
      (set == CwFeatureSet::chars ? chars_wer : all_wer).push_back(wer);
    }
    for (auto set : {FeatureSet::word, FeatureSet::all_misc}) {
      const auto r = train_ce(train, val, gold, set, {}, cfg, ModelShape::ce_default());
      const Diacritizer d(nullptr, &r.bundle, std::make_shared<GoldAnnotator>(), nullptr, {{false}});
      const double ceer = score(test.sentences, d.diacritize(test.sentences), ScoreMode::ce, gold).ceer();
      (set == FeatureSet::word ? word_ceer : misc_ceer).push_back(ceer);
    }
  }
  std::printf("  median held-out CW WER: CHAR %.4f, ALL %.4f\n", median(chars_wer), median(all_wer));
  std::printf("  median held-out CEER: word %.4f, all-misc %.4f\n", median(word_ceer), median(misc_ceer));
  EXPECT_LT(median(all_wer), median(chars_wer));
  EXPECT_LT(median(misc_ceer), median(word_ceer));
}

// Replaces the core marks of some Arabic words with random ones, keeping the
// case-ending slot.
std::vector<SentenceRecord> corrupt(std::vector<SentenceRecord> corpus, std::mt19937_64& rng) {
  for (auto& s : corpus) {
    for (auto& t : s.tokens) {
      if (!t.arabic || testing::pick(rng, 3) != 0) continue;
      for (std::size_t i = 0; i < t.word.marks.size(); ++i) {
        if (t.word.ce_index == i) continue;
        const auto combo = decompose(std::string(1, t.word.bare[i]) +
                                     std::string(testing::kMarkStrings[testing::pick(rng, 5)]));
        t.word.marks[i] = combo.marks[0];
      }
    }
  }
  return corpus;
}

TEST(Acceptance, C07_PostCorrection) {
  const auto lex = build_lexicon(bw("kitaAb kitaAb kut~aAb\n"));
  auto predicted = [](std::string_view form) {
    auto w = decompose(form);
    w.ce_index = 3;
    return w;
  };
  EXPECT_EQ(recompose(post_correct(predicted("kutaAb"), lex)), "kitaAb");
  EXPECT_EQ(recompose(post_correct(predicted("kitiAb"), lex)), "kitaAb");
  EXPECT_EQ(recompose(post_correct(predicted("kut~aAb"), lex)), "kut~aAb");
  EXPECT_EQ(recompose(post_correct(predicted("kitaAb"), lex)), "kitaAb");
  EXPECT_EQ(recompose(post_correct(predicted("qalam"), lex)), "qalam");

  const GoldAnnotator gold;
  std::size_t increases = 0;
  double before_sum = 0.0, after_sum = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    testing::SyntheticLanguage lang(100 + trial, 20);
    const auto train = parse_corpus(lang.corpus_tsv(2 * trial + 1, {.sentences = 600}), CorpusFormat::tsv);
    auto ref = parse_corpus(lang.corpus_tsv(2 * trial + 2, {.sentences = 40}), CorpusFormat::tsv).sentences;
    for (auto& s : ref) {
      const auto annotations = gold.annotate(s);
      for (std::size_t t = 0; t < s.tokens.size(); ++t) {
        if (s.tokens[t].arabic) assign_ce_slot(s.tokens[t].word, annotations[t].segmentation);
      }
    }
    const Lexicon lexicon = build_lexicon(train.sentences);
    std::mt19937_64 rng(trial);
    const auto hyp = corrupt(ref, rng);
    auto fixed = hyp;
    for (auto& s : fixed) {
      for (auto& t : s.tokens) {
        if (t.arabic) t.word = post_correct(t.word, lexicon);
      }
    }
    const double before = score(ref, hyp, ScoreMode::full, gold).wer();
    const double after = score(ref, fixed, ScoreMode::full, gold).wer();
    before_sum += before;
    after_sum += after;
    if (after > before) ++increases;
  }
  std::printf("  post-correction: mean WER %.4f -> %.4f, %zu of 100 trials increased\n", before_sum / 100,
              after_sum / 100, increases);
  EXPECT_EQ(increases, 0u);
}

TEST(Acceptance, C08_ScorerOracle) {
  std::mt19937_64 rng(8);
  const NaiveAnnotator naive;
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pair = testing::random_corpus_pair(rng);
    const auto ref = bw(pair.ref);
    const auto hyp = bw(pair.hyp);
    const auto oref = testing::oracle_tokens(ref, ref, naive);
    const auto ohyp = testing::oracle_tokens(hyp, ref, naive);
    for (auto [mode, m] : {std::pair{ScoreMode::cw, 'w'}, {ScoreMode::ce, 'c'}, {ScoreMode::full, 'f'}}) {
      const auto got = score(ref, hyp, mode, naive);
      const auto want = testing::oracle_score(oref, ohyp, m);
      if (got.token_count != want.tokens || got.error_count != want.errors || got.letter_count != want.letters ||
          got.letter_errors != want.letter_errors) {
        ++mismatches;
        ADD_FAILURE() << "mode " << m << "\nref: " << pair.ref << "hyp: " << pair.hyp;
      }
    }
  }
  std::printf("  scorer oracle: 1000 corpus pairs x 3 modes, %zu mismatches\n", mismatches);
}

TEST(Acceptance, C09_EarlyStopping) {
  for (std::size_t k : {1u, 3u, 7u}) {
    std::mt19937_64 rng(9);
    nn::SequenceModel<float> model(testing::tiny_config(rng, nn::ModelKind::cw));
    model.initialize(9);
    const auto data = testing::random_samples(rng, model.config(), 10, 6);
    nn::TrainConfig cfg;
    cfg.batch_size = 4;
    cfg.max_epochs = 100;
    std::vector<std::vector<float>> snapshots;
    nn::TrainHooks hooks;
    hooks.validation_loss = [k](std::size_t epoch, const nn::SequenceModel<float>&) {
      return epoch <= k ? 100.0 - static_cast<double>(epoch) : 100.0 - static_cast<double>(k);
    };
    hooks.on_epoch = [&](const nn::EpochRecord&, const nn::SequenceModel<float>& m) {
      snapshots.emplace_back(m.parameters().begin(), m.parameters().end());
    };
    const auto h = nn::train(model, data, {}, cfg, hooks);
    std::printf("  early stopping: flat after epoch %zu, stopped at %zu, restored epoch %zu\n", k, h.stopped_epoch(),
                h.best_epoch);
    EXPECT_TRUE(h.early_stopped);
    EXPECT_EQ(h.stopped_epoch(), k + 5);
    EXPECT_EQ(h.best_epoch, k);
    ASSERT_EQ(snapshots.size(), k + 5);
    EXPECT_EQ(std::vector<float>(model.parameters().begin(), model.parameters().end()), snapshots[k - 1]);
  }
}

std::vector<std::pair<std::string, std::string>> tree_contents(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = fs::relative(entry.path(), root).string();
    if (name == ".stdout" || name == ".stderr") continue;
    out.emplace_back(name, testing::read_text(entry.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Acceptance, C10_Determinism) {
  testing::SyntheticLanguage lang(10, 12);
  const std::string corpus = lang.corpus_tsv(10, {.sentences = 80});
  const std::string heldout = lang.corpus_tsv(11, {.sentences = 10});
  const std::string small =
      " --seed 3 --max-epochs 3 --batch-size 16 --embed-dim 16 --lstm-units 16 --dense-units 16";
  std::vector<std::vector<std::pair<std::string, std::string>>> runs;
  for (int run = 0; run < 2; ++run) {
    testing::TempDir dir("harakat-determinism");
    testing::write_text(dir / "train.tsv", corpus);
    testing::write_text(dir / "test.tsv", heldout);
    for (const std::string& cmd :
         {"train --mode cw --corpus train.tsv --out models" + small,
          "train --mode ce --corpus train.tsv --out models" + small,
          std::string("diacritize --models models --input test.tsv --output out.tsv"),
          std::string("evaluate --reference test.tsv --hypothesis out.tsv --mode full --out eval")}) {
      const auto r = testing::run_cli(cmd, dir.path());
      ASSERT_EQ(r.exit_code, 0) << cmd << "\n" << r.err;
    }
    runs.push_back(tree_contents(dir.path()));
  }
  ASSERT_EQ(runs[0].size(), runs[1].size());
  std::size_t differing = 0;
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    EXPECT_EQ(runs[0][i].first, runs[1][i].first);
    if (runs[0][i].second != runs[1][i].second) {
      ++differing;
      ADD_FAILURE() << runs[0][i].first << " differs between runs";
    }
  }
  std::printf("  determinism: %zu files compared, %zu differ\n", runs[0].size(), differing);
  EXPECT_GE(runs[0].size(), 12u);
}

TEST(Acceptance, C11_LengthCapping) {
  std::mt19937_64 rng(11);
  std::string line;
  std::size_t tokens = 0, length = 0;
  while (length < 3000) {
    if (!line.empty()) line += ' ', ++length;
    const std::string word = testing::pick(rng, 10) == 0 ? std::string(".") : testing::random_word(rng, "ktbwlmnsAy", 1, 9);
    line += word;
    length += word == "." ? 1 : decompose(word).bare.size();
    ++tokens;
  }
  const auto sentence = bw(line + "\n")[0];
  ASSERT_EQ(sentence.tokens.size(), tokens);
  std::size_t characters = 0;
  for (const auto& t : sentence.tokens) characters += t.arabic ? t.word.bare.size() : 1;
  characters += tokens - 1;
  const NaiveAnnotator naive;
  const auto chars = CharVocabulary::build(std::vector<SentenceRecord>{sentence});
  const PriorTable priors = build_prior_table(std::vector<SentenceRecord>{sentence}, naive);
  const auto chunks = CwEncoder(chars, priors).encode(sentence, naive);
  std::size_t next = 0, longest = 0;
  for (const auto& chunk : chunks) {
    longest = std::max(longest, chunk.size());
    EXPECT_LE(chunk.size(), kMaxSentenceRows);
    for (const auto& span : chunk.spans) {
      EXPECT_EQ(span.token, next);
      ++next;
    }
  }
  std::printf("  length capping: %zu characters, %zu tokens, %zu chunks, longest %zu rows\n", characters, tokens,
              chunks.size(), longest);
  EXPECT_GE(characters, 3000u);
  EXPECT_GE(chunks.size(), 3u);
  EXPECT_EQ(next, tokens);
}

class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const std::string name = info.name();
    const int number = std::stoi(name.substr(1, 2));
    const bool passed = info.result()->Passed();
    std::printf("ACCEPTANCE %2d %-28s %s\n", number, name.substr(4).c_str(), passed ? "PASS" : "FAIL");
    std::fflush(stdout);
    (passed ? passed_ : failed_) += 1;
  }
  void OnTestProgramEnd(const ::testing::UnitTest&) override {
    std::printf("ACCEPTANCE SUMMARY: %d passed, %d failed\n", passed_, failed_);
  }

 private:
  int passed_ = 0;
  int failed_ = 0;
};

}  // namespace
}  // namespace harakat

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(new harakat::CriterionPrinter);
  return RUN_ALL_TESTS();
}
