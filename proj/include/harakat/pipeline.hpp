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

#ifndef HARAKAT_PIPELINE_HPP
#define HARAKAT_PIPELINE_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harakat/binary_io.hpp"
#include "harakat/ce_features.hpp"
#include "harakat/codec.hpp"
#include "harakat/corpus.hpp"
#include "harakat/cw_features.hpp"
#include "harakat/labels.hpp"
#include "harakat/morpho.hpp"
#include "harakat/nn/trainer.hpp"
#include "harakat/postcorrect.hpp"
#include "harakat/sentence.hpp"

namespace harakat {

inline constexpr std::string_view kVersion = "0.1.0";

// Layer sizes; the defaults of each mode are cw_default()/ce_default().
struct ModelShape {
  std::size_t embed_dim = 50;
  std::size_t lstm_units = 100;
  std::size_t dense_units = 100;
  double input_dropout = 0.0;
  double dense_dropout = 0.0;

  static ModelShape cw_default() { return {}; }
  static ModelShape ce_default() { return {100, 100, 100, 0.75, 0.15}; }

  void apply(nn::ModelConfig& c) const {
    c.embed_dim = embed_dim;
    c.lstm_units = lstm_units;
    c.dense_units = dense_units;
    c.input_dropout = input_dropout;
    c.dense_dropout = dense_dropout;
  }
};

// ---------------------------------------------------------------------------
// Model bundles
// ---------------------------------------------------------------------------

struct CwBundle {
  std::string annotator = "naive";
  CwFeatureSet features = CwFeatureSet::all;
  CharVocabulary chars;
  PriorTable priors;
  std::uint64_t corpus_fingerprint = 0;
  std::uint64_t train_seed = 0;
  nn::SequenceModel<float> model;

  void save(const std::filesystem::path& path) const {
    BinaryWriter w;
    w.header("cw-model");
    w.u32(kBuckwalterTableVersion);
    w.str(annotator);
    w.u8(static_cast<std::uint8_t>(features));
    chars.write(w);
    priors.write(w);
    w.u64(corpus_fingerprint);
    w.u64(train_seed);
    model.write(w);
    write_file_atomic(path, w.data());
  }

  static CwBundle load(const std::filesystem::path& path) {
    auto r = BinaryReader::from_file(path);
    r.expect_kind("cw-model");
    if (r.u32() != kBuckwalterTableVersion) throw ModelVersionMismatch("CW model was built with another symbol table");
    CwBundle b;
    b.annotator = r.str();
    b.features = static_cast<CwFeatureSet>(r.u8());
    b.chars = CharVocabulary::read(r);
    b.priors = PriorTable::read(r);
    b.corpus_fingerprint = r.u64();
    b.train_seed = r.u64();
    b.model = nn::SequenceModel<float>::read(r);
    if (b.model.config().kind != nn::ModelKind::cw) throw FormatError(path.string() + " is not a CW model");
    return b;
  }
};

struct CeBundle {
  std::string annotator = "naive";
  FeatureSet selector = FeatureSet::all_misc;
  CeVocabulary vocab;
  CeWordLists lists;
  std::uint64_t corpus_fingerprint = 0;
  std::uint64_t train_seed = 0;
  nn::SequenceModel<float> model;

  void save(const std::filesystem::path& path) const {
    BinaryWriter w;
    w.header("ce-model");
    w.u32(kBuckwalterTableVersion);
    w.str(annotator);
    w.u8(static_cast<std::uint8_t>(selector));
    vocab.write(w);
    w.strings({lists.sukun_words.begin(), lists.sukun_words.end()});
    w.strings({lists.named_entities.begin(), lists.named_entities.end()});
    w.u64(corpus_fingerprint);
    w.u64(train_seed);
    model.write(w);
    write_file_atomic(path, w.data());
  }

  static CeBundle load(const std::filesystem::path& path) {
    auto r = BinaryReader::from_file(path);
    r.expect_kind("ce-model");
    if (r.u32() != kBuckwalterTableVersion) throw ModelVersionMismatch("CE model was built with another symbol table");
    CeBundle b;
    b.annotator = r.str();
    b.selector = static_cast<FeatureSet>(r.u8());
    b.vocab = CeVocabulary::read(r);
    for (auto& s : r.strings()) b.lists.sukun_words.insert(std::move(s));
    for (auto& s : r.strings()) b.lists.named_entities.insert(std::move(s));
    b.corpus_fingerprint = r.u64();
    b.train_seed = r.u64();
    b.model = nn::SequenceModel<float>::read(r);
    if (b.model.config().kind != nn::ModelKind::ce) throw FormatError(path.string() + " is not a CE model");
    return b;
  }
};

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

inline std::vector<nn::Sample> cw_samples(std::span<const SentenceRecord> sentences, const Annotator& annotator,
                                          const CharVocabulary& chars, const PriorTable& priors,
                                          CwFeatureSet features) {
  const CwEncoder encoder(chars, priors);
  std::vector<nn::Sample> out;
  for (const auto& s : sentences) {
    for (const auto& ex : encoder.encode(s, annotator)) out.push_back(ex.sample(features));
  }
  return out;
}

inline std::vector<nn::Sample> ce_samples(std::span<const SentenceRecord> sentences, const Annotator& annotator,
                                          const CeVocabulary& vocab, const CeWordLists& lists, FeatureSet selector) {
  std::vector<nn::Sample> out;
  for (const auto& s : sentences) {
    const auto annotations = annotator.annotate(s);
    out.push_back(ce_sample(encode_ce(s, annotations, lists), vocab, selector));
  }
  return out;
}

template <class Bundle>
struct TrainResult {
  Bundle bundle;
  nn::TrainHistory history;
};

// Vocabulary and priors come from `train` only.
inline TrainResult<CwBundle> train_cw(std::span<const SentenceRecord> train, std::span<const SentenceRecord> val,
                                      const Annotator& annotator, CwFeatureSet features,
                                      const nn::TrainConfig& cfg, const ModelShape& shape = ModelShape::cw_default(),
                                      const nn::TrainHooks& hooks = {}) {
  if (train.empty()) throw EmptyDataset("training");
  TrainResult<CwBundle> r;
  CwBundle& b = r.bundle;
  b.annotator = std::string(annotator.id());
  b.features = features;
  b.chars = CharVocabulary::build(train);
  b.priors = build_prior_table(train, annotator);
  b.corpus_fingerprint = corpus_fingerprint(train);
  b.train_seed = cfg.seed;
  auto config = nn::ModelConfig::cw(cw_vocab_sizes(b.chars), CwLabel::kCount);
  shape.apply(config);
  b.model = nn::SequenceModel<float>(config);
  b.model.initialize(cfg.seed);
  const auto train_samples = cw_samples(train, annotator, b.chars, b.priors, features);
  const auto val_samples = cw_samples(val, annotator, b.chars, b.priors, features);
  r.history = nn::train(b.model, train_samples, val_samples, cfg, hooks);
  return r;
}

inline TrainResult<CeBundle> train_ce(std::span<const SentenceRecord> train, std::span<const SentenceRecord> val,
                                      const Annotator& annotator, FeatureSet selector, const WordSet& named_entities,
                                      const nn::TrainConfig& cfg, const ModelShape& shape = ModelShape::ce_default(),
                                      const nn::TrainHooks& hooks = {}, std::size_t sukun_threshold = 3) {
  if (train.empty()) throw EmptyDataset("training");
  TrainResult<CeBundle> r;
  CeBundle& b = r.bundle;
  b.annotator = std::string(annotator.id());
  b.selector = selector;
  b.lists.sukun_words = build_sukun_list(train, annotator, sukun_threshold);
  b.lists.named_entities = named_entities;
  std::vector<CeValues> rows;
  for (const auto& s : train) {
    const auto annotations = annotator.annotate(s);
    for (std::size_t t = 0; t < s.tokens.size(); ++t) rows.push_back(ce_values(s.tokens[t], annotations[t], b.lists));
  }
  b.vocab = CeVocabulary::build(rows);
  b.corpus_fingerprint = corpus_fingerprint(train);
  b.train_seed = cfg.seed;
  auto config = nn::ModelConfig::ce(b.vocab.sizes());
  shape.apply(config);
  b.model = nn::SequenceModel<float>(config);
  b.model.initialize(cfg.seed);
  const auto train_samples = ce_samples(train, annotator, b.vocab, b.lists, selector);
  const auto val_samples = ce_samples(val, annotator, b.vocab, b.lists, selector);
  r.history = nn::train(b.model, train_samples, val_samples, cfg, hooks);
  return r;
}

// ---------------------------------------------------------------------------
// Inference
// ---------------------------------------------------------------------------

// Composes the case-ending label with the shadda the core model put on the
// slot letter.
inline MarkCombo compose_slot(CeLabel ce, bool cw_shadda) {
  if (ce.is_virtual()) return cw_shadda ? MarkCombo::of(Vowel::none, true) : MarkCombo::virtual_mark();
  MarkCombo m = ce.combo();
  if (m.vowel != Vowel::sukun) m.shadda = m.shadda || cw_shadda;
  return m;
}

struct DiacritizerOptions {
  CorrectionPolicy post_correct{true};
  std::size_t batch_size = 64;
};

// encode -> CW predict -> post-correct -> CE features -> CE predict -> compose.
// Either model may be absent; a missing CE model leaves the slot with the
// core model's shadda only.
class Diacritizer {
 public:
  Diacritizer(const CwBundle* cw, const CeBundle* ce, AnnotatorHandle annotator, const Lexicon* lexicon,
              DiacritizerOptions options = {})
      : cw_(cw), ce_(ce), annotator_(std::move(annotator)), lexicon_(lexicon), options_(options) {}

  std::vector<SentenceRecord> diacritize(std::span<const SentenceRecord> input) const {
    std::vector<SentenceRecord> out;
    out.reserve(input.size());
    std::vector<std::vector<MorphoAnnotation>> annotations;
    for (const auto& s : input) {
      out.push_back(strip_sentence(s));
      annotations.push_back(annotator_->annotate(out.back()));
      for (std::size_t t = 0; t < out.back().tokens.size(); ++t) {
        Token& tok = out.back().tokens[t];
        if (tok.arabic) assign_ce_slot(tok.word, annotations.back()[t].segmentation);
      }
    }
    if (cw_ != nullptr) apply_cw(out, annotations);
    if (lexicon_ != nullptr && options_.post_correct.enabled) {
      for (auto& s : out) {
        for (auto& t : s.tokens) {
          if (t.arabic) t.word = post_correct(t.word, *lexicon_);
        }
      }
    }
    if (ce_ != nullptr) apply_ce(out, annotations);
    return out;
  }

  SentenceRecord diacritize(const SentenceRecord& s) const {
    return diacritize(std::span<const SentenceRecord>(&s, 1)).front();
  }

 private:
  void apply_cw(std::vector<SentenceRecord>& sentences,
                const std::vector<std::vector<MorphoAnnotation>>& annotations) const {
    const CwEncoder encoder(cw_->chars, cw_->priors);
    struct Pending {
      std::size_t sentence;
      CwExample example;
    };
    std::vector<Pending> pending;
    auto flush = [&] {
      std::vector<nn::Sample> samples;
      for (const auto& p : pending) samples.push_back(p.example.sample(cw_->features));
      const auto predictions = cw_->model.predict(samples);
      for (std::size_t k = 0; k < pending.size(); ++k) {
        SentenceRecord& s = sentences[pending[k].sentence];
        for (const auto& span : pending[k].example.spans) {
          if (!span.arabic) continue;
          DiacritizedWord& w = s.tokens[span.token].word;
          for (std::size_t i = 0; i < span.length; ++i) {
            const CwLabel label(static_cast<std::uint8_t>(predictions[k][span.begin + i]));
            const MarkCombo m = label.combo();
            w.marks[i] = w.ce_index == i ? MarkCombo::of(Vowel::none, m.shadda && m.vowel != Vowel::sukun) : m;
          }
        }
      }
      pending.clear();
    };
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      for (auto& ex : encoder.encode(sentences[s], annotations[s])) {
        pending.push_back({s, std::move(ex)});
        if (pending.size() >= options_.batch_size) flush();
      }
    }
    flush();
  }

  void apply_ce(std::vector<SentenceRecord>& sentences,
                const std::vector<std::vector<MorphoAnnotation>>& annotations) const {
    for (std::size_t start = 0; start < sentences.size(); start += options_.batch_size) {
      const std::size_t end = std::min(sentences.size(), start + options_.batch_size);
      std::vector<nn::Sample> samples;
      for (std::size_t s = start; s < end; ++s) {
        samples.push_back(ce_sample(encode_ce(sentences[s], annotations[s], ce_->lists), ce_->vocab, ce_->selector));
      }
      const auto predictions = ce_->model.predict(samples);
      for (std::size_t s = start; s < end; ++s) {
        for (std::size_t t = 0; t < sentences[s].tokens.size(); ++t) {
          Token& tok = sentences[s].tokens[t];
          if (!tok.arabic || !tok.word.ce_index) continue;
          const std::size_t slot = *tok.word.ce_index;
          const CeLabel label(static_cast<std::uint8_t>(predictions[s - start][t]));
          tok.word.marks[slot] = compose_slot(label, tok.word.marks[slot].shadda);
        }
      }
    }
  }

  const CwBundle* cw_;
  const CeBundle* ce_;
  AnnotatorHandle annotator_;
  const Lexicon* lexicon_;
  DiacritizerOptions options_;
};

}  // namespace harakat

#endif  // HARAKAT_PIPELINE_HPP
