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

// harakat: train, apply and evaluate the diacritization models.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "harakat/harakat.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

using namespace harakat;

struct CommonOptions {
  std::string format = "auto";
  std::string annotator;
  std::string templates;
};

struct TrainOptions {
  std::string mode;
  std::string corpus;
  std::string out = "models";
  std::uint64_t seed = 1;
  std::string feature_set = "all-misc";
  std::string cw_features = "ALL";
  double validation_fraction = 0.05;
  double learning_rate = 0.001;
  std::size_t batch_size = 256;
  std::size_t patience = 5;
  std::size_t max_epochs = 100;
  std::size_t embed_dim = 0;  // 0: mode default
  std::size_t lstm_units = 100;
  std::size_t dense_units = 100;
  std::string gazetteer;
  std::size_t sukun_threshold = 3;
};

struct DiacritizeOptions {
  std::string models = "models";
  std::string input = "-";
  std::string output = "-";
  std::string post_correct = "on";
  std::string output_encoding = "input";
};

struct EvaluateOptions {
  std::string reference;
  std::string hypothesis;
  std::string models;
  std::string mode = "full";
  std::string out;
  std::string post_correct = "on";
  bool ablation_sweep = false;
  double min_share = 1.0;
};

std::string resource_dir() {
  if (const char* env = std::getenv("HARAKAT_RESOURCES"); env != nullptr && *env != '\0') return env;
  return HARAKAT_DEFAULT_RESOURCE_DIR;
}

CorpusFormat resolve_format(const std::string& format, const std::string& path) {
  if (format == "plain") return CorpusFormat::plain;
  if (format == "tsv") return CorpusFormat::tsv;
  return fs::path(path).extension() == ".tsv" ? CorpusFormat::tsv : CorpusFormat::plain;
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  return read_file(path);
}

TemplateInventory load_templates(const CommonOptions& common) {
  fs::path path = common.templates;
  if (path.empty()) path = fs::path(resource_dir()) / "templates.tsv";
  if (fs::exists(path)) return TemplateInventory::load_tsv(path);
  if (!common.templates.empty()) throw IoError("cannot open template inventory " + path.string());
  return TemplateInventory::builtin();
}

AnnotatorHandle annotator_for(const CommonOptions& common, const std::string& fallback) {
  return make_annotator(common.annotator.empty() ? fallback : common.annotator, load_templates(common));
}

json fingerprint(const std::string& path) {
  return json{{"path", path}, {"fnv1a64", hex64(path == "-" ? 0 : file_fingerprint(path))}};
}

void write_manifest(const fs::path& path, json manifest) {
  manifest["toolkit_version"] = std::string(kVersion);
  write_file_atomic(path, manifest.dump(2) + "\n");
}

void print_epoch(const nn::EpochRecord& e) {
  std::cerr << "epoch " << e.epoch << "  train_loss " << e.train_loss << "  val_loss " << e.val_loss
            << (e.improved ? "  *" : "") << '\n';
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

json train_config_json(const TrainOptions& o, const nn::ModelConfig& m, const std::string& annotator) {
  json c;
  c["mode"] = o.mode;
  c["annotator"] = annotator;
  if (o.mode == "cw") {
    c["cw_features"] = o.cw_features;
  } else {
    c["feature_set"] = o.feature_set;
    c["sukun_threshold"] = o.sukun_threshold;
  }
  c["validation_fraction"] = o.validation_fraction;
  c["learning_rate"] = o.learning_rate;
  c["batch_size"] = o.batch_size;
  c["patience"] = o.patience;
  c["max_epochs"] = o.max_epochs;
  c["optimizer"] = "adamax";
  c["embed_dim"] = m.embed_dim;
  c["lstm_units"] = m.lstm_units;
  c["dense_units"] = m.dense_units;
  c["input_dropout"] = m.input_dropout;
  c["dense_dropout"] = m.dense_dropout;
  c["label_count"] = m.label_count;
  c["vocab_sizes"] = m.vocab_sizes;
  return c;
}

int cmd_train(const TrainOptions& o, const CommonOptions& common) {
  const bool cw_mode = o.mode == "cw";
  const CwFeatureSet cw_features = parse_cw_feature_set(o.cw_features);
  const FeatureSet selector = parse_feature_set(o.feature_set);
  const auto annotator = annotator_for(common, "naive");
  const Corpus corpus = load_corpus(o.corpus, resolve_format(common.format, o.corpus));
  if (corpus.sentences.empty()) throw EmptyCorpus();
  const auto [train, val] = split_validation(corpus.sentences, o.validation_fraction, o.seed);

  nn::TrainConfig cfg;
  cfg.learning_rate = o.learning_rate;
  cfg.batch_size = o.batch_size;
  cfg.patience = o.patience;
  cfg.max_epochs = o.max_epochs;
  cfg.seed = o.seed;
  ModelShape shape = cw_mode ? ModelShape::cw_default() : ModelShape::ce_default();
  if (o.embed_dim != 0) shape.embed_dim = o.embed_dim;
  shape.lstm_units = o.lstm_units;
  shape.dense_units = o.dense_units;
  nn::TrainHooks hooks;
  hooks.on_epoch = [](const nn::EpochRecord& e, const nn::SequenceModel<float>&) { print_epoch(e); };

  WordSet gazetteer;
  fs::path gazetteer_path = o.gazetteer;
  if (gazetteer_path.empty()) gazetteer_path = fs::path(resource_dir()) / "ne_gazetteer.txt";
  if (fs::exists(gazetteer_path)) {
    gazetteer = load_ne_gazetteer(gazetteer_path);
  } else if (!o.gazetteer.empty()) {
    throw IoError("cannot open gazetteer " + gazetteer_path.string());
  }

  const fs::path out(o.out);
  fs::create_directories(out);
  const Lexicon lexicon = build_lexicon(train);
  const PriorTable priors = build_prior_table(train, *annotator);
  const WordSet sukun = build_sukun_list(train, *annotator, o.sukun_threshold);

  nn::TrainHistory history;
  nn::ModelConfig model_config;
  const std::string model_file = cw_mode ? "cw.model" : "ce.model";
  if (cw_mode) {
    auto r = train_cw(train, val, *annotator, cw_features, cfg, shape, hooks);
    r.bundle.save(out / model_file);
    history = std::move(r.history);
    model_config = r.bundle.model.config();
  } else {
    auto r = train_ce(train, val, *annotator, selector, gazetteer, cfg, shape, hooks, o.sukun_threshold);
    r.bundle.save(out / model_file);
    history = std::move(r.history);
    model_config = r.bundle.model.config();
  }
  lexicon.save(out / "lexicon.bin");
  priors.save(out / "priors.bin");
  std::string sukun_text;
  for (const auto& w : sukun) sukun_text += w + "\n";
  write_file_atomic(out / "sukun.txt", sukun_text);
  std::ostringstream log;
  history.write_log(log);
  write_file_atomic(out / (o.mode + ".history.log"), log.str());

  json manifest;
  manifest["command"] = "train";
  manifest["config"] = train_config_json(o, model_config, std::string(annotator->id()));
  manifest["seeds"] = json{{"run", o.seed}, {"split", o.seed}, {"init", o.seed}};
  manifest["inputs"] = json{{"corpus", fingerprint(o.corpus)}};
  if (fs::exists(gazetteer_path)) manifest["inputs"]["gazetteer"] = fingerprint(gazetteer_path.string());
  manifest["data"] = json{{"train_sentences", train.size()}, {"validation_sentences", val.size()}};
  manifest["training"] = json{{"epochs", history.stopped_epoch()},
                              {"best_epoch", history.best_epoch},
                              {"early_stopped", history.early_stopped}};
  manifest["outputs"] = json::array();
  for (const auto& f : {model_file, std::string("lexicon.bin"), std::string("priors.bin"), std::string("sukun.txt"),
                        o.mode + ".history.log"}) {
    manifest["outputs"].push_back(json{{"path", (out / f).string()}, {"fnv1a64", hex64(file_fingerprint(out / f))}});
  }
  write_manifest(out / (o.mode + ".manifest.json"), manifest);
  std::cerr << "trained " << o.mode << " model: best epoch " << history.best_epoch << " of "
            << history.stopped_epoch() << ", written to " << out.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// diacritize
// ---------------------------------------------------------------------------

struct LoadedModels {
  std::optional<CwBundle> cw;
  std::optional<CeBundle> ce;
  std::optional<Lexicon> lexicon;
};

LoadedModels load_models(const fs::path& dir, bool need_cw, bool need_ce) {
  LoadedModels m;
  const auto cw_path = dir / "cw.model";
  const auto ce_path = dir / "ce.model";
  if (fs::exists(cw_path)) m.cw = CwBundle::load(cw_path);
  if (fs::exists(ce_path)) m.ce = CeBundle::load(ce_path);
  if (fs::exists(dir / "lexicon.bin")) m.lexicon = Lexicon::load(dir / "lexicon.bin");
  if (need_cw && !m.cw) throw IoError("missing " + cw_path.string());
  if (need_ce && !m.ce) throw IoError("missing " + ce_path.string());
  return m;
}

std::string model_annotator(const LoadedModels& m) {
  if (m.cw) return m.cw->annotator;
  if (m.ce) return m.ce->annotator;
  return "naive";
}

TextEncoding output_encoding(const std::string& choice, TextEncoding input) {
  if (choice == "arabic") return TextEncoding::arabic;
  if (choice == "buckwalter") return TextEncoding::buckwalter;
  return input;
}

// Mirrors the input layout: plain keeps blank lines, TSV keeps the gold
// columns.
std::string render_output(const std::vector<SentenceRecord>& sentences, CorpusFormat format, TextEncoding enc,
                          std::size_t input_lines) {
  std::string out;
  if (format == CorpusFormat::plain) {
    std::size_t line = 1;
    for (const auto& s : sentences) {
      for (; line < s.line; ++line) out += "\n";
      out += render_sentence(s, enc) + "\n";
      ++line;
    }
    for (; line <= input_lines; ++line) out += "\n";
    return out;
  }
  auto col = [](const std::optional<std::string>& v) { return v.value_or("_"); };
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out += "\n";
    for (const auto& t : sentences[i].tokens) {
      out += t.surface + "\t" + render_token(t, enc) + "\t" + col(t.gold.segmentation) + "\t" + col(t.gold.pos) +
             "\t" + col(t.gold.gender_number) + "\n";
    }
  }
  return out;
}

std::size_t count_lines(const std::string& text) {
  if (text.empty()) return 0;
  std::size_t n = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

int cmd_diacritize(const DiacritizeOptions& o, const CommonOptions& common) {
  const LoadedModels models = load_models(o.models, true, true);
  const auto annotator = annotator_for(common, model_annotator(models));
  const std::string text = read_input(o.input);
  const CorpusFormat format = resolve_format(common.format, o.input);
  const Corpus corpus = parse_corpus(text, format, std::nullopt, o.input);
  DiacritizerOptions options;
  options.post_correct.enabled = o.post_correct == "on";
  const Diacritizer diacritizer(&*models.cw, &*models.ce, annotator,
                                models.lexicon ? &*models.lexicon : nullptr, options);
  const auto result = diacritizer.diacritize(corpus.sentences);
  const std::string rendered =
      render_output(result, format, output_encoding(o.output_encoding, corpus.encoding), count_lines(text));
  if (o.output == "-") {
    std::cout << rendered;
    return 0;
  }
  write_file_atomic(o.output, rendered);
  json manifest;
  manifest["command"] = "diacritize";
  manifest["config"] = json{{"annotator", std::string(annotator->id())},
                            {"post_correct", o.post_correct},
                            {"format", format == CorpusFormat::tsv ? "tsv" : "plain"},
                            {"output_encoding", o.output_encoding}};
  manifest["inputs"] = json{{"text", fingerprint(o.input)},
                            {"cw_model", fingerprint((fs::path(o.models) / "cw.model").string())},
                            {"ce_model", fingerprint((fs::path(o.models) / "ce.model").string())}};
  manifest["outputs"] = json::array({fingerprint(o.output)});
  write_manifest(o.output + ".manifest.json", manifest);
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate / report
// ---------------------------------------------------------------------------

void emit(const fs::path& dir, const std::string& name, const std::string& content, json& outputs) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  write_file_atomic(dir / name, content);
  outputs.push_back(fingerprint((dir / name).string()));
}

std::vector<SentenceRecord> hypothesis_for(const EvaluateOptions& o, const CommonOptions& common,
                                           const Corpus& reference, std::string& annotator_id) {
  if (!o.hypothesis.empty()) {
    annotator_id = common.annotator.empty() ? "naive" : common.annotator;
    return load_corpus(o.hypothesis, resolve_format(common.format, o.hypothesis)).sentences;
  }
  if (o.models.empty()) throw Error("evaluate needs --hypothesis or --models");
  const ScoreMode mode = parse_score_mode(o.mode);
  const LoadedModels models = load_models(o.models, mode != ScoreMode::ce, mode != ScoreMode::cw);
  annotator_id = common.annotator.empty() ? model_annotator(models) : common.annotator;
  const auto annotator = annotator_for(common, annotator_id);
  DiacritizerOptions options;
  options.post_correct.enabled = o.post_correct == "on";
  const Diacritizer d(models.cw ? &*models.cw : nullptr, models.ce ? &*models.ce : nullptr, annotator,
                      models.lexicon ? &*models.lexicon : nullptr, options);
  return d.diacritize(reference.sentences);
}

int run_ablation_sweep(const EvaluateOptions& o, const CommonOptions& common, const TrainOptions& t,
                       const Corpus& reference) {
  if (t.corpus.empty()) throw Error("--ablation-sweep needs --corpus (the training corpus)");
  const auto annotator = annotator_for(common, "naive");
  const Corpus corpus = load_corpus(t.corpus, resolve_format(common.format, t.corpus));
  if (corpus.sentences.empty()) throw EmptyCorpus();
  const auto [train, val] = split_validation(corpus.sentences, t.validation_fraction, t.seed);
  WordSet gazetteer;
  const fs::path gz = t.gazetteer.empty() ? fs::path(resource_dir()) / "ne_gazetteer.txt" : fs::path(t.gazetteer);
  if (fs::exists(gz)) gazetteer = load_ne_gazetteer(gz);
  nn::TrainConfig cfg;
  cfg.learning_rate = t.learning_rate;
  cfg.batch_size = t.batch_size;
  cfg.patience = t.patience;
  cfg.max_epochs = t.max_epochs;
  cfg.seed = t.seed;
  ModelShape shape = ModelShape::ce_default();
  if (t.embed_dim != 0) shape.embed_dim = t.embed_dim;
  shape.lstm_units = t.lstm_units;
  shape.dense_units = t.dense_units;

  std::ostringstream text, tsv;
  text << "Setup\tCEER\n";
  tsv << "setup\ttokens\terrors\tceer\n";
  json rows = json::array();
  for (FeatureSet set : kAllFeatureSets) {
    const auto r = train_ce(train, val, *annotator, set, gazetteer, cfg, shape, {}, t.sukun_threshold);
    const Diacritizer d(nullptr, &r.bundle, annotator, nullptr, {});
    const auto hyp = d.diacritize(reference.sentences);
    const ScoreReport s = score(reference.sentences, hyp, ScoreMode::ce, *annotator);
    std::string name(feature_set_name(set));
    if (set == FeatureSet::word) name += " (baseline)";
    text << name << '\t' << format_rate(100.0 * s.ceer(), 1) << '\n';
    tsv << feature_set_name(set) << '\t' << s.token_count << '\t' << s.error_count << '\t' << format_rate(s.ceer(), 6)
        << '\n';
    rows.push_back(json{{"feature_set", std::string(feature_set_name(set))}, {"ceer", s.ceer()}});
    std::cerr << name << ": CEER " << format_rate(s.ceer()) << '\n';
  }
  std::cout << text.str();
  json outputs = json::array();
  emit(o.out, "ablation.txt", text.str(), outputs);
  emit(o.out, "ablation.tsv", tsv.str(), outputs);
  if (!o.out.empty()) {
    json manifest;
    manifest["command"] = "evaluate --ablation-sweep";
    manifest["config"] = json{{"annotator", std::string(annotator->id())},
                              {"learning_rate", t.learning_rate},
                              {"batch_size", t.batch_size},
                              {"patience", t.patience},
                              {"max_epochs", t.max_epochs}};
    manifest["seeds"] = json{{"run", t.seed}};
    manifest["inputs"] = json{{"corpus", fingerprint(t.corpus)}, {"reference", fingerprint(o.reference)}};
    manifest["results"] = rows;
    manifest["outputs"] = outputs;
    write_manifest(fs::path(o.out) / "evaluate.manifest.json", manifest);
  }
  return 0;
}

int cmd_evaluate(const EvaluateOptions& o, const CommonOptions& common, const TrainOptions& t) {
  const Corpus reference = load_corpus(o.reference, resolve_format(common.format, o.reference));
  if (o.ablation_sweep) return run_ablation_sweep(o, common, t, reference);
  const ScoreMode mode = parse_score_mode(o.mode);
  std::string annotator_id;
  const auto hyp = hypothesis_for(o, common, reference, annotator_id);
  const auto annotator = annotator_for(common, annotator_id);
  const ScoreReport report = score(reference.sentences, hyp, mode, *annotator);
  std::ostringstream text, tsv;
  write_score_text(text, report);
  write_score_tsv(tsv, report);
  std::cout << text.str();
  json outputs = json::array();
  emit(o.out, "score.txt", text.str(), outputs);
  emit(o.out, "score.tsv", tsv.str(), outputs);
  if (mode == ScoreMode::ce || mode == ScoreMode::full) {
    const ConfusionReport c = confusion(reference.sentences, hyp, *annotator);
    std::ostringstream ctext, ctsv;
    write_confusion_text(ctext, c);
    write_confusion_tsv(ctsv, c);
    if (mode == ScoreMode::ce) std::cout << '\n' << ctext.str();
    emit(o.out, "confusion.txt", ctext.str(), outputs);
    emit(o.out, "confusion.tsv", ctsv.str(), outputs);
  }
  if (!o.out.empty()) {
    json manifest;
    manifest["command"] = "evaluate";
    manifest["config"] = json{{"mode", o.mode}, {"annotator", annotator_id}, {"post_correct", o.post_correct}};
    manifest["inputs"] = json{{"reference", fingerprint(o.reference)}};
    if (!o.hypothesis.empty()) manifest["inputs"]["hypothesis"] = fingerprint(o.hypothesis);
    if (!o.models.empty()) manifest["inputs"]["models"] = o.models;
    manifest["outputs"] = outputs;
    write_manifest(fs::path(o.out) / "evaluate.manifest.json", manifest);
  }
  return 0;
}

// Case-ending error analysis: error pairs above a share threshold and the
// per-label distribution.
int cmd_report(const EvaluateOptions& o, const CommonOptions& common) {
  const Corpus reference = load_corpus(o.reference, resolve_format(common.format, o.reference));
  EvaluateOptions eo = o;
  eo.mode = "ce";
  std::string annotator_id;
  const auto hyp = hypothesis_for(eo, common, reference, annotator_id);
  const auto annotator = annotator_for(common, annotator_id);
  const ConfusionReport c = confusion(reference.sentences, hyp, *annotator);
  std::ostringstream text;
  text << "Error\tCount\t%\n";
  for (const auto& row : error_rows(c)) {
    if (row.share < o.min_share) continue;
    text << row.label << '\t' << row.count << '\t' << format_rate(row.share, 1) << '\n';
  }
  text << "\nLabel\tFrequency\tAccuracy\n";
  for (std::size_t l = 0; l < CeLabel::kCount; ++l) {
    const auto n = c.reference_count(l);
    if (n == 0) continue;
    text << CeLabel(static_cast<std::uint8_t>(l)).name() << '\t'
         << format_rate(100.0 * static_cast<double>(n) / static_cast<double>(c.total()), 1) << "%\t"
         << format_rate(100.0 * static_cast<double>(c.matrix[l][l]) / static_cast<double>(n), 1) << "%\n";
  }
  std::cout << text.str();
  json outputs = json::array();
  emit(o.out, "report.txt", text.str(), outputs);
  return 0;
}

// ---------------------------------------------------------------------------
// dump-features / dump-codec
// ---------------------------------------------------------------------------

int cmd_dump_features(const std::string& mode, const std::string& corpus_path, const std::string& models_dir,
                      const CommonOptions& common) {
  const Corpus corpus = load_corpus(corpus_path, resolve_format(common.format, corpus_path));
  std::optional<CwBundle> cw;
  std::optional<CeBundle> ce;
  if (!models_dir.empty() && mode == "cw" && fs::exists(fs::path(models_dir) / "cw.model")) {
    cw = CwBundle::load(fs::path(models_dir) / "cw.model");
  }
  if (!models_dir.empty() && mode == "ce" && fs::exists(fs::path(models_dir) / "ce.model")) {
    ce = CeBundle::load(fs::path(models_dir) / "ce.model");
  }
  const std::string fallback = cw ? cw->annotator : ce ? ce->annotator : "naive";
  const auto annotator = annotator_for(common, fallback);
  if (mode == "cw") {
    const CharVocabulary chars = cw ? cw->chars : CharVocabulary::build(corpus.sentences);
    const PriorTable priors = cw ? cw->priors : build_prior_table(corpus.sentences, *annotator);
    const CwEncoder encoder(chars, priors);
    for (const auto& s : corpus.sentences) {
      std::cout << "# " << s.source_id << '\n';
      for (const auto& ex : encoder.encode(s, *annotator)) dump_cw_example(std::cout, ex, chars);
    }
    return 0;
  }
  const CeWordLists lists = ce ? ce->lists : CeWordLists{build_sukun_list(corpus.sentences, *annotator), {}};
  for (const auto& s : corpus.sentences) {
    std::cout << "# " << s.source_id << '\n';
    dump_ce_example(std::cout, encode_ce(s, annotator->annotate(s), lists));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic diacritization: core-word and case-ending sequence models"};
  app.set_config("--config", "", "Key-value config file ([section] per subcommand); flags win");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions common;
  TrainOptions train;
  DiacritizeOptions diac;
  EvaluateOptions eval;
  std::string dump_mode = "cw";
  std::string dump_corpus;
  std::string dump_models;

  const std::vector<std::string> feature_sets(kFeatureSetNames.begin(), kFeatureSetNames.end());
  const std::vector<std::string> cw_sets(kCwFeatureSetNames.begin(), kCwFeatureSetNames.end());
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Corpus format")->check(CLI::IsMember({"auto", "plain", "tsv"}));
    sub->add_option("--annotator", common.annotator, "Morphological annotator")
        ->check(CLI::IsMember({"gold", "naive"}));
    sub->add_option("--templates", common.templates, "Stem template inventory (TSV)");
  };
  auto add_training = [&](CLI::App* sub) {
    sub->add_option("--seed", train.seed, "Run seed");
    sub->add_option("--feature-set", train.feature_set, "CE feature set")->check(CLI::IsMember(feature_sets));
    sub->add_option("--cw-features", train.cw_features, "CW feature set")->check(CLI::IsMember(cw_sets));
    sub->add_option("--validation-fraction", train.validation_fraction, "Held-out share for early stopping")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--learning-rate", train.learning_rate, "Adamax learning rate");
    sub->add_option("--batch-size", train.batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
    sub->add_option("--patience", train.patience, "Early-stopping patience (epochs)")->check(CLI::PositiveNumber);
    sub->add_option("--max-epochs", train.max_epochs, "Epoch cap")->check(CLI::PositiveNumber);
    sub->add_option("--embed-dim", train.embed_dim, "Embedding size (0: 50 for cw, 100 for ce)");
    sub->add_option("--lstm-units", train.lstm_units, "LSTM units per direction")->check(CLI::PositiveNumber);
    sub->add_option("--dense-units", train.dense_units, "Dense layer size")->check(CLI::PositiveNumber);
    sub->add_option("--gazetteer", train.gazetteer, "Named-entity gazetteer");
    sub->add_option("--sukun-threshold", train.sukun_threshold, "Minimum count for the sukun word list");
  };

  CLI::App* train_cmd = app.add_subcommand("train", "Train a CW or CE model");
  train_cmd->add_option("--mode", train.mode, "Model to train")->required()->check(CLI::IsMember({"cw", "ce"}));
  train_cmd->add_option("--corpus", train.corpus, "Diacritized training corpus")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "Output directory");
  add_training(train_cmd);
  add_common(train_cmd);

  CLI::App* diac_cmd = app.add_subcommand("diacritize", "Add diacritics to text");
  diac_cmd->add_option("--models", diac.models, "Directory with cw.model, ce.model, lexicon.bin")
      ->check(CLI::ExistingDirectory);
  diac_cmd->add_option("--input", diac.input, "Input text ('-' for stdin)");
  diac_cmd->add_option("--output", diac.output, "Output file ('-' for stdout)");
  diac_cmd->add_option("--post-correct", diac.post_correct, "Lexicon post-correction")
      ->check(CLI::IsMember({"on", "off"}));
  diac_cmd->add_option("--output-encoding", diac.output_encoding, "Output script")
      ->check(CLI::IsMember({"input", "arabic", "buckwalter"}));
  add_common(diac_cmd);

  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score a hypothesis or a model against a reference");
  eval_cmd->add_option("--reference", eval.reference, "Diacritized reference")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--hypothesis", eval.hypothesis, "Diacritized hypothesis")->check(CLI::ExistingFile);
  eval_cmd->add_option("--models", eval.models, "Model directory (diacritizes the reference)")
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--mode", eval.mode, "Scoring mode")->check(CLI::IsMember({"cw", "ce", "full"}));
  eval_cmd->add_option("--out", eval.out, "Directory for text and TSV reports");
  eval_cmd->add_option("--post-correct", eval.post_correct, "Lexicon post-correction in model mode")
      ->check(CLI::IsMember({"on", "off"}));
  eval_cmd->add_flag("--ablation-sweep", eval.ablation_sweep, "Train and score one CE model per feature set");
  eval_cmd->add_option("--corpus", train.corpus, "Training corpus for --ablation-sweep")->check(CLI::ExistingFile);
  add_training(eval_cmd);
  add_common(eval_cmd);

  CLI::App* report_cmd = app.add_subcommand("report", "Case-ending error analysis tables");
  report_cmd->add_option("--reference", eval.reference, "Diacritized reference")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--hypothesis", eval.hypothesis, "Diacritized hypothesis")->check(CLI::ExistingFile);
  report_cmd->add_option("--models", eval.models, "Model directory")->check(CLI::ExistingDirectory);
  report_cmd->add_option("--min-share", eval.min_share, "Hide error pairs below this percentage");
  report_cmd->add_option("--out", eval.out, "Directory for the report file");
  add_common(report_cmd);

  CLI::App* dump_cmd = app.add_subcommand("dump-features", "Print encoded feature rows as TSV");
  dump_cmd->add_option("--mode", dump_mode, "Feature family")->check(CLI::IsMember({"cw", "ce"}));
  dump_cmd->add_option("--corpus", dump_corpus, "Corpus to encode")->required()->check(CLI::ExistingFile);
  dump_cmd->add_option("--models", dump_models, "Use the vocabularies of this model directory");
  add_common(dump_cmd);

  CLI::App* codec_cmd = app.add_subcommand("dump-codec", "Print the Buckwalter table as TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*train_cmd) return cmd_train(train, common);
    if (*diac_cmd) return cmd_diacritize(diac, common);
    if (*eval_cmd) return cmd_evaluate(eval, common, train);
    if (*report_cmd) return cmd_report(eval, common);
    if (*dump_cmd) return cmd_dump_features(dump_mode, dump_corpus, dump_models, common);
    if (*codec_cmd) {
      dump_buckwalter_table(std::cout);
      return 0;
    }
  } catch (const harakat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
