// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "senspick/config_file.hpp"
#include "senspick/converter.hpp"
#include "senspick/corpus.hpp"
#include "senspick/embeddings.hpp"
#include "senspick/evaluation.hpp"
#include "senspick/model.hpp"
#include "senspick/sense_inventory.hpp"
#include "senspick/training.hpp"

namespace senspick::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptionSpec {
  std::string key;  // config-file key; the flag is --key with '_' -> '-'
  std::string help;
};

std::string flag_of(const std::string& key) {
  std::string flag = "--" + key;
  for (char& ch : flag) {
    if (ch == '_') ch = '-';
  }
  return flag;
}

const std::vector<OptionSpec> kSharedOptions = {
    {"seed", "random seed (falls back to $SENSPICK_SEED)"},
    {"wordnet", "lexical database directory"},
    {"embeddings", "pre-trained embedding text file"},
    {"embedding_dim", "embedding dimension"},
};

const std::map<std::string, std::vector<OptionSpec>> kCommandOptions = {
    {"convert",
     {{"xml", "unified-framework XML file"},
      {"keys", "gold key file (id key [key ...])"},
      {"out", "output corpus (JSON lines)"}}},
    {"train",
     {{"corpus", "training corpus (JSON lines)"},
      {"out", "checkpoint path for the final model"},
      {"best_out", "checkpoint path for the best-dev model (default <out>.best)"},
      {"log", "epoch log CSV (default <out>.log.csv)"},
      {"epochs", "training epochs"},
      {"learning_rate", "Adam learning rate"},
      {"dropout", "dropout between stacked layers"},
      {"batch_size", "instances per batch"},
      {"k_depth", "gloss expansion depth"},
      {"attention_passes", "memory attention passes"},
      {"grad_clip", "global gradient norm clip"},
      {"dev_split", "fraction of the corpus held out for model selection"},
      {"hyponym_cap", "maximum hyponym glosses per sense"},
      {"hidden_units", "LSTM units per direction"},
      {"num_layers", "stacked LSTM layers"}}},
    {"evaluate",
     {{"ckpt", "model checkpoint"},
      {"eval", "evaluation corpus (JSON lines)"},
      {"baseline", "score a baseline instead of the model: mfs | first-sense"},
      {"corpus", "training corpus for the mfs baseline when no checkpoint is given"},
      {"report", "report JSON path (default: standard output)"},
      {"predictions", "predictions TSV path (default <report>.predictions.tsv)"},
      {"dump_attention", "write per-pass attention weights as JSON lines"},
      {"k_depth", "override the trained gloss expansion depth"}}},
    {"disambiguate",
     {{"ckpt", "model checkpoint"},
      {"sentence", "whitespace-tokenized sentence"},
      {"target_index", "0-based index of the target token"},
      {"lemma", "target lemma"},
      {"pos", "target part of speech: n | v | a | r"},
      {"dump_attention", "write per-pass attention weights as JSON lines"},
      {"k_depth", "override the trained gloss expansion depth"}}},
    {"baseline",
     {{"kind", "mfs | first-sense"},
      {"corpus", "training corpus (required for mfs)"},
      {"eval", "evaluation corpus (JSON lines)"},
      {"report", "report JSON path (default: standard output)"},
      {"predictions", "predictions TSV path (default <report>.predictions.tsv)"}}},
};

class Settings {
 public:
  explicit Settings(KeyValueConfig values) : values_(std::move(values)) {}

  std::optional<std::string> get(const std::string& key) const { return values_.get(key); }
  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v || v->empty()) throw UsageError("missing required option " + flag_of(key) + " (or '" + key + "' in --config)");
    return *v;
  }
  template <typename T>
  T number(const std::string& key, T fallback) {
    auto v = get(key);
    if (!v) {
      values_.set(key, to_text(fallback));
      return fallback;
    }
    return parse<T>(key, *v);
  }
  template <typename T>
  std::optional<T> optional_number(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse<T>(key, *v);
  }
  void set_default(const std::string& key, const std::string& value) {
    if (!get(key)) values_.set(key, value);
  }
  const KeyValueConfig& values() const { return values_; }

 private:
  template <typename T>
  static std::string to_text(T value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
  }
  template <typename T>
  static T parse(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    if (!(in >> value) || !(in >> std::ws).eof()) throw UsageError("invalid value '" + text + "' for " + flag_of(key));
    return value;
  }

  KeyValueConfig values_;
};

void echo_config(std::ostream& err, const std::string& command, const Settings& settings) {
  err << "# senspick " << command << " effective config\n" << settings.values().dump() << "# end config\n";
}

std::string absolute(const std::string& path) { return fs::absolute(path).lexically_normal().string(); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot write " + path.string());
  out << text;
}

CorpusLoad read_corpus(const std::string& path, const SenseInventory& inventory, std::ostream& err) {
  auto load = load_corpus(path, inventory);
  err << "loaded " << load.instances.size() << " instances from " << path;
  if (!load.report.skipped.empty()) err << " (" << load.report.skipped.size() << " skipped)";
  if (load.report.truncated) err << " (" << load.report.truncated << " truncated)";
  err << '\n';
  for (const auto& skip : load.report.skipped) err << "  skipped line " << skip.line << ": " << skip.reason << '\n';
  return load;
}

std::unordered_set<std::string> vocabulary(std::span<const Instance> instances, const SenseInventory& inventory,
                                           int depth, int cap) {
  std::unordered_set<std::string> vocab;
  std::set<LemmaKey> lemmas;
  for (const auto& inst : instances) {
    vocab.insert(inst.tokens.begin(), inst.tokens.end());
    lemmas.insert(inst.key());
  }
  for (const auto& key : lemmas) {
    for (const auto& set : expand_candidates(inventory, inventory.senses_of(key.lemma, key.pos), depth, cap)) {
      for (const auto& entry : set.entries) vocab.insert(entry.gloss.begin(), entry.gloss.end());
    }
  }
  return vocab;
}

EmbeddingTable read_embeddings(const std::string& path, int dim, const std::unordered_set<std::string>& vocab,
                               std::ostream& err) {
  EmbeddingTable::LoadReport report;
  auto table = EmbeddingTable::load(path, dim, &vocab, &report);
  err << "loaded " << table.vocab_size() << " embeddings (dim " << dim << ") from " << path << "; "
      << report.malformed_lines.size() << " malformed lines, " << report.duplicates.size() << " duplicates\n";
  return table;
}

void write_report(const EvalReport& report, Settings& settings, std::ostream& out, std::ostream& err) {
  auto report_path = settings.get("report");
  if (report_path) {
    write_text(*report_path, report_json(report));
  } else {
    out << report_json(report);
  }
  auto predictions = settings.get("predictions");
  if (!predictions && report_path) predictions = *report_path + ".predictions.tsv";
  if (predictions) write_text(*predictions, predictions_tsv(report));
  err << report.system << ": F1 " << round1(report.overall.f1()) << " (" << report.overall.correct << "/"
      << report.overall.attempted << ", backoff " << report.overall.backoff << ")\n";
}

nlohmann::json attention_record(const Instance& inst, const Disambiguation& result, std::size_t pass) {
  const auto& p = result.attention.passes[pass];
  return {{"instance_id", inst.instance_id},
          {"pass", pass + 1},
          {"phi", std::vector<double>(p.weights.data(), p.weights.data() + p.weights.size())},
          {"scores", std::vector<double>(p.scores.data(), p.scores.data() + p.scores.size())}};
}

struct ModelInputs {
  Checkpoint checkpoint;
  SenseInventory inventory;
};

ModelInputs load_model(Settings& settings, std::ostream& err) {
  ModelInputs in{load_checkpoint(settings.require("ckpt")), {}};
  for (const char* key : {"wordnet", "embeddings", "embedding_dim"}) {
    auto it = in.checkpoint.provenance.find(key);
    if (it != in.checkpoint.provenance.end()) settings.set_default(key, it->second);
  }
  if (auto k = settings.optional_number<int>("k_depth")) {
    if (auto warning = override_k_depth(in.checkpoint, *k)) err << *warning << '\n';
  } else {
    settings.set_default("k_depth", std::to_string(in.checkpoint.model.config.k_depth));
  }
  in.inventory = SenseInventory::load(settings.require("wordnet"));
  return in;
}

int cmd_convert(Settings& settings, std::ostream& err) {
  auto xml = settings.require("xml");
  auto keys = settings.require("keys");
  auto out_path = settings.require("out");
  echo_config(err, "convert", settings);
  auto conversion = convert_unified_xml(xml, keys);
  write_corpus(out_path, conversion.instances);
  err << "converted " << conversion.report.instances << " instances from " << conversion.report.sentences
      << " sentences; " << conversion.report.missing_keys << " without gold keys, "
      << conversion.report.lemma_mismatches << " lemma mismatches\n";
  if (auto wordnet = settings.get("wordnet")) {
    auto inventory = SenseInventory::load(*wordnet);
    read_corpus(out_path, inventory, err);
  }
  return kExitOk;
}

int cmd_train(Settings& settings, std::ostream& err) {
  const auto wordnet = settings.require("wordnet");
  const auto corpus_path = settings.require("corpus");
  const auto embeddings = settings.require("embeddings");
  const auto out_path = settings.require("out");

  TrainConfig config;
  config.seed = settings.number<std::uint64_t>("seed", config.seed);
  config.learning_rate = settings.number("learning_rate", config.learning_rate);
  config.epochs = settings.number("epochs", config.epochs);
  config.dropout = settings.number("dropout", config.dropout);
  config.batch_size = settings.number("batch_size", config.batch_size);
  config.k_depth = settings.number("k_depth", config.k_depth);
  config.attention_passes = settings.number("attention_passes", config.attention_passes);
  config.grad_clip = settings.number("grad_clip", config.grad_clip);
  config.dev_split = settings.number("dev_split", config.dev_split);
  config.hyponym_cap = settings.number("hyponym_cap", config.hyponym_cap);
  EncoderConfig encoder;
  encoder.hidden_units = settings.number("hidden_units", encoder.hidden_units);
  encoder.num_layers = settings.number("num_layers", encoder.num_layers);
  const int dim = settings.number("embedding_dim", kDefaultEmbeddingDim);
  settings.set_default("best_out", out_path + ".best");
  settings.set_default("log", out_path + ".log.csv");
  try {
    config.validate();
    encoder.input_dim = dim;
    encoder.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  echo_config(err, "train", settings);

  auto inventory = SenseInventory::load(wordnet);
  auto corpus = read_corpus(corpus_path, inventory, err);
  for (const auto& note : corpus.report.notes) err << "  note: " << note << '\n';
  auto table = read_embeddings(embeddings, dim, vocabulary(corpus.instances, inventory, config.k_depth,
                                                           config.hyponym_cap), err);

  auto result = train(corpus.instances, inventory, table, config, encoder, [&](const EpochLog& e) {
    err << "epoch " << e.epoch << " loss " << e.train_loss;
    if (e.dev_accuracy) err << " dev_acc " << *e.dev_accuracy;
    err << '\n';
  });
  for (const auto& skip : result.skipped) err << "  not trained on: " << skip << '\n';
  for (auto* ckpt : {&result.final_checkpoint, &result.best_checkpoint}) {
    ckpt->provenance["wordnet"] = absolute(wordnet);
    ckpt->provenance["embeddings"] = absolute(embeddings);
    ckpt->provenance["embedding_dim"] = std::to_string(dim);
    ckpt->provenance["corpus"] = absolute(corpus_path);
  }
  save_checkpoint(result.final_checkpoint, out_path);
  save_checkpoint(result.best_checkpoint, *settings.get("best_out"));
  write_text(*settings.get("log"), epoch_log_csv(result.log));
  if (!result.embeddings_unchanged) throw TrainingError("embedding table changed during training");
  err << "saved " << out_path << " (epoch " << result.final_checkpoint.epoch << ") and " << *settings.get("best_out")
      << " (epoch " << result.best_checkpoint.epoch << ")\n";
  return kExitOk;
}

int cmd_baseline_common(const std::string& kind, Settings& settings, std::ostream& out, std::ostream& err,
                        const std::optional<Checkpoint>& checkpoint, const SenseInventory& inventory) {
  auto eval = read_corpus(settings.require("eval"), inventory, err);
  EvalOptions options;
  options.default_dataset = fs::path(*settings.get("eval")).stem().string();
  EvalReport report;
  if (kind == "first-sense") {
    report = first_sense_baseline(eval.instances, inventory, options);
  } else if (kind == "mfs") {
    SenseFrequency freq;
    if (auto corpus = settings.get("corpus")) {
      freq = sense_frequencies(read_corpus(*corpus, inventory, err).instances);
    } else if (checkpoint) {
      freq = checkpoint->frequencies;
    } else {
      throw UsageError("the mfs baseline needs --corpus or --ckpt");
    }
    report = mfs_baseline(freq, eval.instances, inventory, options);
  } else {
    throw UsageError("unknown baseline '" + kind + "' (expected mfs or first-sense)");
  }
  write_report(report, settings, out, err);
  return kExitOk;
}

int cmd_evaluate(Settings& settings, std::ostream& out, std::ostream& err) {
  settings.require("eval");
  auto baseline = settings.get("baseline");
  if (baseline && !settings.get("ckpt")) {
    settings.require("wordnet");
    echo_config(err, "evaluate", settings);
    auto inventory = SenseInventory::load(*settings.get("wordnet"));
    return cmd_baseline_common(*baseline, settings, out, err, std::nullopt, inventory);
  }
  settings.require("ckpt");
  auto model = load_model(settings, err);
  if (baseline) {
    echo_config(err, "evaluate", settings);
    return cmd_baseline_common(*baseline, settings, out, err, model.checkpoint, model.inventory);
  }
  const auto embeddings = settings.require("embeddings");
  const int dim = settings.number("embedding_dim", model.checkpoint.model.encoders.input_dim());
  echo_config(err, "evaluate", settings);

  auto eval = read_corpus(settings.require("eval"), model.inventory, err);
  auto table = read_embeddings(embeddings, dim, vocabulary(eval.instances, model.inventory,
                                                           model.checkpoint.model.config.k_depth,
                                                           model.checkpoint.model.config.hyponym_cap), err);
  std::ofstream dump;
  EvalOptions options;
  options.default_dataset = fs::path(*settings.get("eval")).stem().string();
  if (auto path = settings.get("dump_attention")) {
    dump.open(*path, std::ios::binary | std::ios::trunc);
    if (!dump) throw LoadError("cannot write " + *path);
    options.on_result = [&](const Instance& inst, const Disambiguation& result) {
      for (std::size_t p = 0; p < result.attention.passes.size(); ++p) dump << attention_record(inst, result, p).dump() << '\n';
    };
  }
  auto report = evaluate(model.checkpoint, eval.instances, model.inventory, table, options);
  write_report(report, settings, out, err);
  return kExitOk;
}

int cmd_disambiguate(Settings& settings, std::ostream& out, std::ostream& err) {
  Instance inst;
  inst.instance_id = "cli";
  std::istringstream words(settings.require("sentence"));
  for (std::string tok; words >> tok;) inst.tokens.push_back(to_lower(tok));
  auto index = settings.optional_number<long long>("target_index");
  if (!index) throw UsageError("missing required option --target-index");
  if (*index < 0 || static_cast<std::size_t>(*index) >= inst.tokens.size()) {
    throw UsageError("--target-index " + std::to_string(*index) + " is outside the sentence");
  }
  inst.target_index = static_cast<std::size_t>(*index);
  inst.lemma = to_lower(settings.require("lemma"));
  auto pos = parse_pos(settings.require("pos"));
  if (!pos) throw UsageError("--pos must be one of n, v, a, r");
  inst.pos = *pos;

  auto model = load_model(settings, err);
  const auto embeddings = settings.require("embeddings");
  const int dim = settings.number("embedding_dim", model.checkpoint.model.encoders.input_dim());
  echo_config(err, "disambiguate", settings);
  auto table = read_embeddings(embeddings, dim, vocabulary(std::span<const Instance>(&inst, 1), model.inventory,
                                                           model.checkpoint.model.config.k_depth,
                                                           model.checkpoint.model.config.hyponym_cap), err);
  Disambiguator runner(model.checkpoint.model, model.inventory, table);
  auto result = runner.run(inst);

  const Sense* chosen = model.inventory.find(result.sense_id);
  std::string gloss;
  for (const auto& tok : chosen->gloss) gloss += (gloss.empty() ? "" : " ") + tok;
  nlohmann::ordered_json j;
  j["sense_id"] = result.sense_id;
  j["gloss"] = gloss;
  j["used_lemma_head"] = result.used_head;
  nlohmann::ordered_json dist = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < result.candidates.size(); ++c) {
    dist.push_back({{"sense_id", result.candidates[c]}, {"prob", result.distribution.probs[static_cast<Eigen::Index>(c)]}});
  }
  j["distribution"] = std::move(dist);
  out << j.dump(2) << '\n';
  if (auto path = settings.get("dump_attention")) {
    std::ofstream dump(*path, std::ios::binary | std::ios::trunc);
    if (!dump) throw LoadError("cannot write " + *path);
    for (std::size_t p = 0; p < result.attention.passes.size(); ++p) dump << attention_record(inst, result, p).dump() << '\n';
  }
  return kExitOk;
}

int cmd_baseline(Settings& settings, std::ostream& out, std::ostream& err) {
  auto kind = settings.require("kind");
  settings.require("eval");
  auto inventory = SenseInventory::load(settings.require("wordnet"));
  echo_config(err, "baseline", settings);
  return cmd_baseline_common(kind, settings, out, err, std::nullopt, inventory);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SensPick word sense disambiguation"};
  app.name("senspick");
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::map<std::string, CLI::Option*>> handles;
  std::map<std::string, CLI::App*> commands;
  for (const auto& [name, options] : kCommandOptions) {
    static const std::map<std::string, std::string> kDescriptions = {
        {"convert", "convert unified-framework XML + keys to the native corpus format"},
        {"train", "train a model and write checkpoints"},
        {"evaluate", "score a checkpoint (or a baseline) on an evaluation corpus"},
        {"disambiguate", "disambiguate one target word in a sentence"},
        {"baseline", "score the mfs or first-sense baseline"},
    };
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    commands[name] = sub;
    sub->add_option("--config", config_path, "flat key: value config file (flags take precedence)");
    auto add = [&](const OptionSpec& spec) {
      handles[name][spec.key] = sub->add_option(flag_of(spec.key), storage[name][spec.key], spec.help);
    };
    for (const auto& spec : kSharedOptions) add(spec);
    for (const auto& spec : options) add(spec);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  std::string command;
  for (const auto& [name, sub] : commands) {
    if (sub->parsed()) command = name;
  }

  try {
    KeyValueConfig merged;
    if (!config_path.empty()) merged = KeyValueConfig::load(config_path);
    std::set<std::string> known;
    for (const auto& spec : kSharedOptions) known.insert(spec.key);
    for (const auto& spec : kCommandOptions.at(command)) known.insert(spec.key);
    for (const auto& [key, _] : merged.values()) {
      if (!known.count(key)) throw UsageError("unknown key '" + key + "' in " + config_path + " for " + command);
    }
    for (const auto& [key, option] : handles[command]) {
      if (option->count() > 0) merged.set(key, storage[command][key]);
    }
    if (!merged.get("seed")) {
      if (const char* env = std::getenv("SENSPICK_SEED"); env && *env) merged.set("seed", env);
    }
    Settings settings(std::move(merged));
    if (command == "convert") return cmd_convert(settings, err);
    if (command == "train") return cmd_train(settings, err);
    if (command == "evaluate") return cmd_evaluate(settings, out, err);
    if (command == "disambiguate") return cmd_disambiguate(settings, out, err);
    return cmd_baseline(settings, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << commands[command]->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace senspick::cli
