// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "senspick/training.hpp"

namespace senspick {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'C', 'K', 'P', 'T', '0', '1'};
constexpr char kTrailer[8] = {'S', 'P', 'C', 'K', 'E', 'N', 'D', '!'};

using nlohmann::json;

json config_to_json(const TrainConfig& c) {
  return {{"learning_rate", c.learning_rate}, {"epochs", c.epochs},         {"dropout", c.dropout},
          {"batch_size", c.batch_size},       {"k_depth", c.k_depth},       {"attention_passes", c.attention_passes},
          {"seed", c.seed},                   {"grad_clip", c.grad_clip},   {"dev_split", c.dev_split},
          {"hyponym_cap", c.hyponym_cap}};
}

TrainConfig config_from_json(const json& j) {
  TrainConfig c;
  c.learning_rate = j.at("learning_rate").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.dropout = j.at("dropout").get<double>();
  c.batch_size = j.at("batch_size").get<int>();
  c.k_depth = j.at("k_depth").get<int>();
  c.attention_passes = j.at("attention_passes").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.grad_clip = j.at("grad_clip").get<double>();
  c.dev_split = j.at("dev_split").get<double>();
  c.hyponym_cap = j.at("hyponym_cap").get<int>();
  return c;
}

json model_config_to_json(const ModelConfig& c) {
  return {{"input_dim", c.encoder.input_dim}, {"hidden_units", c.encoder.hidden_units},
          {"num_layers", c.encoder.num_layers}, {"dropout", c.encoder.dropout},
          {"attention_passes", c.attention_passes}, {"k_depth", c.k_depth},
          {"hyponym_cap", c.hyponym_cap}};
}

ModelConfig model_config_from_json(const json& j) {
  ModelConfig c;
  c.encoder.input_dim = j.at("input_dim").get<int>();
  c.encoder.hidden_units = j.at("hidden_units").get<int>();
  c.encoder.num_layers = j.at("num_layers").get<int>();
  c.encoder.dropout = j.at("dropout").get<double>();
  c.attention_passes = j.at("attention_passes").get<int>();
  c.k_depth = j.at("k_depth").get<int>();
  c.hyponym_cap = j.at("hyponym_cap").get<int>();
  return c;
}

json key_to_json(const LemmaKey& key) { return {{"lemma", key.lemma}, {"pos", std::string(1, pos_code(key.pos))}}; }

LemmaKey key_from_json(const json& j) {
  auto pos = parse_pos(j.at("pos").get<std::string>());
  if (!pos) throw LoadError("checkpoint: bad part of speech in label index");
  return {j.at("lemma").get<std::string>(), *pos};
}

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& what) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw LoadError("checkpoint truncated while reading " + what);
  return value;
}

}  // namespace

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  json header;
  header["format_version"] = Checkpoint::kFormatVersion;
  header["model_config"] = model_config_to_json(checkpoint.model.config);
  header["train_config"] = config_to_json(checkpoint.train_config);
  json labels = json::array();
  for (const auto& [key, entry] : checkpoint.labels.entries()) {
    json item = key_to_json(key);
    item["classes"] = entry.classes;
    labels.push_back(std::move(item));
  }
  header["labels"] = std::move(labels);
  json freq = json::array();
  for (const auto& [key, counts] : checkpoint.frequencies) {
    json item = key_to_json(key);
    item["counts"] = counts;
    freq.push_back(std::move(item));
  }
  header["frequencies"] = std::move(freq);
  header["corpus_fingerprint"] = checkpoint.corpus_fingerprint;
  header["inventory_fingerprint"] = checkpoint.inventory_fingerprint;
  header["embedding_checksum"] = checkpoint.embedding_checksum;
  header["epoch"] = checkpoint.epoch;
  header["dev_accuracy"] = checkpoint.dev_accuracy ? json(*checkpoint.dev_accuracy) : json(nullptr);
  header["provenance"] = checkpoint.provenance;
  const std::string header_text = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot write checkpoint: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(out, Checkpoint::kFormatVersion);
  write_pod<std::uint64_t>(out, header_text.size());
  out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));

  auto refs = const_cast<ModelState&>(checkpoint.model).parameters();
  write_pod<std::uint64_t>(out, refs.size());
  for (const auto& ref : refs) {
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(ref.name.size()));
    out.write(ref.name.data(), static_cast<std::streamsize>(ref.name.size()));
    write_pod<std::int64_t>(out, ref.rows);
    write_pod<std::int64_t>(out, ref.cols);
    out.write(reinterpret_cast<const char*>(ref.data), static_cast<std::streamsize>(ref.size() * sizeof(double)));
  }
  out.write(kTrailer, sizeof(kTrailer));
  if (!out) throw LoadError("failed writing checkpoint: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint: " + path.string());
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw LoadError("not a checkpoint file: " + path.string());
  }
  auto version = read_pod<std::uint32_t>(in, "format version");
  if (version != static_cast<std::uint32_t>(Checkpoint::kFormatVersion)) {
    throw LoadError("checkpoint format version " + std::to_string(version) + " is not supported (this build reads version " +
                    std::to_string(Checkpoint::kFormatVersion) + "): " + path.string());
  }
  auto header_size = read_pod<std::uint64_t>(in, "header size");
  if (header_size > (1ULL << 32)) throw LoadError("checkpoint header size is implausible: " + path.string());
  std::string header_text(header_size, '\0');
  if (!in.read(header_text.data(), static_cast<std::streamsize>(header_size))) {
    throw LoadError("checkpoint truncated in header: " + path.string());
  }

  Checkpoint ckpt;
  try {
    json header = json::parse(header_text);
    ckpt.train_config = config_from_json(header.at("train_config"));
    ModelConfig model_config = model_config_from_json(header.at("model_config"));
    for (const auto& item : header.at("labels")) {
      SenseLabelIndex::Entry entry;
      entry.classes = item.at("classes").get<std::vector<SenseId>>();
      ckpt.labels.insert(key_from_json(item), std::move(entry));
    }
    for (const auto& item : header.at("frequencies")) {
      ckpt.frequencies[key_from_json(item)] = item.at("counts").get<std::map<SenseId, std::size_t>>();
    }
    ckpt.corpus_fingerprint = header.at("corpus_fingerprint").get<std::string>();
    ckpt.inventory_fingerprint = header.at("inventory_fingerprint").get<std::string>();
    ckpt.embedding_checksum = header.at("embedding_checksum").get<std::uint64_t>();
    ckpt.epoch = header.at("epoch").get<int>();
    if (!header.at("dev_accuracy").is_null()) ckpt.dev_accuracy = header.at("dev_accuracy").get<double>();
    ckpt.provenance = header.at("provenance").get<std::map<std::string, std::string>>();
    ckpt.model = ModelState::initialize(model_config, ckpt.labels, 0).zeros_like();
  } catch (const json::exception& e) {
    throw LoadError("corrupt checkpoint header in " + path.string() + ": " + e.what());
  }

  auto refs = ckpt.model.parameters();
  auto count = read_pod<std::uint64_t>(in, "tensor count");
  if (count != refs.size()) {
    throw LoadError("checkpoint holds " + std::to_string(count) + " tensors, model expects " +
                    std::to_string(refs.size()));
  }
  for (auto& ref : refs) {
    auto name_size = read_pod<std::uint32_t>(in, "tensor name");
    std::string name(name_size, '\0');
    if (name_size > 4096 || !in.read(name.data(), name_size)) throw LoadError("checkpoint truncated in tensor name");
    auto rows = read_pod<std::int64_t>(in, name);
    auto cols = read_pod<std::int64_t>(in, name);
    if (name != ref.name || rows != ref.rows || cols != ref.cols) {
      throw LoadError("checkpoint tensor " + name + " does not match expected " + ref.name);
    }
    if (!in.read(reinterpret_cast<char*>(ref.data), static_cast<std::streamsize>(ref.size() * sizeof(double)))) {
      throw LoadError("checkpoint truncated in tensor " + name);
    }
  }
  char trailer[sizeof(kTrailer)];
  if (!in.read(trailer, sizeof(trailer)) || std::memcmp(trailer, kTrailer, sizeof(kTrailer)) != 0) {
    throw LoadError("checkpoint truncated or corrupt (missing trailer): " + path.string());
  }
  return ckpt;
}

std::optional<std::string> override_k_depth(Checkpoint& checkpoint, int k_depth) {
  if (k_depth < 0) throw std::invalid_argument("k_depth must be non-negative");
  const int trained = checkpoint.train_config.k_depth;
  checkpoint.model.config.k_depth = k_depth;
  if (k_depth == trained) return std::nullopt;
  return "warning: checkpoint was trained with k_depth=" + std::to_string(trained) + "; running with k_depth=" +
         std::to_string(k_depth);
}

}  // namespace senspick
