// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include "senspick/config_file.hpp"
#include "senspick/corpus.hpp"
#include "senspick/embeddings.hpp"
#include "senspick/encoders.hpp"
#include "senspick/sense_inventory.hpp"

namespace testing {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return fs::path(SENSPICK_FIXTURE_DIR); }
inline fs::path source_dir() { return fs::path(SENSPICK_SOURCE_DIR); }

// WordNet 3.0 dict directory, when one is installed.
inline std::optional<fs::path> wordnet_dir() {
  const char* env = std::getenv("SENSPICK_WORDNET_DIR");
  std::string dir = env && *env ? env : SENSPICK_WORDNET_DIR_DEFAULT;
  if (dir.empty() || !fs::exists(fs::path(dir) / "index.sense")) return std::nullopt;
  return fs::path(dir);
}

inline fs::path scratch_dir(const std::string& name) {
  static std::mt19937_64 rng(std::random_device{}());
  fs::path dir = fs::temp_directory_path() / ("senspick-" + name + "-" + std::to_string(rng() % 1000000000));
  fs::create_directories(dir);
  return dir;
}

struct OverfitFixture {
  senspick::SenseInventory inventory;
  std::vector<senspick::Instance> train;
  std::vector<senspick::Instance> heldout;
  senspick::EmbeddingTable table;
  senspick::EncoderConfig encoder;
};

inline OverfitFixture load_overfit() {
  const fs::path dir = fixture_dir() / "overfit";
  OverfitFixture f;
  f.inventory = senspick::SenseInventory::load(dir);
  f.train = senspick::load_corpus(dir / "train.jsonl", f.inventory).instances;
  f.heldout = senspick::load_corpus(dir / "heldout.jsonl", f.inventory).instances;
  auto config = senspick::KeyValueConfig::load(dir / "config.yaml");
  const int dim = std::stoi(config.get("embedding_dim").value());
  f.table = senspick::EmbeddingTable::load(dir / "embeddings.txt", dim);
  f.encoder.input_dim = dim;
  f.encoder.hidden_units = std::stoi(config.get("hidden_units").value());
  return f;
}

}  // namespace testing
