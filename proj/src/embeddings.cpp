// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace senspick {

namespace {

bool parse_float(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path, int dim,
                                    const std::unordered_set<std::string>* keep, LoadReport* report) {
  if (dim <= 0) throw std::invalid_argument("embedding dimension must be positive");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open embeddings file: " + path.string());

  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = LoadReport{};

  EmbeddingTable table;
  table.dim_ = dim;
  Vec sum = Vec::Zero(dim);
  std::size_t usable = 0;
  std::vector<double> values(static_cast<std::size_t>(dim));
  std::string line;
  while (std::getline(in, line)) {
    ++rep.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::string_view rest = line;
    auto space = rest.find(' ');
    if (space == std::string_view::npos || space == 0) {
      rep.malformed_lines.push_back(rep.lines_read);
      continue;
    }
    std::string token(rest.substr(0, space));
    rest.remove_prefix(space + 1);
    int count = 0;
    bool ok = true;
    while (!rest.empty()) {
      auto next = rest.find(' ');
      std::string_view field = rest.substr(0, next);
      rest = next == std::string_view::npos ? std::string_view() : rest.substr(next + 1);
      if (field.empty()) continue;
      if (count >= dim || !parse_float(field, values[static_cast<std::size_t>(count)])) {
        ok = false;
        break;
      }
      ++count;
    }
    if (!ok || count != dim) {
      rep.malformed_lines.push_back(rep.lines_read);
      continue;
    }
    ++usable;
    for (int d = 0; d < dim; ++d) sum[d] += values[static_cast<std::size_t>(d)];
    if (keep && !keep->count(token) && !keep->count(to_lower(token))) {
      ++rep.filtered;
      continue;
    }
    if (table.vocab_.count(token)) {
      rep.duplicates.push_back(token);
      continue;
    }
    table.vocab_.emplace(token, table.tokens_.size());
    table.tokens_.push_back(std::move(token));
    for (double v : values) table.data_.push_back(static_cast<float>(v));
  }
  if (usable == 0) throw LoadError("no usable embedding lines in " + path.string());
  table.unk_ = sum / static_cast<double>(usable);
  rep.loaded = table.tokens_.size();
  return table;
}

EmbeddingTable EmbeddingTable::from_rows(std::vector<std::string> tokens, const Mat& rows) {
  if (static_cast<Eigen::Index>(tokens.size()) != rows.rows() || rows.cols() == 0 || tokens.empty()) {
    throw std::invalid_argument("from_rows: need one non-empty row per token");
  }
  EmbeddingTable table;
  table.dim_ = static_cast<int>(rows.cols());
  Vec sum = Vec::Zero(rows.cols());
  std::size_t usable = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    sum += rows.row(static_cast<Eigen::Index>(i)).transpose();
    ++usable;
    if (table.vocab_.count(tokens[i])) continue;
    table.vocab_.emplace(tokens[i], table.tokens_.size());
    table.tokens_.push_back(tokens[i]);
    for (Eigen::Index d = 0; d < rows.cols(); ++d) {
      table.data_.push_back(static_cast<float>(rows(static_cast<Eigen::Index>(i), d)));
    }
  }
  table.unk_ = sum / static_cast<double>(usable);
  return table;
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view token) const {
  auto it = vocab_.find(std::string(token));
  if (it == vocab_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingTable::row(std::size_t index) const {
  return {data_.data() + index * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
}

Vec EmbeddingTable::lookup(std::string_view token) const {
  auto idx = index_of(token);
  if (!idx) idx = index_of(to_lower(token));
  if (!idx) return unk_;
  auto values = row(*idx);
  Vec out(dim_);
  for (int d = 0; d < dim_; ++d) out[d] = values[static_cast<std::size_t>(d)];
  return out;
}

std::uint64_t EmbeddingTable::checksum() const {
  Fingerprint fp;
  for (const auto& tok : tokens_) fp.add(tok);
  fp.add_raw(data_.data(), data_.size() * sizeof(float));
  fp.add_raw(unk_.data(), static_cast<std::size_t>(unk_.size()) * sizeof(double));
  return fp.value();
}

}  // namespace senspick
