// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/common.hpp"

#include <cctype>
#include <cstdio>

namespace senspick {

std::optional<Pos> parse_pos(std::string_view text) {
  if (text == "n" || text == "noun" || text == "NOUN") return Pos::noun;
  if (text == "v" || text == "verb" || text == "VERB") return Pos::verb;
  if (text == "a" || text == "s" || text == "adj" || text == "ADJ") return Pos::adj;
  if (text == "r" || text == "adv" || text == "ADV") return Pos::adv;
  return std::nullopt;
}

char pos_code(Pos pos) {
  switch (pos) {
    case Pos::noun: return 'n';
    case Pos::verb: return 'v';
    case Pos::adj: return 'a';
    case Pos::adv: return 'r';
  }
  return '?';
}

std::string_view pos_name(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adj: return "adj";
    case Pos::adv: return "adv";
  }
  return "?";
}

std::string LemmaKey::str() const {
  std::string out = lemma;
  out += '.';
  out += pos_code(pos);
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<std::string> normalize_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char raw : text) {
    auto ch = static_cast<unsigned char>(raw);
    // Bytes >= 0x80 belong to UTF-8 sequences and are kept verbatim.
    if (std::isspace(ch) || (ch < 0x80 && std::ispunct(ch))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += static_cast<char>(std::tolower(ch));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string_view trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

std::string_view definition_segment(std::string_view gloss) {
  std::size_t quote = gloss.find('"');
  std::string_view def = quote == std::string_view::npos ? gloss : gloss.substr(0, quote);
  def = trim(def);
  while (!def.empty() && (def.back() == ';' || def.back() == ':')) {
    def.remove_suffix(1);
    def = trim(def);
  }
  return def;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      break;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

Fingerprint& Fingerprint::add_raw(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash_ ^= bytes[i];
    hash_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fingerprint& Fingerprint::add(std::string_view bytes) {
  add(static_cast<std::int64_t>(bytes.size()));
  return add_raw(bytes.data(), bytes.size());
}

Fingerprint& Fingerprint::add(std::int64_t value) { return add_raw(&value, sizeof(value)); }

std::string Fingerprint::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
  return buf;
}

}  // namespace senspick
