// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "senspick/corpus.hpp"

namespace senspick {

struct ConversionReport {
  std::size_t sentences = 0;
  std::size_t instances = 0;
  std::size_t missing_keys = 0;      // <instance> elements without a gold line
  std::size_t lemma_mismatches = 0;  // gold key lemma differs from the lemma attribute
  std::vector<std::string> notes;
};

struct Conversion {
  std::vector<Instance> instances;
  ConversionReport report;
};

/// Converts a unified-framework XML file (corpus/text/sentence with wf and
/// instance children) plus its "id key [key ...]" gold file into native
/// instances, one per annotated <instance>.
Conversion convert_unified_xml(const std::filesystem::path& xml_path, const std::filesystem::path& keys_path);

}  // namespace senspick
