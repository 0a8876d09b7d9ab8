// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace senspick {

double Score::precision() const {
  return answered == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(answered);
}

double Score::recall() const {
  return attempted == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(attempted);
}

// 2PR / (P + R) reduces to 2 * correct / (answered + attempted); one
// division keeps the value correctly rounded.
double Score::f1() const {
  if (correct == 0) return 0.0;
  return 200.0 * static_cast<double>(correct) / static_cast<double>(answered + attempted);
}

void Score::add(const Score& other) {
  attempted += other.attempted;
  answered += other.answered;
  correct += other.correct;
  backoff += other.backoff;
}

double round1(double value) { return std::round(value * 10.0) / 10.0; }

std::string dataset_of(const Instance& instance, const std::string& fallback) {
  auto dot = instance.instance_id.find('.');
  if (dot == std::string::npos || dot == 0) return fallback;
  return instance.instance_id.substr(0, dot);
}

EvalReport score_answers(std::span<const Instance> instances, const std::function<Answer(const Instance&)>& answer,
                         std::string system, const EvalOptions& options) {
  EvalReport report;
  report.system = std::move(system);
  for (const auto& inst : instances) {
    Answer a = answer(inst);
    PredictionRecord rec;
    rec.instance_id = inst.instance_id;
    rec.dataset = dataset_of(inst, options.default_dataset);
    rec.pos = inst.pos;
    rec.sense_id = a.sense_id;
    rec.backoff = a.backoff && a.sense_id.has_value();
    rec.correct = a.sense_id && std::find(inst.gold_sense_ids.begin(), inst.gold_sense_ids.end(), *a.sense_id) !=
                                    inst.gold_sense_ids.end();

    Score s;
    s.attempted = 1;
    s.answered = rec.sense_id ? 1 : 0;
    s.correct = rec.correct ? 1 : 0;
    s.backoff = rec.backoff ? 1 : 0;
    report.overall.add(s);
    report.datasets[rec.dataset].add(s);
    report.per_pos[std::string(pos_name(rec.pos))].add(s);
    report.predictions.push_back(std::move(rec));
  }
  return report;
}

namespace {

Answer first_sense_answer(const Instance& inst, const SenseInventory& inventory) {
  const Sense* first = inventory.first_sense(inst.lemma, inst.pos);
  if (!first) return {};
  return {first->sense_id, true};
}

}  // namespace

EvalReport evaluate(const Checkpoint& checkpoint, std::span<const Instance> instances, const SenseInventory& inventory,
                    const EmbeddingTable& table, const EvalOptions& options) {
  if (checkpoint.inventory_fingerprint != inventory.fingerprint()) {
    throw LoadError("inventory fingerprint " + inventory.fingerprint() + " differs from the checkpoint's " +
                    checkpoint.inventory_fingerprint);
  }
  Disambiguator runner(checkpoint.model, inventory, table);
  return score_answers(
      instances,
      [&](const Instance& inst) -> Answer {
        try {
          Disambiguation result = runner.run(inst);
          if (options.on_result) options.on_result(inst, result);
          return {result.sense_id, false};
        } catch (const UnresolvableError&) {
          return first_sense_answer(inst, inventory);
        }
      },
      "senspick", options);
}

EvalReport mfs_baseline(const SenseFrequency& frequencies, std::span<const Instance> instances,
                        const SenseInventory& inventory, const EvalOptions& options) {
  return score_answers(
      instances,
      [&](const Instance& inst) -> Answer {
        auto counts = frequencies.find(inst.key());
        if (counts == frequencies.end() || counts->second.empty()) return first_sense_answer(inst, inventory);
        const Sense* best = nullptr;
        std::size_t best_count = 0;
        for (const Sense* s : inventory.senses_of(inst.lemma, inst.pos)) {
          auto c = counts->second.find(s->sense_id);
          if (c != counts->second.end() && c->second > best_count) {
            best = s;
            best_count = c->second;
          }
        }
        if (!best) return first_sense_answer(inst, inventory);
        return {best->sense_id, false};
      },
      "mfs", options);
}

EvalReport first_sense_baseline(std::span<const Instance> instances, const SenseInventory& inventory,
                                const EvalOptions& options) {
  return score_answers(
      instances,
      [&](const Instance& inst) -> Answer {
        Answer a = first_sense_answer(inst, inventory);
        a.backoff = false;
        return a;
      },
      "first-sense", options);
}

namespace {

nlohmann::ordered_json score_json(const Score& s) {
  nlohmann::ordered_json j;
  j["attempted"] = s.attempted;
  j["answered"] = s.answered;
  j["correct"] = s.correct;
  j["backoff"] = s.backoff;
  j["precision"] = round1(s.precision());
  j["recall"] = round1(s.recall());
  j["f1"] = round1(s.f1());
  return j;
}

}  // namespace

std::string report_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["system"] = report.system;
  j["overall"] = score_json(report.overall);
  nlohmann::ordered_json datasets = nlohmann::ordered_json::object();
  for (const auto& [name, s] : report.datasets) datasets[name] = score_json(s);
  j["datasets"] = std::move(datasets);
  nlohmann::ordered_json per_pos = nlohmann::ordered_json::object();
  for (const auto& [name, s] : report.per_pos) per_pos[name] = score_json(s);
  j["per_pos"] = std::move(per_pos);
  return j.dump(2) + "\n";
}

std::string predictions_tsv(const EvalReport& report) {
  std::string out;
  for (const auto& rec : report.predictions) {
    out += rec.instance_id;
    out += '\t';
    out += rec.sense_id ? *rec.sense_id : std::string("-");
    out += '\n';
  }
  return out;
}

}  // namespace senspick
