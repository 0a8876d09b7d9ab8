// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace senspick {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEpsilon = 1e-8;

// Distinct streams for weight init, data order and dropout.
constexpr std::uint64_t kShuffleStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kDropoutStream = 0xbf58476d1ce4e5b9ULL;

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0)) throw std::invalid_argument("learning_rate must be positive");
  if (epochs <= 0) throw std::invalid_argument("epochs must be positive");
  if (!(dropout >= 0 && dropout < 1)) throw std::invalid_argument("dropout must lie in [0, 1)");
  if (batch_size <= 0) throw std::invalid_argument("batch_size must be positive");
  if (k_depth < 0) throw std::invalid_argument("k_depth must be non-negative");
  if (attention_passes <= 0) throw std::invalid_argument("attention_passes must be positive");
  if (!(grad_clip > 0)) throw std::invalid_argument("grad_clip must be positive");
  if (!(dev_split >= 0 && dev_split < 1)) throw std::invalid_argument("dev_split must lie in [0, 1)");
  if (hyponym_cap < 0) throw std::invalid_argument("hyponym_cap must be non-negative");
}

Trainer::Trainer(ModelState& model, const SenseInventory& inventory, const EmbeddingTable& table,
                 const TrainConfig& config)
    : model_(&model),
      inventory_(&inventory),
      table_(&table),
      config_(config),
      expansions_(inventory, model.config.k_depth, model.config.hyponym_cap),
      grads_(model.zeros_like()),
      dropout_rng_(config.seed ^ kDropoutStream) {
  config_.validate();
  const std::size_t count = model.parameter_count();
  first_moment_.assign(count, 0.0);
  second_moment_.assign(count, 0.0);
}

double Trainer::step(std::span<const Instance* const> batch, const std::string& label) {
  for (auto& ref : grads_.parameters()) std::fill(ref.data, ref.data + ref.size(), 0.0);
  Dropout dropout(config_.dropout, dropout_rng_);
  double loss = accumulate_gradients(*model_, batch, *inventory_, *table_, expansions_, grads_,
                                     config_.dropout > 0 ? &dropout : nullptr);
  if (!std::isfinite(loss)) throw TrainingError("non-finite loss in " + label);

  auto grad_refs = grads_.parameters();
  double sq = 0.0;
  for (const auto& ref : grad_refs) {
    sq += Eigen::Map<const Eigen::VectorXd>(ref.data, ref.size()).squaredNorm();
  }
  last_norm_ = std::sqrt(sq);
  if (!std::isfinite(last_norm_)) throw TrainingError("non-finite gradient in " + label);
  const double clip = last_norm_ > config_.grad_clip ? config_.grad_clip / last_norm_ : 1.0;

  ++steps_;
  const double t = static_cast<double>(steps_);
  const double correction1 = 1.0 - std::pow(kBeta1, t);
  const double correction2 = 1.0 - std::pow(kBeta2, t);
  const double lr = config_.learning_rate;
  auto param_refs = model_->parameters();
  std::size_t k = 0;
  for (std::size_t r = 0; r < param_refs.size(); ++r) {
    double* value = param_refs[r].data;
    const double* grad = grad_refs[r].data;
    for (Eigen::Index i = 0; i < param_refs[r].size(); ++i, ++k) {
      const double g = grad[i] * clip;
      first_moment_[k] = kBeta1 * first_moment_[k] + (1.0 - kBeta1) * g;
      second_moment_[k] = kBeta2 * second_moment_[k] + (1.0 - kBeta2) * g * g;
      const double m_hat = first_moment_[k] / correction1;
      const double v_hat = second_moment_[k] / correction2;
      value[i] -= lr * m_hat / (std::sqrt(v_hat) + kEpsilon);
    }
  }
  return loss;
}

double accuracy(const ModelState& model, std::span<const Instance> instances, const SenseInventory& inventory,
                const EmbeddingTable& table) {
  if (instances.empty()) return 0.0;
  Disambiguator runner(model, inventory, table);
  std::size_t correct = 0;
  for (const auto& inst : instances) {
    auto result = runner.run(inst);
    if (std::find(inst.gold_sense_ids.begin(), inst.gold_sense_ids.end(), result.sense_id) !=
        inst.gold_sense_ids.end()) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(instances.size());
}

TrainResult train(std::span<const Instance> corpus, const SenseInventory& inventory, const EmbeddingTable& table,
                  const TrainConfig& config, EncoderConfig encoder, const EpochCallback& on_epoch) {
  config.validate();
  encoder.input_dim = table.dim();
  encoder.dropout = config.dropout;
  TrainResult result;

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!gold_class(corpus[i], inventory)) {
      result.skipped.push_back(corpus[i].instance_id + ": first gold label is not a sense of " +
                               corpus[i].key().str());
      continue;
    }
    usable.push_back(i);
  }
  if (usable.empty()) throw TrainingError("training corpus has no usable instances");

  std::mt19937_64 order_rng(config.seed ^ kShuffleStream);
  std::vector<std::size_t> shuffled = usable;
  std::shuffle(shuffled.begin(), shuffled.end(), order_rng);
  const auto dev_count = static_cast<std::size_t>(std::floor(config.dev_split * static_cast<double>(usable.size())));
  std::vector<std::size_t> dev(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(dev_count));
  std::vector<std::size_t> rows(shuffled.begin() + static_cast<std::ptrdiff_t>(dev_count), shuffled.end());
  if (rows.empty()) throw TrainingError("dev split leaves no training instances");
  std::sort(dev.begin(), dev.end());
  std::sort(rows.begin(), rows.end());
  result.dev_rows = dev;

  std::vector<Instance> usable_instances, train_instances, dev_instances;
  for (std::size_t i : usable) usable_instances.push_back(corpus[i]);
  for (std::size_t i : rows) train_instances.push_back(corpus[i]);
  for (std::size_t i : dev) dev_instances.push_back(corpus[i]);

  ModelConfig model_config;
  model_config.encoder = encoder;
  model_config.attention_passes = config.attention_passes;
  model_config.k_depth = config.k_depth;
  model_config.hyponym_cap = config.hyponym_cap;

  Checkpoint base;
  base.labels = build_label_index(usable_instances, inventory).index;
  base.model = ModelState::initialize(model_config, base.labels, config.seed);
  base.train_config = config;
  base.frequencies = sense_frequencies(train_instances);
  base.corpus_fingerprint = corpus_fingerprint(corpus);
  base.inventory_fingerprint = inventory.fingerprint();
  base.embedding_checksum = table.checksum();

  Trainer trainer(base.model, inventory, table, config);
  std::optional<Checkpoint> best;
  std::vector<const Instance*> order;
  for (const auto& inst : train_instances) order.push_back(&inst);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), order_rng);
    double loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
      std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      std::span<const Instance* const> batch(order.data() + start, end - start);
      double loss = trainer.step(batch, "epoch " + std::to_string(epoch) + " batch " + std::to_string(batch_index));
      if (epoch == 1 && batch_index == 0) result.first_batch_loss = loss;
      loss_sum += loss * static_cast<double>(batch.size());
      ++batch_index;
    }
    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / static_cast<double>(order.size());
    if (!dev_instances.empty()) entry.dev_accuracy = accuracy(base.model, dev_instances, inventory, table);
    result.log.push_back(entry);
    if (on_epoch) on_epoch(entry);

    base.epoch = epoch;
    base.dev_accuracy = entry.dev_accuracy;
    if (entry.dev_accuracy && (!best || *entry.dev_accuracy > *best->dev_accuracy)) best = base;
  }

  result.embeddings_unchanged = table.checksum() == base.embedding_checksum;
  result.final_checkpoint = base;
  result.best_checkpoint = best ? std::move(*best) : std::move(base);
  return result;
}

std::string epoch_log_csv(std::span<const EpochLog> log) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,train_loss,dev_acc\n";
  for (const auto& e : log) {
    out << e.epoch << ',' << e.train_loss << ',';
    if (e.dev_accuracy) out << *e.dev_accuracy;
    out << '\n';
  }
  return out.str();
}

}  // namespace senspick
