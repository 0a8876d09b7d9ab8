// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/lstm.hpp"

#include <cmath>

namespace senspick {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Vec Dropout::mask(Eigen::Index size) {
  std::bernoulli_distribution keep(1.0 - rate_);
  const double scale = 1.0 / (1.0 - rate_);
  Vec m(size);
  for (Eigen::Index i = 0; i < size; ++i) m[i] = keep(*rng_) ? scale : 0.0;
  return m;
}

LstmLayer LstmLayer::zeros(int input_dim, int hidden_dim) {
  if (input_dim <= 0 || hidden_dim <= 0) throw std::invalid_argument("LSTM dimensions must be positive");
  return {Mat::Zero(4 * hidden_dim, input_dim), Mat::Zero(4 * hidden_dim, hidden_dim), Vec::Zero(4 * hidden_dim)};
}

void LstmLayer::collect(std::vector<ParamRef>& out, const std::string& prefix) {
  collect_param(out, prefix + ".W", W);
  collect_param(out, prefix + ".U", U);
  collect_param(out, prefix + ".b", b);
}

LstmState lstm_step(const LstmLayer& layer, const Vec& x, const Vec& h_prev, const Vec& c_prev, LstmStepCache* cache) {
  const Eigen::Index h = layer.U.cols();
  if (layer.W.rows() != 4 * h || layer.U.rows() != 4 * h || layer.b.size() != 4 * h) {
    throw std::invalid_argument("lstm_step: inconsistent parameter shapes");
  }
  if (x.size() != layer.W.cols() || h_prev.size() != h || c_prev.size() != h) {
    throw std::invalid_argument("lstm_step: input/state dimension mismatch");
  }
  Vec z = layer.W * x + layer.U * h_prev + layer.b;
  for (Eigen::Index k = 0; k < h; ++k) {
    z[k] = sigmoid(z[k]);
    z[h + k] = sigmoid(z[h + k]);
    z[2 * h + k] = std::tanh(z[2 * h + k]);
    z[3 * h + k] = sigmoid(z[3 * h + k]);
  }
  LstmState next;
  next.c = z.segment(h, h).cwiseProduct(c_prev) + z.segment(0, h).cwiseProduct(z.segment(2 * h, h));
  Vec tanh_c = next.c.array().tanh().matrix();
  next.h = z.segment(3 * h, h).cwiseProduct(tanh_c);
  if (cache) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->c_prev = c_prev;
    cache->gates = std::move(z);
    cache->c = next.c;
    cache->tanh_c = std::move(tanh_c);
  }
  return next;
}

void lstm_step_backward(const LstmLayer& layer, const LstmStepCache& cache, const Vec& dh, const Vec& dc,
                        LstmLayer& grad, Vec& dx, Vec& dh_prev, Vec& dc_prev) {
  const Eigen::Index h = layer.U.cols();
  auto i = cache.gates.segment(0, h).array();
  auto f = cache.gates.segment(h, h).array();
  auto g = cache.gates.segment(2 * h, h).array();
  auto o = cache.gates.segment(3 * h, h).array();
  auto tc = cache.tanh_c.array();

  Eigen::ArrayXd dc_total = dc.array() + dh.array() * o * (1.0 - tc * tc);
  Vec dz(4 * h);
  dz.segment(0, h) = (dc_total * g * i * (1.0 - i)).matrix();
  dz.segment(h, h) = (dc_total * cache.c_prev.array() * f * (1.0 - f)).matrix();
  dz.segment(2 * h, h) = (dc_total * i * (1.0 - g * g)).matrix();
  dz.segment(3 * h, h) = (dh.array() * tc * o * (1.0 - o)).matrix();

  grad.W.noalias() += dz * cache.x.transpose();
  grad.U.noalias() += dz * cache.h_prev.transpose();
  grad.b += dz;
  dx.noalias() = layer.W.transpose() * dz;
  dh_prev.noalias() = layer.U.transpose() * dz;
  dc_prev = (dc_total * f).matrix();
}

StackedLstm StackedLstm::zeros(int input_dim, int hidden_dim, int num_layers) {
  if (num_layers <= 0) throw std::invalid_argument("stacked LSTM needs at least one layer");
  StackedLstm stack;
  for (int l = 0; l < num_layers; ++l) stack.layers.push_back(LstmLayer::zeros(l == 0 ? input_dim : hidden_dim, hidden_dim));
  return stack;
}

void StackedLstm::collect(std::vector<ParamRef>& out, const std::string& prefix) {
  for (std::size_t l = 0; l < layers.size(); ++l) layers[l].collect(out, prefix + ".layer" + std::to_string(l));
}

StackedTrace run_stacked(const StackedLstm& stack, std::span<const Vec> inputs, Dropout* dropout) {
  StackedTrace trace;
  const std::size_t num_layers = stack.layers.size();
  trace.steps.resize(num_layers);
  if (dropout && num_layers > 1) trace.masks.resize(num_layers - 1);
  trace.final_hidden = Vec::Zero(stack.hidden_dim());
  if (inputs.empty()) return trace;

  std::vector<Vec> current(inputs.begin(), inputs.end());
  for (std::size_t l = 0; l < num_layers; ++l) {
    const LstmLayer& layer = stack.layers[l];
    auto& caches = trace.steps[l];
    caches.resize(current.size());
    LstmState state{Vec::Zero(layer.hidden_dim()), Vec::Zero(layer.hidden_dim())};
    std::vector<Vec> outputs;
    outputs.reserve(current.size());
    for (std::size_t t = 0; t < current.size(); ++t) {
      state = lstm_step(layer, current[t], state.h, state.c, &caches[t]);
      outputs.push_back(state.h);
    }
    if (l + 1 < num_layers && dropout) {
      auto& masks = trace.masks[l];
      for (auto& out : outputs) {
        masks.push_back(dropout->mask(out.size()));
        out = out.cwiseProduct(masks.back());
      }
    }
    current = std::move(outputs);
  }
  trace.final_hidden = trace.steps.back().back().tanh_c.cwiseProduct(
      trace.steps.back().back().gates.segment(3 * stack.hidden_dim(), stack.hidden_dim()));
  return trace;
}

void backward_stacked(const StackedLstm& stack, const StackedTrace& trace, const Vec& d_final, StackedLstm& grad,
                      std::vector<Vec>* d_inputs) {
  const std::size_t num_layers = stack.layers.size();
  if (trace.steps.empty() || trace.steps.front().empty()) {
    if (d_inputs) d_inputs->clear();
    return;
  }
  const std::size_t steps = trace.steps.front().size();
  // Gradient arriving at each layer output from above, per time step.
  std::vector<Vec> d_out(steps, Vec::Zero(stack.hidden_dim()));
  d_out.back() = d_final;
  for (std::size_t l = num_layers; l-- > 0;) {
    const LstmLayer& layer = stack.layers[l];
    const auto& caches = trace.steps[l];
    const bool need_dx = l > 0 || d_inputs;
    std::vector<Vec> d_in(need_dx ? steps : 0);
    Vec dh_next = Vec::Zero(layer.hidden_dim());
    Vec dc_next = Vec::Zero(layer.hidden_dim());
    Vec dx, dh_prev, dc_prev;
    for (std::size_t t = steps; t-- > 0;) {
      Vec dh = d_out[t] + dh_next;
      lstm_step_backward(layer, caches[t], dh, dc_next, grad.layers[l], dx, dh_prev, dc_prev);
      if (need_dx) d_in[t] = dx;
      dh_next = dh_prev;
      dc_next = dc_prev;
    }
    if (l > 0) {
      if (!trace.masks.empty()) {
        for (std::size_t t = 0; t < steps; ++t) d_in[t] = d_in[t].cwiseProduct(trace.masks[l - 1][t]);
      }
      d_out = std::move(d_in);
    } else if (d_inputs) {
      *d_inputs = std::move(d_in);
    }
  }
}

}  // namespace senspick
