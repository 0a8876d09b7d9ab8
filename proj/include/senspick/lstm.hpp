// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "senspick/common.hpp"

namespace senspick {

/// Named view of one parameter tensor (column-major, rows x cols).
struct ParamRef {
  std::string name;
  double* data = nullptr;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;

  Eigen::Index size() const { return rows * cols; }
};

inline void collect_param(std::vector<ParamRef>& out, std::string name, Mat& m) {
  out.push_back({std::move(name), m.data(), m.rows(), m.cols()});
}
inline void collect_param(std::vector<ParamRef>& out, std::string name, Vec& v) {
  out.push_back({std::move(name), v.data(), v.rows(), 1});
}

// Inverted dropout: kept units are scaled by 1 / (1 - rate).
class Dropout {
 public:
  Dropout(double rate, std::mt19937_64& rng) : rate_(rate), rng_(&rng) {}
  Vec mask(Eigen::Index size);
  double rate() const { return rate_; }

 private:
  double rate_;
  std::mt19937_64* rng_;
};

/// One LSTM layer. Gate blocks of W, U and b are ordered
/// [input, forget, candidate, output], each `hidden` rows tall.
struct LstmLayer {
  Mat W;
  Mat U;
  Vec b;

  static LstmLayer zeros(int input_dim, int hidden_dim);
  int input_dim() const { return static_cast<int>(W.cols()); }
  int hidden_dim() const { return static_cast<int>(U.cols()); }
  void collect(std::vector<ParamRef>& out, const std::string& prefix);
};

struct LstmState {
  Vec h;
  Vec c;
};

struct LstmStepCache {
  Vec x;
  Vec h_prev;
  Vec c_prev;
  Vec gates;  // post-activation i, f, g, o
  Vec c;
  Vec tanh_c;
};

LstmState lstm_step(const LstmLayer& layer, const Vec& x, const Vec& h_prev, const Vec& c_prev,
                    LstmStepCache* cache = nullptr);

// Accumulates parameter gradients into `grad` and writes the gradients
// with respect to x, h_prev and c_prev.
void lstm_step_backward(const LstmLayer& layer, const LstmStepCache& cache, const Vec& dh, const Vec& dc,
                        LstmLayer& grad, Vec& dx, Vec& dh_prev, Vec& dc_prev);

struct StackedLstm {
  std::vector<LstmLayer> layers;

  static StackedLstm zeros(int input_dim, int hidden_dim, int num_layers);
  int input_dim() const { return layers.front().input_dim(); }
  int hidden_dim() const { return layers.back().hidden_dim(); }
  void collect(std::vector<ParamRef>& out, const std::string& prefix);
};

struct StackedTrace {
  std::vector<std::vector<LstmStepCache>> steps;  // [layer][time]
  std::vector<std::vector<Vec>> masks;            // [layer boundary][time], empty without dropout
  Vec final_hidden;                               // top layer, zero for empty input
};

/// Runs the stack over `inputs` from zero initial states. Dropout, when
/// given, is applied to the outputs of every layer but the last.
StackedTrace run_stacked(const StackedLstm& stack, std::span<const Vec> inputs, Dropout* dropout = nullptr);

/// Backpropagates a gradient on the final top-layer hidden state. Input
/// gradients are produced only when `d_inputs` is non-null.
void backward_stacked(const StackedLstm& stack, const StackedTrace& trace, const Vec& d_final, StackedLstm& grad,
                      std::vector<Vec>* d_inputs);

}  // namespace senspick
