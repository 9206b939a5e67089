// Copyright 2026 The idiomdetect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IDIOM_NN_HPP_
#define IDIOM_NN_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace idiom::nn {

using Mat = Eigen::MatrixXd;

// A named trainable tensor. Gradients accumulate across tape runs until the
// optimizer consumes them.
struct Parameter {
  std::string name;
  Mat value;
  Mat grad;
  bool weight_decay = true;  // biases and norm gains/offsets opt out

  Parameter(std::string n, Mat v, bool decay = true)
      : name(std::move(n)), value(std::move(v)), weight_decay(decay) {
    grad = Mat::Zero(value.rows(), value.cols());
  }
  void zero_grad() { grad.setZero(); }
};

using ParamPtr = std::shared_ptr<Parameter>;

// One node of a computation tape.
struct Node {
  Mat value;
  Mat grad;
  std::function<void()> backward;  // adds this node's grad into parents'
};

using Value = std::shared_ptr<Node>;

// A single-use reverse-mode tape. Build the forward pass with the ops below,
// call backward(loss) once, then discard. Parameters outlive tapes.
class Tape {
 public:
  Value input(Mat v);
  Value param(const ParamPtr& p);

  Value matmul(const Value& a, const Value& b);
  Value transpose(const Value& a);
  Value add(const Value& a, const Value& b);
  // a: n×d plus a 1×d row added to every row.
  Value add_row_broadcast(const Value& a, const Value& row);
  Value mul_scalar(const Value& a, double s);
  Value rows(const Value& a, std::vector<int> idx);
  Value mean_rows(const Value& a, std::vector<int> idx);
  Value cols(const Value& a, int start, int len);
  Value concat_cols(const std::vector<Value>& parts);
  Value layer_norm_rows(const Value& a, const Value& gain, const Value& bias,
                        double eps = 1e-5);
  Value softmax_rows(const Value& a);
  Value gelu(const Value& a);
  // Inverted dropout; identity when !train or rate == 0.
  Value dropout(const Value& a, double rate, std::mt19937_64& rng, bool train);
  // logits: 1×k. Returns the 1×1 softmax cross-entropy loss.
  Value cross_entropy_logits(const Value& logits, int label);

  // Seeds root's grad with 1 and sweeps the tape in reverse, then flushes
  // gradients of bound parameters. root must be 1×1.
  void backward(const Value& root);

  std::size_t size() const { return nodes_.size(); }

 private:
  Value make(Mat value, std::function<void()> backward_fn);

  std::vector<Value> nodes_;
  std::vector<std::pair<Value, ParamPtr>> bindings_;
};

// Numerically stable softmax of a row vector (forward only).
Eigen::RowVectorXd softmax_row(const Eigen::RowVectorXd& z);

// Gaussian init, seeded.
Mat randn(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
          double stddev);

bool all_finite(const Mat& m);

// Decoupled-weight-decay Adam.
struct AdamWConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

class AdamW {
 public:
  AdamW(std::vector<ParamPtr> params, AdamWConfig config);

  void step(double lr);
  void zero_grad();

  const std::vector<ParamPtr>& params() const { return params_; }

 private:
  std::vector<ParamPtr> params_;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
  long t_ = 0;
  AdamWConfig config_;
};

}  // namespace idiom::nn

#endif  // IDIOM_NN_HPP_
