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

#include "idiom/nn.hpp"

#include <cmath>
#include <stdexcept>

#include "idiom/errors.hpp"

namespace idiom::nn {

Value Tape::make(Mat value, std::function<void()> backward_fn) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->grad = Mat::Zero(node->value.rows(), node->value.cols());
  node->backward = std::move(backward_fn);
  nodes_.push_back(node);
  return node;
}

Value Tape::input(Mat v) { return make(std::move(v), nullptr); }

Value Tape::param(const ParamPtr& p) {
  Value node = make(p->value, nullptr);
  bindings_.emplace_back(node, p);
  return node;
}

Value Tape::matmul(const Value& a, const Value& b) {
  if (a->value.cols() != b->value.rows()) {
    throw std::invalid_argument("matmul shape mismatch");
  }
  Value out = make(a->value * b->value, nullptr);
  Node* ap = a.get();
  Node* bp = b.get();
  Node* op = out.get();
  out->backward = [ap, bp, op] {
    ap->grad.noalias() += op->grad * bp->value.transpose();
    bp->grad.noalias() += ap->value.transpose() * op->grad;
  };
  return out;
}

Value Tape::transpose(const Value& a) {
  Value out = make(a->value.transpose(), nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op] { ap->grad += op->grad.transpose(); };
  return out;
}

Value Tape::add(const Value& a, const Value& b) {
  if (a->value.rows() != b->value.rows() ||
      a->value.cols() != b->value.cols()) {
    throw std::invalid_argument("add shape mismatch");
  }
  Value out = make(a->value + b->value, nullptr);
  Node* ap = a.get();
  Node* bp = b.get();
  Node* op = out.get();
  out->backward = [ap, bp, op] {
    ap->grad += op->grad;
    bp->grad += op->grad;
  };
  return out;
}

Value Tape::add_row_broadcast(const Value& a, const Value& row) {
  if (row->value.rows() != 1 || row->value.cols() != a->value.cols()) {
    throw std::invalid_argument("add_row_broadcast shape mismatch");
  }
  Mat v = a->value;
  v.rowwise() += Eigen::RowVectorXd(row->value.row(0));
  Value out = make(std::move(v), nullptr);
  Node* ap = a.get();
  Node* rp = row.get();
  Node* op = out.get();
  out->backward = [ap, rp, op] {
    ap->grad += op->grad;
    rp->grad.row(0) += op->grad.colwise().sum();
  };
  return out;
}

Value Tape::mul_scalar(const Value& a, double s) {
  Value out = make(a->value * s, nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op, s] { ap->grad += op->grad * s; };
  return out;
}

Value Tape::rows(const Value& a, std::vector<int> idx) {
  Mat v(static_cast<Eigen::Index>(idx.size()), a->value.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= a->value.rows()) {
      throw std::out_of_range("rows: index out of range");
    }
    v.row(static_cast<Eigen::Index>(i)) = a->value.row(idx[i]);
  }
  Value out = make(std::move(v), nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op, idx = std::move(idx)] {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      ap->grad.row(idx[i]) += op->grad.row(static_cast<Eigen::Index>(i));
    }
  };
  return out;
}

Value Tape::mean_rows(const Value& a, std::vector<int> idx) {
  if (idx.empty()) {
    throw EmptyMweSpanError("mean_rows over an empty index set");
  }
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(a->value.cols());
  for (int i : idx) {
    if (i < 0 || i >= a->value.rows()) {
      throw std::out_of_range("mean_rows: index out of range");
    }
    acc += a->value.row(i);
  }
  acc /= static_cast<double>(idx.size());
  Value out = make(acc, nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op, idx = std::move(idx)] {
    const double scale = 1.0 / static_cast<double>(idx.size());
    for (int i : idx) ap->grad.row(i) += op->grad.row(0) * scale;
  };
  return out;
}

Value Tape::cols(const Value& a, int start, int len) {
  if (start < 0 || len < 0 || start + len > a->value.cols()) {
    throw std::out_of_range("cols: slice out of range");
  }
  Value out = make(a->value.middleCols(start, len), nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op, start, len] {
    ap->grad.middleCols(start, len) += op->grad;
  };
  return out;
}

Value Tape::concat_cols(const std::vector<Value>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: empty");
  const Eigen::Index rows = parts[0]->value.rows();
  Eigen::Index total = 0;
  for (const auto& p : parts) {
    if (p->value.rows() != rows) {
      throw std::invalid_argument("concat_cols: row mismatch");
    }
    total += p->value.cols();
  }
  Mat v(rows, total);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    v.middleCols(off, p->value.cols()) = p->value;
    off += p->value.cols();
  }
  Value out = make(std::move(v), nullptr);
  std::vector<Node*> raw;
  raw.reserve(parts.size());
  for (const auto& p : parts) raw.push_back(p.get());
  Node* op = out.get();
  out->backward = [raw, op] {
    Eigen::Index off = 0;
    for (Node* p : raw) {
      p->grad += op->grad.middleCols(off, p->value.cols());
      off += p->value.cols();
    }
  };
  return out;
}

Value Tape::layer_norm_rows(const Value& a, const Value& gain,
                            const Value& bias, double eps) {
  const Eigen::Index n = a->value.rows();
  const Eigen::Index d = a->value.cols();
  if (gain->value.cols() != d || bias->value.cols() != d) {
    throw std::invalid_argument("layer_norm shape mismatch");
  }
  Mat xhat(n, d);
  Eigen::VectorXd inv_std(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double mean = a->value.row(r).mean();
    const Eigen::RowVectorXd centered =
        a->value.row(r).array() - mean;
    const double var = centered.squaredNorm() / static_cast<double>(d);
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = centered * inv_std(r);
  }
  Mat v(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    v.row(r) = xhat.row(r).cwiseProduct(gain->value.row(0)) +
               bias->value.row(0);
  }
  Value out = make(std::move(v), nullptr);
  Node* ap = a.get();
  Node* gp = gain.get();
  Node* bp = bias.get();
  Node* op = out.get();
  out->backward = [ap, gp, bp, op, xhat = std::move(xhat),
                   inv_std = std::move(inv_std)] {
    const Eigen::Index n = op->grad.rows();
    const Eigen::Index d = op->grad.cols();
    for (Eigen::Index r = 0; r < n; ++r) {
      const Eigen::RowVectorXd u =
          op->grad.row(r).cwiseProduct(gp->value.row(0));
      const double mean_u = u.mean();
      const double mean_ux = u.cwiseProduct(xhat.row(r)).mean();
      ap->grad.row(r) +=
          (u.array() - mean_u - xhat.row(r).array() * mean_ux).matrix() *
          inv_std(r);
      gp->grad.row(0) += op->grad.row(r).cwiseProduct(xhat.row(r));
      bp->grad.row(0) += op->grad.row(r);
    }
    (void)d;
  };
  return out;
}

Eigen::RowVectorXd softmax_row(const Eigen::RowVectorXd& z) {
  const double zmax = z.maxCoeff();
  Eigen::RowVectorXd e = (z.array() - zmax).exp();
  return e / e.sum();
}

Value Tape::softmax_rows(const Value& a) {
  Mat v(a->value.rows(), a->value.cols());
  for (Eigen::Index r = 0; r < a->value.rows(); ++r) {
    v.row(r) = softmax_row(a->value.row(r));
  }
  Value out = make(std::move(v), nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op] {
    for (Eigen::Index r = 0; r < op->grad.rows(); ++r) {
      const double dot = op->grad.row(r).dot(op->value.row(r));
      ap->grad.row(r) += op->value.row(r).cwiseProduct(
          (op->grad.row(r).array() - dot).matrix());
    }
  };
  return out;
}

namespace {
inline double gauss_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }
inline double gauss_pdf(double x) {
  static const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * M_PI);
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}
}  // namespace

Value Tape::gelu(const Value& a) {
  Mat v = a->value.unaryExpr([](double x) { return x * gauss_cdf(x); });
  Value out = make(std::move(v), nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op] {
    ap->grad += op->grad.cwiseProduct(ap->value.unaryExpr([](double x) {
      return gauss_cdf(x) + x * gauss_pdf(x);
    }));
  };
  return out;
}

Value Tape::dropout(const Value& a, double rate, std::mt19937_64& rng,
                    bool train) {
  if (!train || rate <= 0.0) return a;
  if (rate >= 1.0) throw std::invalid_argument("dropout rate must be < 1");
  std::bernoulli_distribution keep(1.0 - rate);
  Mat mask(a->value.rows(), a->value.cols());
  const double scale = 1.0 / (1.0 - rate);
  for (Eigen::Index r = 0; r < mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      mask(r, c) = keep(rng) ? scale : 0.0;
    }
  }
  Value out = make(a->value.cwiseProduct(mask), nullptr);
  Node* ap = a.get();
  Node* op = out.get();
  out->backward = [ap, op, mask = std::move(mask)] {
    ap->grad += op->grad.cwiseProduct(mask);
  };
  return out;
}

Value Tape::cross_entropy_logits(const Value& logits, int label) {
  if (logits->value.rows() != 1) {
    throw std::invalid_argument("cross_entropy_logits expects a row vector");
  }
  if (label < 0 || label >= logits->value.cols()) {
    throw std::invalid_argument("label out of range");
  }
  const Eigen::RowVectorXd z = logits->value.row(0);
  const double zmax = z.maxCoeff();
  const double lse = zmax + std::log((z.array() - zmax).exp().sum());
  Mat v(1, 1);
  v(0, 0) = lse - z(label);
  Eigen::RowVectorXd probs = softmax_row(z);
  Value out = make(std::move(v), nullptr);
  Node* lp = logits.get();
  Node* op = out.get();
  out->backward = [lp, op, probs = std::move(probs), label] {
    Eigen::RowVectorXd d = probs;
    d(label) -= 1.0;
    lp->grad.row(0) += op->grad(0, 0) * d;
  };
  return out;
}

void Tape::backward(const Value& root) {
  if (root->value.rows() != 1 || root->value.cols() != 1) {
    throw std::invalid_argument("backward root must be a scalar");
  }
  root->grad(0, 0) = 1.0;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    if ((*it)->backward) (*it)->backward();
  }
  for (auto& [node, p] : bindings_) {
    p->grad += node->grad;
  }
}

Mat randn(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
          double stddev) {
  std::normal_distribution<double> dist(0.0, stddev);
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = dist(rng);
    }
  }
  return m;
}

bool all_finite(const Mat& m) { return m.allFinite(); }

AdamW::AdamW(std::vector<ParamPtr> params, AdamWConfig config)
    : params_(std::move(params)), config_(config) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const auto& p : params_) {
    m_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
  }
}

void AdamW::zero_grad() {
  for (auto& p : params_) p->zero_grad();
}

void AdamW::step(double lr) {
  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, t_);
  const double bc2 = 1.0 - std::pow(config_.beta2, t_);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Parameter& p = *params_[i];
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * p.grad;
    v_[i] = config_.beta2 * v_[i] +
            (1.0 - config_.beta2) * p.grad.cwiseProduct(p.grad);
    const Mat m_hat = m_[i] / bc1;
    const Mat v_hat = v_[i] / bc2;
    p.value -= lr * (m_hat.array() / (v_hat.array().sqrt() + config_.eps))
                        .matrix();
    if (p.weight_decay && config_.weight_decay > 0.0) {
      p.value -= lr * config_.weight_decay * p.value;
    }
  }
}

}  // namespace idiom::nn
