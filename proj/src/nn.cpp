#include "satprov/nn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace satprov {

ParamBlock make_param(const std::string& name, int rows, int cols) {
  ParamBlock p;
  p.name = name;
  p.rows = rows;
  p.cols = cols;
  p.w.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  p.g.assign(p.w.size(), 0.0);
  return p;
}

void init_gaussian(ParamBlock& p, Rng& rng, double scale) {
  for (double& w : p.w) w = scale * normal(rng);
}

Adam::Adam(double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void Adam::step(std::vector<ParamBlock*>& blocks) {
  if (m_.empty()) {
    m_.resize(blocks.size());
    v_.resize(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      m_[b].assign(blocks[b]->size(), 0.0);
      v_[b].assign(blocks[b]->size(), 0.0);
    }
  }
  t_ += 1;
  double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    ParamBlock& p = *blocks[b];
    for (std::size_t i = 0; i < p.size(); ++i) {
      double g = p.g[i];
      m_[b][i] = beta1_ * m_[b][i] + (1.0 - beta1_) * g;
      v_[b][i] = beta2_ * v_[b][i] + (1.0 - beta2_) * g * g;
      p.w[i] -= lr_ * (m_[b][i] / bc1) / (std::sqrt(v_[b][i] / bc2) + eps_);
    }
  }
}

MaskedCategorical masked_softmax(const std::vector<double>& logits,
                                 const std::vector<std::uint8_t>& mask) {
  if (logits.size() != mask.size()) {
    throw std::invalid_argument("mask size does not match logits");
  }
  MaskedCategorical dist;
  dist.probs.assign(logits.size(), 0.0);
  dist.log_probs.assign(logits.size(),
                        -std::numeric_limits<double>::infinity());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (mask[i]) {
      mx = std::max(mx, logits[i]);
      dist.num_valid += 1;
    }
  }
  if (dist.num_valid == 0) {
    throw std::invalid_argument("no valid entries under mask");
  }
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (mask[i]) z += std::exp(logits[i] - mx);
  }
  double log_z = std::log(z);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!mask[i]) continue;
    double lp = logits[i] - mx - log_z;
    dist.log_probs[i] = lp;
    dist.probs[i] = std::exp(lp);
    dist.entropy -= dist.probs[i] * lp;
  }
  return dist;
}

int sample_categorical(const MaskedCategorical& dist, Rng& rng) {
  double u = uniform01(rng);
  double acc = 0.0;
  int last_valid = 0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    if (dist.probs[i] <= 0.0) continue;
    last_valid = static_cast<int>(i);
    acc += dist.probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return last_valid;
}

int argmax_categorical(const MaskedCategorical& dist) {
  int best = 0;
  double best_p = -1.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    if (dist.probs[i] > best_p) {
      best_p = dist.probs[i];
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<double> entropy_grad(const MaskedCategorical& dist) {
  std::vector<double> g(dist.probs.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (dist.probs[i] > 0.0) {
      g[i] = -dist.probs[i] * (dist.log_probs[i] + dist.entropy);
    }
  }
  return g;
}

}  // namespace satprov
