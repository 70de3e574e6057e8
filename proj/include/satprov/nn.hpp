#ifndef SATPROV_NN_HPP_
#define SATPROV_NN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "satprov/rng.hpp"

// Minimal dense-network plumbing with hand-written backward rules: named
// parameter blocks, masked categoricals, and an adaptive-moment optimizer.
// Everything is double precision so analytic gradients can be checked
// against central finite differences.

namespace satprov {

struct ParamBlock {
  std::string name;
  int rows = 0, cols = 0;  // cols == 1 for vectors/scalars
  std::vector<double> w;
  std::vector<double> g;

  std::size_t size() const { return w.size(); }
  void zero_grad() { std::fill(g.begin(), g.end(), 0.0); }
};

ParamBlock make_param(const std::string& name, int rows, int cols);
// Gaussian init scaled by 1/sqrt(fan_in); biases start at zero elsewhere.
void init_gaussian(ParamBlock& p, Rng& rng, double scale);

class Adam {
 public:
  Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
       double eps = 1e-8);

  // Applies one update over the blocks (must be the same set, in the same
  // order, every call).
  void step(std::vector<ParamBlock*>& blocks);

  double learning_rate() const { return lr_; }
  void set_learning_rate(double lr) { lr_ = lr; }
  long step_count() const { return t_; }

  // Serialized moment state, in block order.
  std::vector<std::vector<double>>& moments_m() { return m_; }
  std::vector<std::vector<double>>& moments_v() { return v_; }
  const std::vector<std::vector<double>>& moments_m() const { return m_; }
  const std::vector<std::vector<double>>& moments_v() const { return v_; }
  void set_step_count(long t) { t_ = t; }

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

// Masked categorical over logits; masked-out entries get probability 0.
struct MaskedCategorical {
  std::vector<double> probs;      // full length, zeros where masked
  std::vector<double> log_probs;  // -inf where masked (never selected)
  double entropy = 0.0;
  int num_valid = 0;
};

MaskedCategorical masked_softmax(const std::vector<double>& logits,
                                 const std::vector<std::uint8_t>& mask);
int sample_categorical(const MaskedCategorical& dist, Rng& rng);
int argmax_categorical(const MaskedCategorical& dist);

// d(entropy)/d(logit_i) = -p_i (log p_i + H); zero on masked entries.
std::vector<double> entropy_grad(const MaskedCategorical& dist);

}  // namespace satprov

#endif  // SATPROV_NN_HPP_
