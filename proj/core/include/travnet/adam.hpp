#pragma once

#include <cmath>
#include <vector>

#include "travnet/layers.hpp"

namespace travnet::nn {

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.5;  // adversarial-training default
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adaptive-moment optimizer over a set of parameter references.
template <typename S>
class Adam {
 public:
  Adam(std::vector<NamedTensor<S>> params, AdamConfig cfg = {})
      : params_(std::move(params)), cfg_(cfg) {
    for (auto& p : params_) {
      if (!p.is_param) continue;
      m_.emplace_back(p.value->dims());
      v_.emplace_back(p.value->dims());
      slots_.push_back(&p);
    }
  }

  void step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
    const double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      Tensor<S>& w = *slots_[i]->value;
      Tensor<S>& g = *slots_[i]->grad;
      Tensor<S>& m = m_[i];
      Tensor<S>& v = v_[i];
      for (std::int64_t j = 0; j < w.size(); ++j) {
        const double gj = static_cast<double>(g[j]);
        const double mj = cfg_.beta1 * static_cast<double>(m[j]) + (1.0 - cfg_.beta1) * gj;
        const double vj = cfg_.beta2 * static_cast<double>(v[j]) + (1.0 - cfg_.beta2) * gj * gj;
        m[j] = static_cast<S>(mj);
        v[j] = static_cast<S>(vj);
        const double upd = cfg_.lr * (mj / bc1) / (std::sqrt(vj / bc2) + cfg_.eps);
        w[j] -= static_cast<S>(upd);
      }
    }
  }

  void zero_grads() {
    for (auto* p : slots_) p->grad->fill(S(0));
  }

  const AdamConfig& config() const { return cfg_; }

 private:
  std::vector<NamedTensor<S>> params_;
  std::vector<NamedTensor<S>*> slots_;
  std::vector<Tensor<S>> m_, v_;
  AdamConfig cfg_;
  long t_ = 0;
};

}  // namespace travnet::nn
