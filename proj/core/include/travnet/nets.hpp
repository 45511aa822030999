#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "travnet/layers.hpp"
#include "travnet/net_config.hpp"

namespace travnet::nn {

// ---------------------------------------------------------------------------
// Generator: z [N, z_dim] -> image [N, C, S, S] in [-1, 1].
// fc -> reshape -> BN -> ReLU -> (ConvT -> BN -> ReLU) x (blocks-1)
//    -> ConvT -> tanh
// ---------------------------------------------------------------------------

template <typename S>
class Generator {
 public:
  Generator(const NetConfig& cfg, Rng rng) : cfg_(cfg) {
    cfg_.validate();
    const int hs = cfg_.head_spatial();
    fc_ = std::make_unique<Linear<S>>(cfg_.z_dim, cfg_.top_width() * hs * hs, rng);
    int ch = cfg_.top_width();
    body_.push_back(std::make_unique<BatchNorm2d<S>>(ch, rng));
    body_.push_back(std::make_unique<ReLU<S>>());
    for (int b = 0; b + 1 < cfg_.blocks; ++b) {
      const int next = ch / 2;
      body_.push_back(std::make_unique<ConvTranspose2d<S>>(ch, next, rng));
      body_.push_back(std::make_unique<BatchNorm2d<S>>(next, rng));
      body_.push_back(std::make_unique<ReLU<S>>());
      ch = next;
    }
    body_.push_back(std::make_unique<ConvTranspose2d<S>>(ch, cfg_.channels, rng));
    body_.push_back(std::make_unique<Tanh<S>>());
  }

  Tensor<S> forward(const Tensor<S>& z, bool train) {
    if (z.rank() != 2 || z.dim(1) != cfg_.z_dim)
      fail_contract("generator: latent code must be [N," +
                    std::to_string(cfg_.z_dim) + "], got " + z.shape_string());
    const int n = z.dim(0);
    const int hs = cfg_.head_spatial();
    Tensor<S> x = fc_->forward(z, train);
    x.reshape({n, cfg_.top_width(), hs, hs});
    for (auto& l : body_) x = l->forward(x, train);
    return x;
  }

  // Returns d(loss)/dz given d(loss)/d(image).
  Tensor<S> backward(const Tensor<S>& gimage) {
    Tensor<S> g = gimage;
    for (auto it = body_.rbegin(); it != body_.rend(); ++it) g = (*it)->backward(g);
    const int n = g.dim(0);
    const int hs = cfg_.head_spatial();
    g.reshape({n, cfg_.top_width() * hs * hs});
    return fc_->backward(g);
  }

  void collect(std::vector<NamedTensor<S>>& out, const std::string& prefix = "gen") {
    fc_->collect(prefix + ".fc", out);
    for (std::size_t i = 0; i < body_.size(); ++i)
      body_[i]->collect(prefix + ".body" + std::to_string(i), out);
  }

  std::vector<NamedTensor<S>> state() {
    std::vector<NamedTensor<S>> out;
    collect(out);
    return out;
  }

  const NetConfig& config() const { return cfg_; }

 private:
  NetConfig cfg_;
  std::unique_ptr<Linear<S>> fc_;
  std::vector<std::unique_ptr<Layer<S>>> body_;
};

// ---------------------------------------------------------------------------
// Discriminator: image -> (score logit, feature vector f).
// Conv -> LeakyReLU -> (Conv -> BN -> LeakyReLU) x (blocks-1) -> flatten = f
//      -> Linear -> logit. f is the post-activation last conv layer.
// ---------------------------------------------------------------------------

template <typename S>
struct DiscriminatorOut {
  Tensor<S> logit;     // [N, 1]
  Tensor<S> features;  // [N, feature_dim]
};

template <typename S>
class Discriminator {
 public:
  Discriminator(const NetConfig& cfg, Rng rng) : cfg_(cfg) {
    cfg_.validate();
    int ch = cfg_.base_width;
    body_.push_back(std::make_unique<Conv2d<S>>(cfg_.channels, ch, rng));
    body_.push_back(std::make_unique<LeakyReLU<S>>(0.2));
    for (int b = 0; b + 1 < cfg_.blocks; ++b) {
      const int next = ch * 2;
      body_.push_back(std::make_unique<Conv2d<S>>(ch, next, rng));
      body_.push_back(std::make_unique<BatchNorm2d<S>>(next, rng));
      body_.push_back(std::make_unique<LeakyReLU<S>>(0.2));
      ch = next;
    }
    fc_ = std::make_unique<Linear<S>>(cfg_.feature_dim(), 1, rng);
  }

  DiscriminatorOut<S> forward(const Tensor<S>& image, bool train) {
    check_image(image);
    const int n = image.dim(0);
    Tensor<S> x = image;
    for (auto& l : body_) x = l->forward(x, train);
    x.reshape({n, cfg_.feature_dim()});
    DiscriminatorOut<S> out;
    out.features = x;
    out.logit = fc_->forward(x, train);
    return out;
  }

  // Backward through both heads: dlogit [N,1] and/or dfeatures [N,fdim]
  // (either may be empty). Returns d(loss)/d(image).
  Tensor<S> backward(const Tensor<S>& dlogit, const Tensor<S>& dfeatures) {
    Tensor<S> g;
    if (!dlogit.empty()) g = fc_->backward(dlogit);
    if (!dfeatures.empty()) {
      if (g.empty())
        g = dfeatures;
      else
        g.add_scaled(dfeatures, S(1));
    }
    if (g.empty()) fail_contract("discriminator backward: no gradient given");
    const int n = g.dim(0);
    const int hs = cfg_.head_spatial();
    g.reshape({n, cfg_.top_width(), hs, hs});
    for (auto it = body_.rbegin(); it != body_.rend(); ++it) g = (*it)->backward(g);
    return g;
  }

  void collect(std::vector<NamedTensor<S>>& out, const std::string& prefix = "dis") {
    for (std::size_t i = 0; i < body_.size(); ++i)
      body_[i]->collect(prefix + ".body" + std::to_string(i), out);
    fc_->collect(prefix + ".fc", out);
  }

  std::vector<NamedTensor<S>> state() {
    std::vector<NamedTensor<S>> out;
    collect(out);
    return out;
  }

  const NetConfig& config() const { return cfg_; }

  void check_image(const Tensor<S>& image) const {
    if (image.rank() != 4 || image.dim(1) != cfg_.channels ||
        image.dim(2) != cfg_.image_size || image.dim(3) != cfg_.image_size)
      fail_contract("discriminator: expected [N," +
                    std::to_string(cfg_.channels) + "," +
                    std::to_string(cfg_.image_size) + "," +
                    std::to_string(cfg_.image_size) + "], got " +
                    image.shape_string());
  }

 private:
  NetConfig cfg_;
  std::vector<std::unique_ptr<Layer<S>>> body_;
  std::unique_ptr<Linear<S>> fc_;
};

// Real-vs-fake probability from a logit, clamped to the open interval (0,1).
template <typename S>
S score_from_logit(S logit) {
  const double p = 1.0 / (1.0 + std::exp(-static_cast<double>(logit)));
  const double lo = 1e-12, hi = 1.0 - 1e-12;
  return static_cast<S>(p < lo ? lo : (p > hi ? hi : p));
}

// ---------------------------------------------------------------------------
// InvGenerator: image -> latent code [N, z_dim]; the generator ladder in
// reverse order ending in a fully connected layer.
// ---------------------------------------------------------------------------

template <typename S>
class InvGenerator {
 public:
  InvGenerator(const NetConfig& cfg, Rng rng) : cfg_(cfg) {
    cfg_.validate();
    int ch = cfg_.base_width;
    body_.push_back(std::make_unique<Conv2d<S>>(cfg_.channels, ch, rng));
    body_.push_back(std::make_unique<LeakyReLU<S>>(0.2));
    for (int b = 0; b + 1 < cfg_.blocks; ++b) {
      const int next = ch * 2;
      body_.push_back(std::make_unique<Conv2d<S>>(ch, next, rng));
      body_.push_back(std::make_unique<BatchNorm2d<S>>(next, rng));
      body_.push_back(std::make_unique<LeakyReLU<S>>(0.2));
      ch = next;
    }
    fc_ = std::make_unique<Linear<S>>(cfg_.feature_dim(), cfg_.z_dim, rng);
  }

  Tensor<S> forward(const Tensor<S>& image, bool train) {
    if (image.rank() != 4 || image.dim(1) != cfg_.channels ||
        image.dim(2) != cfg_.image_size || image.dim(3) != cfg_.image_size)
      fail_contract("inverse generator: expected [N," +
                    std::to_string(cfg_.channels) + "," +
                    std::to_string(cfg_.image_size) + "," +
                    std::to_string(cfg_.image_size) + "], got " +
                    image.shape_string());
    const int n = image.dim(0);
    Tensor<S> x = image;
    for (auto& l : body_) x = l->forward(x, train);
    x.reshape({n, cfg_.feature_dim()});
    return fc_->forward(x, train);
  }

  Tensor<S> backward(const Tensor<S>& dz) {
    Tensor<S> g = fc_->backward(dz);
    const int n = g.dim(0);
    const int hs = cfg_.head_spatial();
    g.reshape({n, cfg_.top_width(), hs, hs});
    for (auto it = body_.rbegin(); it != body_.rend(); ++it) g = (*it)->backward(g);
    return g;
  }

  void collect(std::vector<NamedTensor<S>>& out,
               const std::string& prefix = "invgen") {
    for (std::size_t i = 0; i < body_.size(); ++i)
      body_[i]->collect(prefix + ".body" + std::to_string(i), out);
    fc_->collect(prefix + ".fc", out);
  }

  std::vector<NamedTensor<S>> state() {
    std::vector<NamedTensor<S>> out;
    collect(out);
    return out;
  }

  const NetConfig& config() const { return cfg_; }

 private:
  NetConfig cfg_;
  std::vector<std::unique_ptr<Layer<S>>> body_;
  std::unique_ptr<Linear<S>> fc_;
};

}  // namespace travnet::nn
