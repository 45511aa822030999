#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "travnet/blas.hpp"
#include "travnet/tensor.hpp"

namespace travnet::nn {

template <typename S>
struct NamedTensor {
  std::string name;
  Tensor<S>* value = nullptr;
  Tensor<S>* grad = nullptr;  // null for buffers (running statistics)
  bool is_param = true;
};

template <typename S>
void zero_grads(std::vector<NamedTensor<S>>& refs) {
  for (auto& r : refs)
    if (r.is_param && r.grad) r.grad->fill(S(0));
}

template <typename S>
std::uint64_t state_hash(const std::vector<NamedTensor<S>>& refs,
                         bool include_buffers = true) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& r : refs) {
    if (!r.is_param && !include_buffers) continue;
    h = content_hash(*r.value, h);
  }
  return h;
}

// ---------------------------------------------------------------------------
// im2col / col2im
//
// Geometry: src [N,C,H,W], kernel k, stride s, pad p, out (OH,OW).
// col layout [C*k*k, N*OH*OW]; the pair is adjoint (col2im scatter-adds).
// ---------------------------------------------------------------------------

inline int conv_out_extent(int in, int k, int s, int p) {
  return (in + 2 * p - k) / s + 1;
}

template <typename S>
void im2col(const Tensor<S>& src, int k, int s, int p, Tensor<S>& col) {
  const int n = src.dim(0), c = src.dim(1), h = src.dim(2), w = src.dim(3);
  const int oh = conv_out_extent(h, k, s, p), ow = conv_out_extent(w, k, s, p);
  const std::int64_t cols = static_cast<std::int64_t>(n) * oh * ow;
  if (col.dims() != std::vector<int>{c * k * k, static_cast<int>(cols)})
    col = Tensor<S>({c * k * k, static_cast<int>(cols)});
  S* out = col.data();
  const S* in = src.data();
  for (int ci = 0; ci < c; ++ci) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        S* row = out + (static_cast<std::int64_t>((ci * k + ky) * k + kx)) * cols;
        for (int ni = 0; ni < n; ++ni) {
          const S* plane = in + (static_cast<std::int64_t>(ni) * c + ci) * h * w;
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * s - p + ky;
            S* dst = row + (static_cast<std::int64_t>(ni) * oh + oy) * ow;
            if (iy < 0 || iy >= h) {
              for (int ox = 0; ox < ow; ++ox) dst[ox] = S(0);
              continue;
            }
            const S* src_row = plane + static_cast<std::int64_t>(iy) * w;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * s - p + kx;
              dst[ox] = (ix >= 0 && ix < w) ? src_row[ix] : S(0);
            }
          }
        }
      }
    }
  }
}

template <typename S>
void col2im(const Tensor<S>& col, int n, int c, int h, int w, int k, int s,
            int p, Tensor<S>& dst) {
  const int oh = conv_out_extent(h, k, s, p), ow = conv_out_extent(w, k, s, p);
  const std::int64_t cols = static_cast<std::int64_t>(n) * oh * ow;
  if (dst.dims() != std::vector<int>{n, c, h, w}) dst = Tensor<S>({n, c, h, w});
  dst.fill(S(0));
  S* out = dst.data();
  const S* in = col.data();
  for (int ci = 0; ci < c; ++ci) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const S* row = in + (static_cast<std::int64_t>((ci * k + ky) * k + kx)) * cols;
        for (int ni = 0; ni < n; ++ni) {
          S* plane = out + (static_cast<std::int64_t>(ni) * c + ci) * h * w;
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * s - p + ky;
            if (iy < 0 || iy >= h) continue;
            const S* src_row = row + (static_cast<std::int64_t>(ni) * oh + oy) * ow;
            S* dst_row = plane + static_cast<std::int64_t>(iy) * w;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * s - p + kx;
              if (ix >= 0 && ix < w) dst_row[ix] += src_row[ox];
            }
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Layer interface
// ---------------------------------------------------------------------------

template <typename S>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual Tensor<S> forward(const Tensor<S>& x, bool train) = 0;
  virtual Tensor<S> backward(const Tensor<S>& gout) = 0;
  virtual void collect(const std::string& prefix,
                       std::vector<NamedTensor<S>>& out) {
    (void)prefix;
    (void)out;
  }
};

// ---------------------------------------------------------------------------
// Linear: y = x * W^T + b, x [N,in], W [out,in]
// ---------------------------------------------------------------------------

template <typename S>
class Linear : public Layer<S> {
 public:
  Linear(int in_features, int out_features, Rng& rng, double init_std = 0.02)
      : in_(in_features), out_(out_features) {
    weight = Tensor<S>::randn({out_, in_}, rng, 0.0, init_std);
    bias = Tensor<S>({out_});
    grad_weight = Tensor<S>({out_, in_});
    grad_bias = Tensor<S>({out_});
  }

  Tensor<S> forward(const Tensor<S>& x, bool) override {
    if (x.rank() != 2 || x.dim(1) != in_)
      fail_contract("linear: expected [N," + std::to_string(in_) + "], got " +
                    x.shape_string());
    x_ = x;
    const int n = x.dim(0);
    Tensor<S> y({n, out_});
    gemm(false, true, n, out_, in_, S(1), x.data(), in_, weight.data(), in_,
         S(0), y.data(), out_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < out_; ++j) y[i * out_ + j] += bias[j];
    return y;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    const int n = x_.dim(0);
    gemm(true, false, out_, in_, n, S(1), gout.data(), out_, x_.data(), in_,
         S(1), grad_weight.data(), in_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < out_; ++j) grad_bias[j] += gout[i * out_ + j];
    Tensor<S> gin({n, in_});
    gemm(false, false, n, in_, out_, S(1), gout.data(), out_, weight.data(),
         in_, S(0), gin.data(), in_);
    return gin;
  }

  void collect(const std::string& prefix, std::vector<NamedTensor<S>>& out) override {
    out.push_back({prefix + ".weight", &weight, &grad_weight, true});
    out.push_back({prefix + ".bias", &bias, &grad_bias, true});
  }

  int in_features() const { return in_; }
  int out_features() const { return out_; }

  Tensor<S> weight, bias, grad_weight, grad_bias;

 private:
  int in_, out_;
  Tensor<S> x_;
};

// ---------------------------------------------------------------------------
// Conv2d: stride-s kxk convolution, weight [OC, C*k*k]
// ---------------------------------------------------------------------------

template <typename S>
class Conv2d : public Layer<S> {
 public:
  Conv2d(int in_c, int out_c, Rng& rng, int k = 4, int stride = 2, int pad = 1,
         double init_std = 0.02)
      : c_(in_c), oc_(out_c), k_(k), s_(stride), p_(pad) {
    weight = Tensor<S>::randn({oc_, c_ * k_ * k_}, rng, 0.0, init_std);
    bias = Tensor<S>({oc_});
    grad_weight = Tensor<S>({oc_, c_ * k_ * k_});
    grad_bias = Tensor<S>({oc_});
  }

  Tensor<S> forward(const Tensor<S>& x, bool) override {
    if (x.rank() != 4 || x.dim(1) != c_)
      fail_contract("conv2d: expected [N," + std::to_string(c_) +
                    ",H,W], got " + x.shape_string());
    x_ = x;
    const int n = x.dim(0), h = x.dim(2), w = x.dim(3);
    const int oh = conv_out_extent(h, k_, s_, p_);
    const int ow = conv_out_extent(w, k_, s_, p_);
    const std::int64_t cols = static_cast<std::int64_t>(n) * oh * ow;

    im2col(x, k_, s_, p_, col_);
    Tensor<S> ymat({oc_, static_cast<int>(cols)});
    gemm(false, false, oc_, static_cast<int>(cols), c_ * k_ * k_, S(1),
         weight.data(), c_ * k_ * k_, col_.data(), static_cast<int>(cols),
         S(0), ymat.data(), static_cast<int>(cols));

    Tensor<S> y({n, oc_, oh, ow});
    const std::int64_t plane = static_cast<std::int64_t>(oh) * ow;
    for (int ni = 0; ni < n; ++ni)
      for (int oc = 0; oc < oc_; ++oc) {
        const S* src = ymat.data() + oc * cols + ni * plane;
        S* dst = y.data() + (static_cast<std::int64_t>(ni) * oc_ + oc) * plane;
        const S b = bias[oc];
        for (std::int64_t i = 0; i < plane; ++i) dst[i] = src[i] + b;
      }
    return y;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    const int n = x_.dim(0), h = x_.dim(2), w = x_.dim(3);
    const int oh = gout.dim(2), ow = gout.dim(3);
    const std::int64_t cols = static_cast<std::int64_t>(n) * oh * ow;
    const std::int64_t plane = static_cast<std::int64_t>(oh) * ow;

    // gather gout into [OC, N*OH*OW]
    Tensor<S> gmat({oc_, static_cast<int>(cols)});
    for (int ni = 0; ni < n; ++ni)
      for (int oc = 0; oc < oc_; ++oc) {
        const S* src =
            gout.data() + (static_cast<std::int64_t>(ni) * oc_ + oc) * plane;
        S* dst = gmat.data() + oc * cols + ni * plane;
        for (std::int64_t i = 0; i < plane; ++i) dst[i] = src[i];
      }

    for (int oc = 0; oc < oc_; ++oc) {
      S acc = 0;
      const S* row = gmat.data() + oc * cols;
      for (std::int64_t i = 0; i < cols; ++i) acc += row[i];
      grad_bias[oc] += acc;
    }

    im2col(x_, k_, s_, p_, col_);  // rebuilt instead of cached: large buffer
    gemm(false, true, oc_, c_ * k_ * k_, static_cast<int>(cols), S(1),
         gmat.data(), static_cast<int>(cols), col_.data(),
         static_cast<int>(cols), S(1), grad_weight.data(), c_ * k_ * k_);

    Tensor<S> dcol({c_ * k_ * k_, static_cast<int>(cols)});
    gemm(true, false, c_ * k_ * k_, static_cast<int>(cols), oc_, S(1),
         weight.data(), c_ * k_ * k_, gmat.data(), static_cast<int>(cols),
         S(0), dcol.data(), static_cast<int>(cols));

    Tensor<S> gin;
    col2im(dcol, n, c_, h, w, k_, s_, p_, gin);
    return gin;
  }

  void collect(const std::string& prefix, std::vector<NamedTensor<S>>& out) override {
    out.push_back({prefix + ".weight", &weight, &grad_weight, true});
    out.push_back({prefix + ".bias", &bias, &grad_bias, true});
  }

  Tensor<S> weight, bias, grad_weight, grad_bias;

 private:
  int c_, oc_, k_, s_, p_;
  Tensor<S> x_, col_;
};

// ---------------------------------------------------------------------------
// ConvTranspose2d: the adjoint of Conv2d with the same (k, s, p). Weight is
// stored [C, OC*k*k] (input-channel major), out extent OH = (H-1)*s - 2p + k.
// ---------------------------------------------------------------------------

template <typename S>
class ConvTranspose2d : public Layer<S> {
 public:
  ConvTranspose2d(int in_c, int out_c, Rng& rng, int k = 4, int stride = 2,
                  int pad = 1, double init_std = 0.02)
      : c_(in_c), oc_(out_c), k_(k), s_(stride), p_(pad) {
    weight = Tensor<S>::randn({c_, oc_ * k_ * k_}, rng, 0.0, init_std);
    bias = Tensor<S>({oc_});
    grad_weight = Tensor<S>({c_, oc_ * k_ * k_});
    grad_bias = Tensor<S>({oc_});
  }

  Tensor<S> forward(const Tensor<S>& x, bool) override {
    if (x.rank() != 4 || x.dim(1) != c_)
      fail_contract("conv_transpose2d: expected [N," + std::to_string(c_) +
                    ",H,W], got " + x.shape_string());
    x_ = x;
    const int n = x.dim(0), h = x.dim(2), w = x.dim(3);
    const int oh = (h - 1) * s_ - 2 * p_ + k_;
    const int ow = (w - 1) * s_ - 2 * p_ + k_;
    const std::int64_t cols = static_cast<std::int64_t>(n) * h * w;
    const std::int64_t plane = static_cast<std::int64_t>(h) * w;

    // gather x into [C, N*H*W]
    Tensor<S> xmat({c_, static_cast<int>(cols)});
    for (int ni = 0; ni < n; ++ni)
      for (int ci = 0; ci < c_; ++ci) {
        const S* src =
            x.data() + (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
        S* dst = xmat.data() + ci * cols + ni * plane;
        for (std::int64_t i = 0; i < plane; ++i) dst[i] = src[i];
      }

    Tensor<S> tmp({oc_ * k_ * k_, static_cast<int>(cols)});
    gemm(true, false, oc_ * k_ * k_, static_cast<int>(cols), c_, S(1),
         weight.data(), oc_ * k_ * k_, xmat.data(), static_cast<int>(cols),
         S(0), tmp.data(), static_cast<int>(cols));

    Tensor<S> y;
    col2im(tmp, n, oc_, oh, ow, k_, s_, p_, y);
    S* yd = y.data();
    const std::int64_t oplane = static_cast<std::int64_t>(oh) * ow;
    for (int ni = 0; ni < n; ++ni)
      for (int oc = 0; oc < oc_; ++oc) {
        const S b = bias[oc];
        S* dst = yd + (static_cast<std::int64_t>(ni) * oc_ + oc) * oplane;
        for (std::int64_t i = 0; i < oplane; ++i) dst[i] += b;
      }
    return y;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    const int n = x_.dim(0), h = x_.dim(2), w = x_.dim(3);
    const std::int64_t cols = static_cast<std::int64_t>(n) * h * w;
    const std::int64_t plane = static_cast<std::int64_t>(h) * w;
    const std::int64_t oplane =
        static_cast<std::int64_t>(gout.dim(2)) * gout.dim(3);

    for (int oc = 0; oc < oc_; ++oc) {
      S acc = 0;
      for (int ni = 0; ni < n; ++ni) {
        const S* src =
            gout.data() + (static_cast<std::int64_t>(ni) * oc_ + oc) * oplane;
        for (std::int64_t i = 0; i < oplane; ++i) acc += src[i];
      }
      grad_bias[oc] += acc;
    }

    im2col(gout, k_, s_, p_, col_);  // [OC*k*k, N*H*W]

    // dW [C, OC*k*k] += xmat [C, NHW] * col^T
    Tensor<S> xmat({c_, static_cast<int>(cols)});
    for (int ni = 0; ni < n; ++ni)
      for (int ci = 0; ci < c_; ++ci) {
        const S* src =
            x_.data() + (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
        S* dst = xmat.data() + ci * cols + ni * plane;
        for (std::int64_t i = 0; i < plane; ++i) dst[i] = src[i];
      }
    gemm(false, true, c_, oc_ * k_ * k_, static_cast<int>(cols), S(1),
         xmat.data(), static_cast<int>(cols), col_.data(),
         static_cast<int>(cols), S(1), grad_weight.data(), oc_ * k_ * k_);

    // dx [C, NHW] = W * col, then scatter back to [N,C,H,W]
    Tensor<S> dxmat({c_, static_cast<int>(cols)});
    gemm(false, false, c_, static_cast<int>(cols), oc_ * k_ * k_, S(1),
         weight.data(), oc_ * k_ * k_, col_.data(), static_cast<int>(cols),
         S(0), dxmat.data(), static_cast<int>(cols));

    Tensor<S> gin({n, c_, h, w});
    for (int ni = 0; ni < n; ++ni)
      for (int ci = 0; ci < c_; ++ci) {
        const S* src = dxmat.data() + ci * cols + ni * plane;
        S* dst = gin.data() + (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
        for (std::int64_t i = 0; i < plane; ++i) dst[i] = src[i];
      }
    return gin;
  }

  void collect(const std::string& prefix, std::vector<NamedTensor<S>>& out) override {
    out.push_back({prefix + ".weight", &weight, &grad_weight, true});
    out.push_back({prefix + ".bias", &bias, &grad_bias, true});
  }

  Tensor<S> weight, bias, grad_weight, grad_bias;

 private:
  int c_, oc_, k_, s_, p_;
  Tensor<S> x_, col_;
};

// ---------------------------------------------------------------------------
// BatchNorm2d with running statistics (biased batch variance).
// ---------------------------------------------------------------------------

template <typename S>
class BatchNorm2d : public Layer<S> {
 public:
  explicit BatchNorm2d(int channels, Rng& rng, double momentum = 0.1,
                       double eps = 1e-5)
      : c_(channels), momentum_(momentum), eps_(eps) {
    gamma = Tensor<S>::randn({c_}, rng, 1.0, 0.02);
    beta = Tensor<S>({c_});
    grad_gamma = Tensor<S>({c_});
    grad_beta = Tensor<S>({c_});
    running_mean = Tensor<S>({c_});
    running_var = Tensor<S>({c_});
    running_var.fill(S(1));
  }

  Tensor<S> forward(const Tensor<S>& x, bool train) override {
    if (x.rank() != 4 || x.dim(1) != c_)
      fail_contract("batchnorm2d: expected [N," + std::to_string(c_) +
                    ",H,W], got " + x.shape_string());
    const int n = x.dim(0), h = x.dim(2), w = x.dim(3);
    const std::int64_t plane = static_cast<std::int64_t>(h) * w;
    const std::int64_t m = static_cast<std::int64_t>(n) * plane;
    train_mode_ = train;
    xhat_ = Tensor<S>(x.dims());
    inv_std_ = Tensor<S>({c_});
    Tensor<S> y(x.dims());

    for (int ci = 0; ci < c_; ++ci) {
      S mean, var;
      if (train) {
        S acc = 0;
        for (int ni = 0; ni < n; ++ni) {
          const S* p = x.data() + (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
          for (std::int64_t i = 0; i < plane; ++i) acc += p[i];
        }
        mean = acc / static_cast<S>(m);
        S vacc = 0;
        for (int ni = 0; ni < n; ++ni) {
          const S* p = x.data() + (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
          for (std::int64_t i = 0; i < plane; ++i) {
            const S d = p[i] - mean;
            vacc += d * d;
          }
        }
        var = vacc / static_cast<S>(m);
        running_mean[ci] = static_cast<S>((1.0 - momentum_) * running_mean[ci] +
                                          momentum_ * mean);
        running_var[ci] =
            static_cast<S>((1.0 - momentum_) * running_var[ci] + momentum_ * var);
      } else {
        mean = running_mean[ci];
        var = running_var[ci];
      }
      const S istd = S(1) / std::sqrt(var + static_cast<S>(eps_));
      inv_std_[ci] = istd;
      const S g = gamma[ci], b = beta[ci];
      for (int ni = 0; ni < n; ++ni) {
        const std::int64_t off = (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
        const S* px = x.data() + off;
        S* ph = xhat_.data() + off;
        S* py = y.data() + off;
        for (std::int64_t i = 0; i < plane; ++i) {
          const S xh = (px[i] - mean) * istd;
          ph[i] = xh;
          py[i] = g * xh + b;
        }
      }
    }
    return y;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    const int n = gout.dim(0), h = gout.dim(2), w = gout.dim(3);
    const std::int64_t plane = static_cast<std::int64_t>(h) * w;
    const std::int64_t m = static_cast<std::int64_t>(n) * plane;
    Tensor<S> gin(gout.dims());

    for (int ci = 0; ci < c_; ++ci) {
      S sum_dy = 0, sum_dy_xhat = 0;
      for (int ni = 0; ni < n; ++ni) {
        const std::int64_t off = (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
        const S* pd = gout.data() + off;
        const S* ph = xhat_.data() + off;
        for (std::int64_t i = 0; i < plane; ++i) {
          sum_dy += pd[i];
          sum_dy_xhat += pd[i] * ph[i];
        }
      }
      grad_gamma[ci] += sum_dy_xhat;
      grad_beta[ci] += sum_dy;

      const S g_istd = gamma[ci] * inv_std_[ci];
      if (train_mode_) {
        const S mean_dy = sum_dy / static_cast<S>(m);
        const S mean_dy_xhat = sum_dy_xhat / static_cast<S>(m);
        for (int ni = 0; ni < n; ++ni) {
          const std::int64_t off = (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
          const S* pd = gout.data() + off;
          const S* ph = xhat_.data() + off;
          S* pg = gin.data() + off;
          for (std::int64_t i = 0; i < plane; ++i)
            pg[i] = g_istd * (pd[i] - mean_dy - ph[i] * mean_dy_xhat);
        }
      } else {
        for (int ni = 0; ni < n; ++ni) {
          const std::int64_t off = (static_cast<std::int64_t>(ni) * c_ + ci) * plane;
          const S* pd = gout.data() + off;
          S* pg = gin.data() + off;
          for (std::int64_t i = 0; i < plane; ++i) pg[i] = g_istd * pd[i];
        }
      }
    }
    return gin;
  }

  void collect(const std::string& prefix, std::vector<NamedTensor<S>>& out) override {
    out.push_back({prefix + ".gamma", &gamma, &grad_gamma, true});
    out.push_back({prefix + ".beta", &beta, &grad_beta, true});
    out.push_back({prefix + ".running_mean", &running_mean, nullptr, false});
    out.push_back({prefix + ".running_var", &running_var, nullptr, false});
  }

  Tensor<S> gamma, beta, grad_gamma, grad_beta;
  Tensor<S> running_mean, running_var;

 private:
  int c_;
  double momentum_, eps_;
  bool train_mode_ = true;
  Tensor<S> xhat_, inv_std_;
};

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

template <typename S>
class LeakyReLU : public Layer<S> {
 public:
  explicit LeakyReLU(double slope = 0.2) : slope_(static_cast<S>(slope)) {}

  Tensor<S> forward(const Tensor<S>& x, bool) override {
    x_ = x;
    Tensor<S> y(x.dims());
    for (std::int64_t i = 0; i < x.size(); ++i)
      y[i] = x[i] > S(0) ? x[i] : slope_ * x[i];
    return y;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    Tensor<S> gin(gout.dims());
    for (std::int64_t i = 0; i < gout.size(); ++i)
      gin[i] = x_[i] > S(0) ? gout[i] : slope_ * gout[i];
    return gin;
  }

 private:
  S slope_;
  Tensor<S> x_;
};

template <typename S>
class ReLU : public Layer<S> {
 public:
  Tensor<S> forward(const Tensor<S>& x, bool) override {
    x_ = x;
    Tensor<S> y(x.dims());
    for (std::int64_t i = 0; i < x.size(); ++i) y[i] = x[i] > S(0) ? x[i] : S(0);
    return y;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    Tensor<S> gin(gout.dims());
    for (std::int64_t i = 0; i < gout.size(); ++i)
      gin[i] = x_[i] > S(0) ? gout[i] : S(0);
    return gin;
  }

 private:
  Tensor<S> x_;
};

template <typename S>
class Tanh : public Layer<S> {
 public:
  Tensor<S> forward(const Tensor<S>& x, bool) override {
    y_ = Tensor<S>(x.dims());
    for (std::int64_t i = 0; i < x.size(); ++i) y_[i] = std::tanh(x[i]);
    return y_;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    Tensor<S> gin(gout.dims());
    for (std::int64_t i = 0; i < gout.size(); ++i)
      gin[i] = gout[i] * (S(1) - y_[i] * y_[i]);
    return gin;
  }

 private:
  Tensor<S> y_;
};

template <typename S>
class Sigmoid : public Layer<S> {
 public:
  Tensor<S> forward(const Tensor<S>& x, bool) override {
    y_ = Tensor<S>(x.dims());
    for (std::int64_t i = 0; i < x.size(); ++i)
      y_[i] = S(1) / (S(1) + std::exp(-x[i]));
    return y_;
  }

  Tensor<S> backward(const Tensor<S>& gout) override {
    Tensor<S> gin(gout.dims());
    for (std::int64_t i = 0; i < gout.size(); ++i)
      gin[i] = gout[i] * y_[i] * (S(1) - y_[i]);
    return gin;
  }

 private:
  Tensor<S> y_;
};

}  // namespace travnet::nn
