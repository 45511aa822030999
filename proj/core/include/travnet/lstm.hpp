#pragma once

#include <cmath>
#include <vector>

#include "travnet/layers.hpp"
#include "travnet/tensor.hpp"

namespace travnet::nn {

// Gated LSTM cell. Gate pre-activations are packed [i, f, g, o] along the
// first axis of the weights: Wx [4H, D], Wh [4H, H], b [4H].
//
// step() advances one timestep and (optionally) records the activations
// needed by backward_seq(), which runs truncated BPTT over everything
// recorded since the last reset_tape().
template <typename S>
class LstmCell {
 public:
  struct State {
    Tensor<S> h, c;  // [N, H]
  };

  LstmCell(int input_dim, int hidden_dim, Rng& rng, double init_std = 0.08)
      : d_(input_dim), h_(hidden_dim) {
    wx = Tensor<S>::randn({4 * h_, d_}, rng, 0.0, init_std);
    wh = Tensor<S>::randn({4 * h_, h_}, rng, 0.0, init_std);
    b = Tensor<S>({4 * h_});
    // forget-gate bias at 1 keeps early memory open
    for (int i = 0; i < h_; ++i) b[h_ + i] = S(1);
    grad_wx = Tensor<S>({4 * h_, d_});
    grad_wh = Tensor<S>({4 * h_, h_});
    grad_b = Tensor<S>({4 * h_});
  }

  State initial_state(int n) const {
    return {Tensor<S>({n, h_}), Tensor<S>({n, h_})};
  }

  Tensor<S> step(const Tensor<S>& x, State& state, bool record) {
    if (x.rank() != 2 || x.dim(1) != d_)
      fail_contract("lstm: expected [N," + std::to_string(d_) + "], got " +
                    x.shape_string());
    const int n = x.dim(0);
    Tensor<S> gates({n, 4 * h_});
    gemm(false, true, n, 4 * h_, d_, S(1), x.data(), d_, wx.data(), d_, S(0),
         gates.data(), 4 * h_);
    gemm(false, true, n, 4 * h_, h_, S(1), state.h.data(), h_, wh.data(), h_,
         S(1), gates.data(), 4 * h_);

    Step rec;
    rec.x = x;
    rec.h_prev = state.h;
    rec.c_prev = state.c;
    rec.i = Tensor<S>({n, h_});
    rec.f = Tensor<S>({n, h_});
    rec.g = Tensor<S>({n, h_});
    rec.o = Tensor<S>({n, h_});
    rec.c = Tensor<S>({n, h_});
    rec.tanh_c = Tensor<S>({n, h_});

    Tensor<S> h_new({n, h_});
    for (int ni = 0; ni < n; ++ni) {
      const S* gr = gates.data() + static_cast<std::int64_t>(ni) * 4 * h_;
      for (int j = 0; j < h_; ++j) {
        const S iv = sigmoid(gates[ni * 4 * h_ + j] + b[j]);
        const S fv = sigmoid(gr[h_ + j] + b[h_ + j]);
        const S gv = std::tanh(gr[2 * h_ + j] + b[2 * h_ + j]);
        const S ov = sigmoid(gr[3 * h_ + j] + b[3 * h_ + j]);
        const S cv = fv * state.c[ni * h_ + j] + iv * gv;
        const S tc = std::tanh(cv);
        rec.i[ni * h_ + j] = iv;
        rec.f[ni * h_ + j] = fv;
        rec.g[ni * h_ + j] = gv;
        rec.o[ni * h_ + j] = ov;
        rec.c[ni * h_ + j] = cv;
        rec.tanh_c[ni * h_ + j] = tc;
        h_new[ni * h_ + j] = ov * tc;
      }
    }
    state.c = rec.c;
    state.h = h_new;
    if (record) tape_.push_back(std::move(rec));
    return h_new;
  }

  // BPTT over the recorded tape. dh_per_step[t] matches the h returned by the
  // t-th recorded step. Returns input gradients per step; parameter gradients
  // accumulate into grad_wx / grad_wh / grad_b.
  std::vector<Tensor<S>> backward_seq(const std::vector<Tensor<S>>& dh_per_step) {
    const int t_steps = static_cast<int>(tape_.size());
    if (static_cast<int>(dh_per_step.size()) != t_steps)
      fail_contract("lstm backward: gradient count does not match tape");
    std::vector<Tensor<S>> dx(static_cast<std::size_t>(t_steps));
    if (t_steps == 0) return dx;
    const int n = tape_[0].x.dim(0);

    Tensor<S> dh_next({n, h_}), dc_next({n, h_});
    for (int t = t_steps - 1; t >= 0; --t) {
      const Step& rc = tape_[static_cast<std::size_t>(t)];
      Tensor<S> dgates({n, 4 * h_});
      for (int ni = 0; ni < n; ++ni) {
        for (int j = 0; j < h_; ++j) {
          const std::int64_t ix = static_cast<std::int64_t>(ni) * h_ + j;
          const S dh = dh_per_step[static_cast<std::size_t>(t)][ix] + dh_next[ix];
          const S tc = rc.tanh_c[ix];
          const S dc = dh * rc.o[ix] * (S(1) - tc * tc) + dc_next[ix];
          const S di = dc * rc.g[ix] * rc.i[ix] * (S(1) - rc.i[ix]);
          const S df = dc * rc.c_prev[ix] * rc.f[ix] * (S(1) - rc.f[ix]);
          const S dg = dc * rc.i[ix] * (S(1) - rc.g[ix] * rc.g[ix]);
          const S do_ = dh * tc * rc.o[ix] * (S(1) - rc.o[ix]);
          dgates[ni * 4 * h_ + j] = di;
          dgates[ni * 4 * h_ + h_ + j] = df;
          dgates[ni * 4 * h_ + 2 * h_ + j] = dg;
          dgates[ni * 4 * h_ + 3 * h_ + j] = do_;
          dc_next[ix] = dc * rc.f[ix];
        }
      }
      // parameter grads
      gemm(true, false, 4 * h_, d_, n, S(1), dgates.data(), 4 * h_,
           rc.x.data(), d_, S(1), grad_wx.data(), d_);
      gemm(true, false, 4 * h_, h_, n, S(1), dgates.data(), 4 * h_,
           rc.h_prev.data(), h_, S(1), grad_wh.data(), h_);
      for (int ni = 0; ni < n; ++ni)
        for (int j = 0; j < 4 * h_; ++j) grad_b[j] += dgates[ni * 4 * h_ + j];
      // input and recurrent grads
      Tensor<S> dxt({n, d_});
      gemm(false, false, n, d_, 4 * h_, S(1), dgates.data(), 4 * h_, wx.data(),
           d_, S(0), dxt.data(), d_);
      dx[static_cast<std::size_t>(t)] = std::move(dxt);
      gemm(false, false, n, h_, 4 * h_, S(1), dgates.data(), 4 * h_, wh.data(),
           h_, S(0), dh_next.data(), h_);
    }
    return dx;
  }

  void reset_tape() { tape_.clear(); }
  int tape_length() const { return static_cast<int>(tape_.size()); }

  void collect(const std::string& prefix, std::vector<NamedTensor<S>>& out) {
    out.push_back({prefix + ".wx", &wx, &grad_wx, true});
    out.push_back({prefix + ".wh", &wh, &grad_wh, true});
    out.push_back({prefix + ".bias", &b, &grad_b, true});
  }

  int input_dim() const { return d_; }
  int hidden_dim() const { return h_; }

  Tensor<S> wx, wh, b, grad_wx, grad_wh, grad_b;

 private:
  static S sigmoid(S v) { return S(1) / (S(1) + std::exp(-v)); }

  struct Step {
    Tensor<S> x, h_prev, c_prev, i, f, g, o, c, tanh_c;
  };

  int d_, h_;
  std::vector<Step> tape_;
};

}  // namespace travnet::nn
