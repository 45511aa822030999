#pragma once

#include <cmath>
#include <optional>

#include "travnet/nets.hpp"

namespace travnet::nn {

// ---------------------------------------------------------------------------
// Binary cross-entropy on logits: mean_i [ softplus(x_i) - t * x_i ].
// Numerically stable for large |x|. dlogits, when given, receives the
// gradient (sigmoid(x) - t) / N.
// ---------------------------------------------------------------------------
template <typename S>
S bce_with_logits(const Tensor<S>& logits, S target, Tensor<S>* dlogits) {
  const std::int64_t n = logits.size();
  S loss = 0;
  if (dlogits && dlogits->dims() != logits.dims()) *dlogits = Tensor<S>(logits.dims());
  for (std::int64_t i = 0; i < n; ++i) {
    const S x = logits[i];
    const S sp = std::max(x, S(0)) + std::log1p(std::exp(-std::abs(x)));
    loss += sp - target * x;
    if (dlogits) {
      const S sig = S(1) / (S(1) + std::exp(-x));
      (*dlogits)[i] = (sig - target) / static_cast<S>(n);
    }
  }
  return loss / static_cast<S>(n);
}

// ---------------------------------------------------------------------------
// Adversarial losses (non-saturating convention).
// ---------------------------------------------------------------------------

template <typename S>
struct DisLossValue {
  S total = 0, real_term = 0, fake_term = 0;
  double real_acc = 0, fake_acc = 0;  // fraction scored on the correct side of 0.5
};

// Discriminator objective on a real batch and an already-generated fake batch
// (the fake batch is a constant here; the generator is not part of this
// graph). backward accumulates discriminator parameter gradients.
template <typename S>
DisLossValue<S> discriminator_loss(Discriminator<S>& dis, const Tensor<S>& real,
                                   const Tensor<S>& fake, bool train_mode,
                                   bool backward) {
  DisLossValue<S> out;
  Tensor<S> dlogit;

  auto half = [&](const Tensor<S>& batch, S target, S& term, double& acc) {
    DiscriminatorOut<S> d = dis.forward(batch, train_mode);
    term = bce_with_logits(d.logit, target, backward ? &dlogit : nullptr);
    int correct = 0;
    for (std::int64_t i = 0; i < d.logit.size(); ++i) {
      const bool said_real = d.logit[i] > S(0);
      if (said_real == (target > S(0.5))) ++correct;
    }
    acc = static_cast<double>(correct) / static_cast<double>(d.logit.size());
    if (backward) {
      dlogit.scale(S(0.5));  // the two halves average into one objective
      dis.backward(dlogit, Tensor<S>());
    }
  };

  half(real, S(1), out.real_term, out.real_acc);
  half(fake, S(0), out.fake_term, out.fake_acc);
  out.total = (out.real_term + out.fake_term) / S(2);
  return out;
}

// Generator objective: z -> Gen -> Dis -> BCE(logit, 1). backward accumulates
// generator gradients (and, incidentally, discriminator gradients, which the
// caller zeroes before the next discriminator step). fake_out, when given,
// receives the generated batch.
template <typename S>
S generator_loss(Generator<S>& gen, Discriminator<S>& dis, const Tensor<S>& z,
                 bool train_mode, bool backward, Tensor<S>* fake_out = nullptr) {
  Tensor<S> fake = gen.forward(z, train_mode);
  DiscriminatorOut<S> d = dis.forward(fake, train_mode);
  Tensor<S> dlogit;
  const S loss = bce_with_logits(d.logit, S(1), backward ? &dlogit : nullptr);
  if (backward) {
    Tensor<S> dimage = dis.backward(dlogit, Tensor<S>());
    gen.backward(dimage);
  }
  if (fake_out) *fake_out = std::move(fake);
  return loss;
}

// ---------------------------------------------------------------------------
// Latent inversion loss:
//   L(z) = (1 - lambda) * R(I, Gen(z)) + lambda * mean|f(I) - f(Gen(z))|
// where R is the mean absolute (or mean squared) pixel difference. Both terms
// are means, so they share scale across configurations.
// ---------------------------------------------------------------------------

enum class ResidualNorm { l1, l2 };

template <typename S>
struct InversionLossValue {
  S total = 0, residual = 0, feature = 0;
};

template <typename S>
struct InversionLossOpts {
  S lambda = S(0.1);
  ResidualNorm norm = ResidualNorm::l1;
  bool gen_train = false;     // true only for the from-scratch autoencoder mode
  bool invgen_train = false;  // true while the inverse generator itself trains
  bool backward = false;
};

// Core form on an explicit latent code. f_image must hold f(I) when
// lambda > 0 (it is a constant of the objective). If dz is non-null the
// gradient d(total)/dz is returned there; parameter gradients accumulate in
// whichever nets the backward pass traverses.
template <typename S>
InversionLossValue<S> inversion_loss_z(Generator<S>& gen, Discriminator<S>& dis,
                                       const Tensor<S>& image,
                                       const Tensor<S>& f_image,
                                       const Tensor<S>& z,
                                       const InversionLossOpts<S>& opts,
                                       Tensor<S>* dz,
                                       Tensor<S>* recon_out = nullptr) {
  InversionLossValue<S> out;
  const bool use_feature = opts.lambda > S(0);
  Tensor<S> recon = gen.forward(z, opts.gen_train);
  image.check_same_shape(recon);

  const std::int64_t numel = image.size();
  Tensor<S> dres;  // d(residual term)/d(recon), unscaled by lambda weights
  const bool bw = opts.backward || dz != nullptr;
  if (bw) dres = Tensor<S>(recon.dims());
  for (std::int64_t i = 0; i < numel; ++i) {
    const S d = image[i] - recon[i];
    if (opts.norm == ResidualNorm::l1) {
      out.residual += std::abs(d);
      if (bw) dres[i] = (d > S(0) ? S(-1) : (d < S(0) ? S(1) : S(0))) / static_cast<S>(numel);
    } else {
      out.residual += d * d;
      if (bw) dres[i] = S(-2) * d / static_cast<S>(numel);
    }
  }
  out.residual /= static_cast<S>(numel);

  Tensor<S> dimage_total;
  if (use_feature) {
    if (f_image.empty())
      fail_contract("inversion loss: lambda > 0 requires precomputed f(image)");
    DiscriminatorOut<S> dout = dis.forward(recon, false);
    f_image.check_same_shape(dout.features);
    const std::int64_t fn = dout.features.size();
    Tensor<S> dfeat;
    if (bw) dfeat = Tensor<S>(dout.features.dims());
    for (std::int64_t i = 0; i < fn; ++i) {
      const S d = f_image[i] - dout.features[i];
      out.feature += std::abs(d);
      if (bw)
        dfeat[i] = opts.lambda *
                   (d > S(0) ? S(-1) : (d < S(0) ? S(1) : S(0))) / static_cast<S>(fn);
    }
    out.feature /= static_cast<S>(fn);
    if (bw) dimage_total = dis.backward(Tensor<S>(), dfeat);
  }

  out.total = (S(1) - opts.lambda) * out.residual + opts.lambda * out.feature;

  if (bw) {
    if (dimage_total.empty()) {
      dimage_total = std::move(dres);
      dimage_total.scale(S(1) - opts.lambda);
    } else {
      dimage_total.add_scaled(dres, S(1) - opts.lambda);
    }
    Tensor<S> dz_local = gen.backward(dimage_total);
    if (dz) *dz = std::move(dz_local);
  }
  if (recon_out) *recon_out = std::move(recon);
  return out;
}

// Composite form through the inverse generator: z = InvGen(I). backward
// accumulates InvGen gradients (and generator/discriminator gradients along
// the path; freezing is enforced by the optimizer's parameter set).
template <typename S>
InversionLossValue<S> inversion_loss(InvGenerator<S>& invgen, Generator<S>& gen,
                                     Discriminator<S>& dis,
                                     const Tensor<S>& image,
                                     const Tensor<S>& f_image,
                                     const InversionLossOpts<S>& opts,
                                     Tensor<S>* recon_out = nullptr) {
  Tensor<S> z = invgen.forward(image, opts.invgen_train);
  Tensor<S> dz;
  InversionLossValue<S> out = inversion_loss_z(
      gen, dis, image, f_image, z, opts, opts.backward ? &dz : nullptr, recon_out);
  if (opts.backward) invgen.backward(dz);
  return out;
}

// ---------------------------------------------------------------------------
// Mean squared error for classification heads: mean_i (y_i - p_i)^2.
// ---------------------------------------------------------------------------
template <typename S>
S mse_loss(const Tensor<S>& pred, const Tensor<S>& target, Tensor<S>* dpred) {
  pred.check_same_shape(target);
  const std::int64_t n = pred.size();
  if (dpred && dpred->dims() != pred.dims()) *dpred = Tensor<S>(pred.dims());
  S loss = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const S d = pred[i] - target[i];
    loss += d * d;
    if (dpred) (*dpred)[i] = S(2) * d / static_cast<S>(n);
  }
  return loss / static_cast<S>(n);
}

// ---------------------------------------------------------------------------
// Temporal objective over a prediction sequence:
//   L = lambda * sum_t |y_t - p_t| + (1 - lambda) * sum_t |p_{t+1} - p_t|
// Sums run over the sequence (and average over the batch dimension when the
// tensors are [T] stacks of [B,1] predictions flattened to columns).
// ---------------------------------------------------------------------------
template <typename S>
S temporal_sequence_loss(const std::vector<Tensor<S>>& preds,
                         const std::vector<Tensor<S>>& targets, S lambda,
                         std::vector<Tensor<S>>* dpreds) {
  if (preds.size() != targets.size())
    fail_contract("temporal loss: prediction / label length mismatch");
  const int t_len = static_cast<int>(preds.size());
  if (t_len == 0) return S(0);
  const std::int64_t batch = preds[0].size();
  if (dpreds) {
    dpreds->resize(preds.size());
    for (int t = 0; t < t_len; ++t) (*dpreds)[static_cast<std::size_t>(t)] = Tensor<S>(preds[static_cast<std::size_t>(t)].dims());
  }
  auto sgn = [](S v) { return v > S(0) ? S(1) : (v < S(0) ? S(-1) : S(0)); };

  S pred_term = 0, smooth_term = 0;
  for (int t = 0; t < t_len; ++t) {
    const Tensor<S>& p = preds[static_cast<std::size_t>(t)];
    const Tensor<S>& y = targets[static_cast<std::size_t>(t)];
    p.check_same_shape(y);
    for (std::int64_t b = 0; b < batch; ++b) {
      pred_term += std::abs(y[b] - p[b]) / static_cast<S>(batch);
      if (dpreds)
        (*dpreds)[static_cast<std::size_t>(t)][b] +=
            lambda * sgn(p[b] - y[b]) / static_cast<S>(batch);
    }
    if (t + 1 < t_len) {
      const Tensor<S>& pn = preds[static_cast<std::size_t>(t + 1)];
      for (std::int64_t b = 0; b < batch; ++b) {
        smooth_term += std::abs(pn[b] - p[b]) / static_cast<S>(batch);
        if (dpreds) {
          const S s = sgn(pn[b] - p[b]);
          (*dpreds)[static_cast<std::size_t>(t + 1)][b] +=
              (S(1) - lambda) * s / static_cast<S>(batch);
          (*dpreds)[static_cast<std::size_t>(t)][b] -=
              (S(1) - lambda) * s / static_cast<S>(batch);
        }
      }
    }
  }
  return lambda * pred_term + (S(1) - lambda) * smooth_term;
}

}  // namespace travnet::nn
