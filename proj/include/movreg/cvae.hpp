#pragma once

#include <cstring>
#include <fstream>
#include <numeric>
#include <span>
#include <utility>

#include "movreg/geometry.hpp"
#include "movreg/rng.hpp"

namespace movreg {

struct TrainConfig {
  int epochs = 500;
  int batch_size = 8;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  int latent_dim = 2;
  std::vector<int> hidden = {64, 32};
  double kl_weight = 1.0;
  std::uint64_t rng_seed = 1;

  enum class ReconLoss { bce, mse };
  ReconLoss recon_loss = ReconLoss::bce;

  void validate() const {
    if (epochs < 1 || batch_size < 1 || latent_dim < 1) throw Error("TrainConfig: counts must be positive");
    if (!(learning_rate > 0) || !(adam_beta1 > 0) || !(adam_beta2 > 0) || !(adam_eps > 0) || !(kl_weight >= 0))
      throw Error("TrainConfig: rates must be positive");
    for (int h : hidden)
      if (h < 1) throw Error("TrainConfig: hidden widths must be positive");
  }
};

struct DenseLayer {
  int in = 0;
  int out = 0;
  std::vector<double> w;  // row-major [out][in]
  std::vector<double> b;
};

// Dense C-VAE. The conditioning scalar is appended once to the encoder input
// and once to the latent vector; encoder emits mu and log-variance, hidden
// layers use tanh, output layers are linear (decoder logits pass through a
// sigmoid).
struct CvaeModel {
  TrainConfig config;
  int raster_width = 0;
  int raster_height = 0;
  AffineTransform transform;
  std::vector<DenseLayer> encoder;  // D+1 -> hidden... -> 2*latent
  std::vector<DenseLayer> decoder;  // latent+1 -> reversed hidden... -> D

  int input_dim() const { return raster_width * raster_height; }
};

struct LatentSample {
  std::vector<double> mu, logvar, z, epsilon;
};

struct LossTerms {
  double recon = 0.0;
  double kl = 0.0;
  double total = 0.0;
};

struct TrainSample {
  std::vector<double> x;  // flattened mask, values in {0, 1}
  double y = 0.0;         // normalized timestamp
};

namespace detail {

constexpr double kProbEps = 1e-7;

struct ForwardCache {
  std::vector<std::vector<double>> inputs;  // input vector of each layer
  std::vector<std::vector<double>> pre;     // pre-activation of each layer
};

inline std::vector<double> forward_mlp(const std::vector<DenseLayer>& layers, std::vector<double> x,
                                       ForwardCache* cache, const char* what) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    if (static_cast<int>(x.size()) != layer.in)
      throw Error(std::string(what) + ": shape mismatch at layer " + std::to_string(l));
    std::vector<double> z(layer.out);
    for (int o = 0; o < layer.out; ++o) {
      double acc = layer.b[o];
      const double* row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) acc += row[i] * x[i];
      if (!std::isfinite(acc))
        throw Error(std::string(what) + ": non-finite activation at layer " + std::to_string(l));
      z[o] = acc;
    }
    if (cache) {
      cache->inputs.push_back(std::move(x));
      cache->pre.push_back(z);
    }
    if (l + 1 < layers.size())
      for (auto& v : z) v = std::tanh(v);
    x = std::move(z);
  }
  return x;
}

inline std::vector<double> with_condition(std::span<const double> v, double y) {
  std::vector<double> out(v.begin(), v.end());
  out.push_back(y);
  return out;
}

}  // namespace detail

inline DenseLayer make_layer(int in, int out, Rng& rng) {
  DenseLayer layer;
  layer.in = in;
  layer.out = out;
  layer.w.resize(static_cast<std::size_t>(in) * out);
  layer.b.assign(out, 0.0);
  const double limit = std::sqrt(6.0 / (in + out));  // Glorot uniform
  for (auto& w : layer.w) w = rng.uniform(-limit, limit);
  return layer;
}

inline CvaeModel make_model(const TrainConfig& config, int width, int height,
                            const AffineTransform& transform, Rng& rng) {
  config.validate();
  if (width < 2 || height < 2) throw Error("make_model: raster dims must be >= 2");
  CvaeModel model;
  model.config = config;
  model.raster_width = width;
  model.raster_height = height;
  model.transform = transform;

  const int d = width * height;
  int prev = d + 1;
  for (int hdim : config.hidden) {
    model.encoder.push_back(make_layer(prev, hdim, rng));
    prev = hdim;
  }
  model.encoder.push_back(make_layer(prev, 2 * config.latent_dim, rng));

  prev = config.latent_dim + 1;
  for (auto it = config.hidden.rbegin(); it != config.hidden.rend(); ++it) {
    model.decoder.push_back(make_layer(prev, *it, rng));
    prev = *it;
  }
  model.decoder.push_back(make_layer(prev, d, rng));
  return model;
}

inline std::pair<std::vector<double>, std::vector<double>> encode(const CvaeModel& m,
                                                                  std::span<const double> x,
                                                                  double y) {
  if (static_cast<int>(x.size()) != m.input_dim()) throw Error("encode: input size mismatch");
  if (!(y >= 0.0 && y <= 1.0)) throw Error("encode: condition must be in [0, 1]");
  auto out = detail::forward_mlp(m.encoder, detail::with_condition(x, y), nullptr, "encode");
  const int d = m.config.latent_dim;
  return {std::vector<double>(out.begin(), out.begin() + d),
          std::vector<double>(out.begin() + d, out.end())};
}

// z = mu + exp(logvar/2) * eps, eps ~ N(0, I)
inline LatentSample reparameterize(std::span<const double> mu, std::span<const double> logvar,
                                   Rng& rng) {
  if (mu.size() != logvar.size()) throw Error("reparameterize: size mismatch");
  LatentSample s;
  s.mu.assign(mu.begin(), mu.end());
  s.logvar.assign(logvar.begin(), logvar.end());
  s.epsilon.resize(mu.size());
  s.z.resize(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    s.epsilon[j] = rng.normal();
    s.z[j] = mu[j] + std::exp(0.5 * logvar[j]) * s.epsilon[j];
  }
  return s;
}

inline std::vector<double> decode(const CvaeModel& m, std::span<const double> z, double y) {
  if (static_cast<int>(z.size()) != m.config.latent_dim) throw Error("decode: latent size mismatch");
  if (!(y >= 0.0 && y <= 1.0)) throw Error("decode: condition must be in [0, 1]");
  auto logits = detail::forward_mlp(m.decoder, detail::with_condition(z, y), nullptr, "decode");
  for (auto& v : logits) v = 1.0 / (1.0 + std::exp(-v));
  return logits;
}

// recon summed over pixels, analytic Gaussian KL against N(0, I)
inline LossTerms cvae_loss(std::span<const double> x, std::span<const double> probs,
                           std::span<const double> mu, std::span<const double> logvar, double beta,
                           TrainConfig::ReconLoss kind = TrainConfig::ReconLoss::bce) {
  if (x.size() != probs.size()) throw Error("cvae_loss: size mismatch");
  LossTerms t;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = std::clamp(probs[i], detail::kProbEps, 1.0 - detail::kProbEps);
    if (kind == TrainConfig::ReconLoss::bce)
      t.recon += -(x[i] * std::log(p) + (1.0 - x[i]) * std::log(1.0 - p));
    else
      t.recon += (p - x[i]) * (p - x[i]);
  }
  for (std::size_t j = 0; j < mu.size(); ++j)
    t.kl += -0.5 * (1.0 + logvar[j] - mu[j] * mu[j] - std::exp(logvar[j]));
  t.total = t.recon + beta * t.kl;
  return t;
}

struct Gradients {
  std::vector<DenseLayer> encoder, decoder;  // w and b hold gradient values
};

namespace detail {

inline std::vector<DenseLayer> zero_like(const std::vector<DenseLayer>& layers) {
  std::vector<DenseLayer> out;
  out.reserve(layers.size());
  for (const auto& l : layers) {
    DenseLayer g;
    g.in = l.in;
    g.out = l.out;
    g.w.assign(l.w.size(), 0.0);
    g.b.assign(l.b.size(), 0.0);
    out.push_back(std::move(g));
  }
  return out;
}

// Backpropagates delta through an MLP, accumulating into grads. Returns the
// delta at the network input.
inline std::vector<double> backprop_mlp(const std::vector<DenseLayer>& layers,
                                        const ForwardCache& cache, std::vector<double> delta,
                                        std::vector<DenseLayer>& grads) {
  for (std::size_t l = layers.size(); l-- > 0;) {
    const DenseLayer& layer = layers[l];
    const auto& input = cache.inputs[l];
    auto& g = grads[l];
    for (int o = 0; o < layer.out; ++o) {
      g.b[o] += delta[o];
      double* grow = g.w.data() + static_cast<std::size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) grow[i] += delta[o] * input[i];
    }
    std::vector<double> prev(layer.in, 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double* row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) prev[i] += row[i] * delta[o];
    }
    if (l > 0) {
      // input of layer l was tanh(pre of layer l-1)
      const auto& pre = cache.pre[l - 1];
      for (int i = 0; i < layer.in; ++i) {
        const double th = std::tanh(pre[i]);
        prev[i] *= 1.0 - th * th;
      }
    }
    delta = std::move(prev);
  }
  return delta;
}

}  // namespace detail

// Exact analytic gradients of the batch-mean total loss, with the
// reparameterization noise held fixed per sample.
inline Gradients backward(const CvaeModel& m, std::span<const TrainSample> batch,
                          std::span<const std::vector<double>> epsilons, double beta,
                          LossTerms* batch_loss = nullptr) {
  if (batch.empty()) throw Error("backward: empty batch");
  if (epsilons.size() != batch.size()) throw Error("backward: one epsilon vector per sample required");

  Gradients grads;
  grads.encoder = detail::zero_like(m.encoder);
  grads.decoder = detail::zero_like(m.decoder);
  LossTerms total;

  const int d = m.config.latent_dim;
  for (std::size_t s = 0; s < batch.size(); ++s) {
    const TrainSample& sample = batch[s];
    if (static_cast<int>(epsilons[s].size()) != d) throw Error("backward: epsilon size mismatch");

    detail::ForwardCache enc_cache;
    auto enc_out = detail::forward_mlp(m.encoder, detail::with_condition(sample.x, sample.y),
                                       &enc_cache, "encode");
    std::span<const double> mu(enc_out.data(), d);
    std::span<const double> logvar(enc_out.data() + d, d);

    std::vector<double> z(d);
    for (int j = 0; j < d; ++j) z[j] = mu[j] + std::exp(0.5 * logvar[j]) * epsilons[s][j];

    detail::ForwardCache dec_cache;
    auto logits = detail::forward_mlp(m.decoder, detail::with_condition(z, sample.y), &dec_cache,
                                      "decode");
    std::vector<double> probs(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) probs[i] = 1.0 / (1.0 + std::exp(-logits[i]));

    const LossTerms lt = cvae_loss(sample.x, probs, mu, logvar, beta, m.config.recon_loss);
    total.recon += lt.recon;
    total.kl += lt.kl;
    total.total += lt.total;

    // d recon / d logit; zero where the probability clamp is active
    std::vector<double> dlogit(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const double p = probs[i];
      if (p < detail::kProbEps || p > 1.0 - detail::kProbEps) {
        dlogit[i] = 0.0;
      } else if (m.config.recon_loss == TrainConfig::ReconLoss::bce) {
        dlogit[i] = p - sample.x[i];
      } else {
        dlogit[i] = 2.0 * (p - sample.x[i]) * p * (1.0 - p);
      }
    }

    auto dec_in_delta = detail::backprop_mlp(m.decoder, dec_cache, std::move(dlogit), grads.decoder);

    std::vector<double> enc_delta(2 * d);
    for (int j = 0; j < d; ++j) {
      const double dz = dec_in_delta[j];  // condition slot carries no parameter gradient upstream
      enc_delta[j] = dz + beta * mu[j];
      enc_delta[d + j] =
          dz * epsilons[s][j] * 0.5 * std::exp(0.5 * logvar[j]) + beta * 0.5 * (std::exp(logvar[j]) - 1.0);
    }
    detail::backprop_mlp(m.encoder, enc_cache, std::move(enc_delta), grads.encoder);
  }

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (auto* side : {&grads.encoder, &grads.decoder})
    for (auto& layer : *side) {
      for (auto& w : layer.w) w *= inv_n;
      for (auto& b : layer.b) b *= inv_n;
    }
  for (auto* side : {&grads.encoder, &grads.decoder})
    for (const auto& layer : *side)
      for (double w : layer.w)
        if (!std::isfinite(w)) throw Error("backward: non-finite gradient");

  if (batch_loss) {
    batch_loss->recon = total.recon * inv_n;
    batch_loss->kl = total.kl * inv_n;
    batch_loss->total = total.total * inv_n;
  }
  return grads;
}

namespace detail {

struct AdamState {
  Gradients m, v;
  long t = 0;

  explicit AdamState(const CvaeModel& model) {
    m.encoder = zero_like(model.encoder);
    m.decoder = zero_like(model.decoder);
    v.encoder = zero_like(model.encoder);
    v.decoder = zero_like(model.decoder);
  }

  void step(CvaeModel& model, const Gradients& g, const TrainConfig& c) {
    ++t;
    const double bc1 = 1.0 - std::pow(c.adam_beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(c.adam_beta2, static_cast<double>(t));
    auto update = [&](std::vector<double>& p, std::vector<double>& mm, std::vector<double>& vv,
                      const std::vector<double>& gg) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        mm[i] = c.adam_beta1 * mm[i] + (1.0 - c.adam_beta1) * gg[i];
        vv[i] = c.adam_beta2 * vv[i] + (1.0 - c.adam_beta2) * gg[i] * gg[i];
        p[i] -= c.learning_rate * (mm[i] / bc1) / (std::sqrt(vv[i] / bc2) + c.adam_eps);
      }
    };
    for (std::size_t l = 0; l < model.encoder.size(); ++l) {
      update(model.encoder[l].w, m.encoder[l].w, v.encoder[l].w, g.encoder[l].w);
      update(model.encoder[l].b, m.encoder[l].b, v.encoder[l].b, g.encoder[l].b);
    }
    for (std::size_t l = 0; l < model.decoder.size(); ++l) {
      update(model.decoder[l].w, m.decoder[l].w, v.decoder[l].w, g.decoder[l].w);
      update(model.decoder[l].b, m.decoder[l].b, v.decoder[l].b, g.decoder[l].b);
    }
  }
};

}  // namespace detail

struct EpochLoss {
  double recon = 0, kl = 0, total = 0;
};

struct TrainResult {
  CvaeModel model;
  std::vector<EpochLoss> trace;  // one entry per epoch, means over samples
};

// Raised when the loss or any intermediate value stops being finite; carries
// the per-epoch trace recorded up to the abort.
class TrainDivergence : public Error {
 public:
  TrainDivergence(const std::string& message, std::vector<EpochLoss> trace)
      : Error(message), trace(std::move(trace)) {}

  std::vector<EpochLoss> trace;
};

// Deterministic given the seed: dataset is canonicalized by sorting on the
// conditioning value, and every random draw (init, shuffling, noise) comes
// from one sequentially consumed generator.
inline TrainResult train(std::vector<TrainSample> dataset, const TrainConfig& config, int width,
                         int height, const AffineTransform& transform) {
  config.validate();
  if (dataset.size() < 2) throw Error("train: need at least 2 samples");
  const int dim = width * height;
  for (const auto& s : dataset)
    if (static_cast<int>(s.x.size()) != dim) throw Error("train: sample dimension mismatch");

  std::stable_sort(dataset.begin(), dataset.end(),
                   [](const TrainSample& a, const TrainSample& b) { return a.y < b.y; });

  Rng rng(config.rng_seed);
  CvaeModel model = make_model(config, width, height, transform, rng);
  detail::AdamState adam(model);

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result;
  const std::size_t n = dataset.size();
  const std::size_t bs = static_cast<std::size_t>(config.batch_size);
  std::vector<TrainSample> batch;
  std::vector<std::vector<double>> epsilons;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    EpochLoss epoch_loss;
    for (std::size_t start = 0; start < n; start += bs) {
      const std::size_t end = std::min(start + bs, n);
      batch.clear();
      epsilons.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(dataset[order[i]]);
        std::vector<double> eps(config.latent_dim);
        for (auto& e : eps) e = rng.normal();
        epsilons.push_back(std::move(eps));
      }
      LossTerms batch_loss;
      try {
        Gradients g = backward(model, batch, epsilons, config.kl_weight, &batch_loss);
        adam.step(model, g, config);
      } catch (const Error& e) {
        throw TrainDivergence("train: diverged at epoch " + std::to_string(epoch + 1) + " (" +
                                  e.what() + ")",
                              std::move(result.trace));
      }
      const double bn = static_cast<double>(end - start);
      epoch_loss.recon += batch_loss.recon * bn;
      epoch_loss.kl += batch_loss.kl * bn;
      epoch_loss.total += batch_loss.total * bn;
    }
    epoch_loss.recon /= static_cast<double>(n);
    epoch_loss.kl /= static_cast<double>(n);
    epoch_loss.total /= static_cast<double>(n);
    if (!std::isfinite(epoch_loss.total))
      throw TrainDivergence("train: diverged at epoch " + std::to_string(epoch + 1) +
                                " (total loss non-finite)",
                            std::move(result.trace));
    result.trace.push_back(epoch_loss);
  }
  result.model = std::move(model);
  return result;
}

inline std::vector<double> flatten_mask(const RasterMask& mask) {
  std::vector<double> x(mask.cells.size());
  for (std::size_t i = 0; i < mask.cells.size(); ++i) x[i] = mask.cells[i] ? 1.0 : 0.0;
  return x;
}

inline RasterMask probs_to_mask(const CvaeModel& m, std::span<const double> probs) {
  RasterMask mask = RasterMask::zeros(m.raster_width, m.raster_height, m.transform);
  for (std::size_t i = 0; i < probs.size(); ++i) mask.cells[i] = probs[i] >= 0.5 ? 1 : 0;
  return mask;
}

// z fixed at the prior mean; the deterministic default for evaluation runs.
inline RasterMask generate_prior_mean(const CvaeModel& m, double t_norm) {
  std::vector<double> z(m.config.latent_dim, 0.0);
  return probs_to_mask(m, decode(m, z, t_norm));
}

// z drawn from the prior.
inline RasterMask generate_prior_sample(const CvaeModel& m, double t_norm, Rng& rng) {
  std::vector<double> z(m.config.latent_dim);
  for (auto& v : z) v = rng.normal();
  return probs_to_mask(m, decode(m, z, t_norm));
}

// z = posterior mean of a support snapshot encoded at its own timestamp,
// decoded at the target timestamp.
inline RasterMask generate_posterior(const CvaeModel& m, const RasterMask& support,
                                     double support_t, double target_t) {
  if (support.width != m.raster_width || support.height != m.raster_height)
    throw Error("generate_posterior: support raster does not match the model");
  auto [mu, logvar] = encode(m, flatten_mask(support), support_t);
  (void)logvar;
  return probs_to_mask(m, decode(m, mu, target_t));
}

inline std::vector<double> parameter_vector(const CvaeModel& m) {
  std::vector<double> out;
  for (const auto* side : {&m.encoder, &m.decoder})
    for (const auto& layer : *side) {
      out.insert(out.end(), layer.w.begin(), layer.w.end());
      out.insert(out.end(), layer.b.begin(), layer.b.end());
    }
  return out;
}

inline void set_parameters(CvaeModel& m, std::span<const double> params) {
  std::size_t pos = 0;
  for (auto* side : {&m.encoder, &m.decoder})
    for (auto& layer : *side) {
      if (pos + layer.w.size() + layer.b.size() > params.size())
        throw Error("set_parameters: vector too short");
      std::copy(params.begin() + pos, params.begin() + pos + layer.w.size(), layer.w.begin());
      pos += layer.w.size();
      std::copy(params.begin() + pos, params.begin() + pos + layer.b.size(), layer.b.begin());
      pos += layer.b.size();
    }
  if (pos != params.size()) throw Error("set_parameters: vector too long");
}

namespace detail {

inline void write_bytes(std::ostream& os, const void* p, std::size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}
template <typename T>
void write_pod(std::ostream& os, T v) {
  write_bytes(os, &v, sizeof v);
}
template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw Error("checkpoint: truncated file");
  return v;
}

inline void write_layer(std::ostream& os, const DenseLayer& l) {
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(l.in));
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(l.out));
  write_bytes(os, l.w.data(), l.w.size() * sizeof(double));
  write_bytes(os, l.b.data(), l.b.size() * sizeof(double));
}

inline DenseLayer read_layer(std::istream& is) {
  DenseLayer l;
  l.in = static_cast<int>(read_pod<std::uint32_t>(is));
  l.out = static_cast<int>(read_pod<std::uint32_t>(is));
  if (l.in < 1 || l.out < 1 || static_cast<long long>(l.in) * l.out > (1ll << 30))
    throw Error("checkpoint: implausible layer shape");
  l.w.resize(static_cast<std::size_t>(l.in) * l.out);
  l.b.resize(static_cast<std::size_t>(l.out));
  is.read(reinterpret_cast<char*>(l.w.data()), static_cast<std::streamsize>(l.w.size() * sizeof(double)));
  is.read(reinterpret_cast<char*>(l.b.data()), static_cast<std::streamsize>(l.b.size() * sizeof(double)));
  if (!is) throw Error("checkpoint: truncated file");
  return l;
}

constexpr char kCheckpointMagic[8] = {'M', 'V', 'R', 'G', 'C', 'V', 'A', 'E'};
constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace detail

inline void save_checkpoint(const CvaeModel& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("save_checkpoint: cannot open " + path);
  using namespace detail;
  write_bytes(os, kCheckpointMagic, sizeof kCheckpointMagic);
  write_pod<std::uint32_t>(os, kCheckpointVersion);
  write_pod<std::int32_t>(os, m.raster_width);
  write_pod<std::int32_t>(os, m.raster_height);
  for (double v : {m.transform.sx, m.transform.sy, m.transform.tx, m.transform.ty}) write_pod(os, v);
  const TrainConfig& c = m.config;
  write_pod<std::int32_t>(os, c.epochs);
  write_pod<std::int32_t>(os, c.batch_size);
  for (double v : {c.learning_rate, c.adam_beta1, c.adam_beta2, c.adam_eps, c.kl_weight}) write_pod(os, v);
  write_pod<std::int32_t>(os, c.latent_dim);
  write_pod<std::uint8_t>(os, c.recon_loss == TrainConfig::ReconLoss::bce ? 0 : 1);
  write_pod<std::uint64_t>(os, c.rng_seed);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(c.hidden.size()));
  for (int h : c.hidden) write_pod<std::int32_t>(os, h);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(m.encoder.size()));
  for (const auto& l : m.encoder) write_layer(os, l);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(m.decoder.size()));
  for (const auto& l : m.decoder) write_layer(os, l);
  if (!os) throw Error("save_checkpoint: write failed for " + path);
}

inline CvaeModel load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("load_checkpoint: cannot open " + path);
  using namespace detail;
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0)
    throw Error("load_checkpoint: not a checkpoint file");
  const auto version = read_pod<std::uint32_t>(is);
  if (version != kCheckpointVersion)
    throw Error("load_checkpoint: unsupported version " + std::to_string(version));
  CvaeModel m;
  m.raster_width = static_cast<int>(read_pod<std::int32_t>(is));
  m.raster_height = static_cast<int>(read_pod<std::int32_t>(is));
  m.transform.sx = read_pod<double>(is);
  m.transform.sy = read_pod<double>(is);
  m.transform.tx = read_pod<double>(is);
  m.transform.ty = read_pod<double>(is);
  TrainConfig c;
  c.epochs = read_pod<std::int32_t>(is);
  c.batch_size = read_pod<std::int32_t>(is);
  c.learning_rate = read_pod<double>(is);
  c.adam_beta1 = read_pod<double>(is);
  c.adam_beta2 = read_pod<double>(is);
  c.adam_eps = read_pod<double>(is);
  c.kl_weight = read_pod<double>(is);
  c.latent_dim = static_cast<int>(read_pod<std::int32_t>(is));
  c.recon_loss = read_pod<std::uint8_t>(is) == 0 ? TrainConfig::ReconLoss::bce : TrainConfig::ReconLoss::mse;
  c.rng_seed = read_pod<std::uint64_t>(is);
  const auto nh = read_pod<std::uint32_t>(is);
  if (nh > 64) throw Error("load_checkpoint: implausible hidden layer count");
  c.hidden.resize(nh);
  for (auto& h : c.hidden) h = static_cast<int>(read_pod<std::int32_t>(is));
  m.config = c;
  const auto ne = read_pod<std::uint32_t>(is);
  for (std::uint32_t i = 0; i < ne; ++i) m.encoder.push_back(read_layer(is));
  const auto nd = read_pod<std::uint32_t>(is);
  for (std::uint32_t i = 0; i < nd; ++i) m.decoder.push_back(read_layer(is));
  if (m.encoder.empty() || m.decoder.empty()) throw Error("load_checkpoint: missing layers");
  if (m.encoder.front().in != m.input_dim() + 1 ||
      m.encoder.back().out != 2 * c.latent_dim ||
      m.decoder.front().in != c.latent_dim + 1 || m.decoder.back().out != m.input_dim())
    throw Error("load_checkpoint: inconsistent layer shapes");
  return m;
}

}  // namespace movreg
