#include "phraseqe/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phraseqe/metrics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phraseqe {

NetDims make_dims(size_t word_width, size_t gap_width, size_t context,
                  size_t embed) {
  if (word_width == 0 && gap_width == 0)
    throw DataError("network needs at least one input feature");
  NetDims d;
  d.word_width = word_width;
  d.gap_width = gap_width;
  d.context = context;
  d.embed = embed > 0 ? embed : (word_width + gap_width + 1) / 2;
  return d;
}

std::array<std::vector<double>*, 10> QeNetParams::arrays() {
  return {&word_enc_w, &word_enc_b, &gap_enc_w, &gap_enc_b, &hidden_w,
          &hidden_b,   &out_word_w, &out_word_b, &out_gap_w, &out_gap_b};
}

std::array<const std::vector<double>*, 10> QeNetParams::arrays() const {
  return {&word_enc_w, &word_enc_b, &gap_enc_w, &gap_enc_b, &hidden_w,
          &hidden_b,   &out_word_w, &out_word_b, &out_gap_w, &out_gap_b};
}

size_t QeNetParams::parameter_count() const {
  size_t n = 0;
  for (const auto* a : arrays()) n += a->size();
  return n;
}

std::array<std::vector<double>*, 10> QeNetGrads::arrays() {
  return {&word_enc_w, &word_enc_b, &gap_enc_w, &gap_enc_b, &hidden_w,
          &hidden_b,   &out_word_w, &out_word_b, &out_gap_w, &out_gap_b};
}

std::array<const std::vector<double>*, 10> QeNetGrads::arrays() const {
  return {&word_enc_w, &word_enc_b, &gap_enc_w, &gap_enc_b, &hidden_w,
          &hidden_b,   &out_word_w, &out_word_b, &out_gap_w, &out_gap_b};
}

void QeNetGrads::zero_like(const QeNetParams& params) {
  auto src = params.arrays();
  auto dst = arrays();
  for (size_t i = 0; i < src.size(); ++i) dst[i]->assign(src[i]->size(), 0.0);
}

void AdamState::zero_like(const QeNetParams& params) {
  step = 0;
  auto src = params.arrays();
  for (size_t i = 0; i < src.size(); ++i) {
    m[i].assign(src[i]->size(), 0.0);
    v[i].assign(src[i]->size(), 0.0);
  }
}

QeNetParams init_params(const NetDims& dims, uint64_t seed) {
  if (dims.embed == 0 || dims.hidden_width() == 0)
    throw DataError("invalid network dimensions");
  const size_t E = dims.embed, F = dims.word_width, G = dims.gap_width;
  const size_t D = dims.concat_width(), H = dims.hidden_width();

  QeNetParams p;
  p.dims = dims;
  Rng rng(seed);
  auto fill = [&](std::vector<double>& w, size_t count, size_t fan_in) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    w.resize(count);
    for (double& x : w) x = rng.uniform(-bound, bound);
  };
  fill(p.word_enc_w, E * F, F == 0 ? 1 : F);
  p.word_enc_b.assign(E, 0.0);
  fill(p.gap_enc_w, E * G, G == 0 ? 1 : G);
  p.gap_enc_b.assign(E, 0.0);
  fill(p.hidden_w, H * D, D);
  p.hidden_b.assign(H, 0.0);
  fill(p.out_word_w, H, H);
  p.out_word_b.assign(1, 0.0);
  fill(p.out_gap_w, H, H);
  p.out_gap_b.assign(1, 0.0);
  return p;
}

namespace {

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x)));
}

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-unit inverted-dropout scales: 0 (dropped) or 1/(1-rate).
void fill_dropout(std::vector<double>& scale, size_t count, const DropoutPlan* plan,
                  uint64_t window_index, bool train_mode) {
  scale.assign(count, 1.0);
  if (!train_mode || !plan || plan->rate <= 0.0) return;
  if (plan->rate >= 1.0) throw DataError("dropout rate must be < 1");
  Rng rng(mix_seed(plan->seed, window_index));
  const double keep = 1.0 - plan->rate;
  for (double& s : scale) s = rng.uniform() < plan->rate ? 0.0 : 1.0 / keep;
}

struct Activations {
  std::vector<double> enc_pre;    // D
  std::vector<double> enc_scale;  // D dropout scales
  std::vector<double> enc_out;    // D
  std::vector<double> hid_pre;    // H
  std::vector<double> hid_scale;  // H
  std::vector<double> hid_out;    // H
  double logit_word = 0.0;
  double logit_gap = 0.0;
};

void forward_into(const QeNetParams& p, const std::vector<double>& window,
                  bool train_mode, const DropoutPlan* plan, uint64_t window_index,
                  Activations& act) {
  const NetDims& d = p.dims;
  const size_t S = d.slots(), E = d.embed, F = d.word_width, G = d.gap_width;
  const size_t D = d.concat_width(), H = d.hidden_width();
  if (window.size() != H)
    throw DataError("window width " + std::to_string(window.size()) +
                    " does not match network input " + std::to_string(H));

  act.enc_pre.assign(D, 0.0);
  act.hid_pre.assign(H, 0.0);
  fill_dropout(act.enc_scale, D, plan, window_index * 2, train_mode);
  fill_dropout(act.hid_scale, H, plan, window_index * 2 + 1, train_mode);

  // Tied first layer: word slots then gap slots.
  for (size_t s = 0; s < S; ++s) {
    const double* x = window.data() + s * F;
    double* pre = act.enc_pre.data() + s * E;
    for (size_t e = 0; e < E; ++e) {
      double acc = p.word_enc_b[e];
      const double* row = p.word_enc_w.data() + e * F;
      for (size_t f = 0; f < F; ++f) acc += row[f] * x[f];
      pre[e] = acc;
    }
  }
  for (size_t s = 0; s < S; ++s) {
    const double* x = window.data() + S * F + s * G;
    double* pre = act.enc_pre.data() + (S + s) * E;
    for (size_t e = 0; e < E; ++e) {
      double acc = p.gap_enc_b[e];
      const double* row = p.gap_enc_w.data() + e * G;
      for (size_t g = 0; g < G; ++g) acc += row[g] * x[g];
      pre[e] = acc;
    }
  }

  act.enc_out.resize(D);
  for (size_t i = 0; i < D; ++i)
    act.enc_out[i] = act.enc_pre[i] > 0.0 ? act.enc_pre[i] * act.enc_scale[i] : 0.0;

  for (size_t h = 0; h < H; ++h) {
    double acc = p.hidden_b[h];
    const double* row = p.hidden_w.data() + h * D;
    for (size_t i = 0; i < D; ++i) acc += row[i] * act.enc_out[i];
    act.hid_pre[h] = acc;
  }
  act.hid_out.resize(H);
  for (size_t h = 0; h < H; ++h)
    act.hid_out[h] = act.hid_pre[h] > 0.0 ? act.hid_pre[h] * act.hid_scale[h] : 0.0;

  double lw = p.out_word_b[0], lg = p.out_gap_b[0];
  for (size_t h = 0; h < H; ++h) {
    lw += p.out_word_w[h] * act.hid_out[h];
    lg += p.out_gap_w[h] * act.hid_out[h];
  }
  act.logit_word = lw;
  act.logit_gap = lg;
}

}  // namespace

ForwardResult forward(const QeNetParams& params, const std::vector<double>& window,
                      bool train_mode, const DropoutPlan* plan,
                      uint64_t window_index) {
  Activations act;
  forward_into(params, window, train_mode, plan, window_index, act);
  return {sigmoid(act.logit_word), sigmoid(act.logit_gap), act.logit_word,
          act.logit_gap};
}

double min_preactivation_margin(const QeNetParams& params,
                                const std::vector<double>& window,
                                const DropoutPlan* plan, uint64_t window_index) {
  Activations act;
  forward_into(params, window, plan && plan->rate > 0.0, plan, window_index, act);
  double margin = std::numeric_limits<double>::infinity();
  for (double v : act.enc_pre) margin = std::min(margin, std::fabs(v));
  for (double v : act.hid_pre) margin = std::min(margin, std::fabs(v));
  return margin;
}

namespace {

double accumulate_loss_grad(const QeNetParams& p,
                            const std::vector<const Window*>& batch,
                            const DropoutPlan& plan, QeNetGrads* grads) {
  if (batch.empty()) throw DataError("empty batch");
  const NetDims& d = p.dims;
  const size_t S = d.slots(), E = d.embed, F = d.word_width, G = d.gap_width;
  const size_t D = d.concat_width(), H = d.hidden_width();
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  double loss = 0.0;
  Activations act;
  std::vector<double> dhid_pre(H), denc_out(D), denc_pre(D);

  for (size_t b = 0; b < batch.size(); ++b) {
    const Window& w = *batch[b];
    const bool use_word = !w.word_masked && w.word_gold >= 0;
    if (w.gap_gold < 0) throw DataError("batch window lacks a gap label");

    forward_into(p, w.values, plan.rate > 0.0, &plan, b, act);

    const double yw = use_word ? static_cast<double>(w.word_gold) : 0.0;
    const double yg = static_cast<double>(w.gap_gold);
    if (use_word) loss += (softplus(act.logit_word) - yw * act.logit_word) * inv_b;
    loss += (softplus(act.logit_gap) - yg * act.logit_gap) * inv_b;
    if (!grads) continue;

    const double dlw =
        use_word ? (sigmoid(act.logit_word) - yw) * inv_b : 0.0;
    const double dlg = (sigmoid(act.logit_gap) - yg) * inv_b;

    grads->out_word_b[0] += dlw;
    grads->out_gap_b[0] += dlg;
    for (size_t h = 0; h < H; ++h) {
      grads->out_word_w[h] += dlw * act.hid_out[h];
      grads->out_gap_w[h] += dlg * act.hid_out[h];
      const double dout = dlw * p.out_word_w[h] + dlg * p.out_gap_w[h];
      dhid_pre[h] =
          act.hid_pre[h] > 0.0 ? dout * act.hid_scale[h] : 0.0;
    }

    for (size_t h = 0; h < H; ++h) {
      const double g = dhid_pre[h];
      if (g == 0.0) continue;
      grads->hidden_b[h] += g;
      double* row = grads->hidden_w.data() + h * D;
      for (size_t i = 0; i < D; ++i) row[i] += g * act.enc_out[i];
    }
    for (size_t i = 0; i < D; ++i) {
      double acc = 0.0;
      for (size_t h = 0; h < H; ++h) acc += dhid_pre[h] * p.hidden_w[h * D + i];
      denc_out[i] = acc;
      denc_pre[i] = act.enc_pre[i] > 0.0 ? acc * act.enc_scale[i] : 0.0;
    }

    for (size_t s = 0; s < S; ++s) {
      const double* x = w.values.data() + s * F;
      const double* dp = denc_pre.data() + s * E;
      for (size_t e = 0; e < E; ++e) {
        if (dp[e] == 0.0) continue;
        grads->word_enc_b[e] += dp[e];
        double* row = grads->word_enc_w.data() + e * F;
        for (size_t f = 0; f < F; ++f) row[f] += dp[e] * x[f];
      }
    }
    for (size_t s = 0; s < S; ++s) {
      const double* x = w.values.data() + S * F + s * G;
      const double* dp = denc_pre.data() + (S + s) * E;
      for (size_t e = 0; e < E; ++e) {
        if (dp[e] == 0.0) continue;
        grads->gap_enc_b[e] += dp[e];
        double* row = grads->gap_enc_w.data() + e * G;
        for (size_t g = 0; g < G; ++g) row[g] += dp[e] * x[g];
      }
    }
  }
  return loss;
}

}  // namespace

LossGrad loss_and_grad(const QeNetParams& params,
                       const std::vector<const Window*>& batch,
                       const DropoutPlan& plan) {
  LossGrad out;
  out.grads.zero_like(params);
  out.loss = accumulate_loss_grad(params, batch, plan, &out.grads);
  return out;
}

double loss_value(const QeNetParams& params,
                  const std::vector<const Window*>& batch,
                  const DropoutPlan& plan) {
  return accumulate_loss_grad(params, batch, plan, nullptr);
}

void adam_step(QeNetParams& params, const QeNetGrads& grads, AdamState& state,
               const TrainConfig& config) {
  ++state.step;
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  auto ps = params.arrays();
  auto gs = grads.arrays();
  for (size_t a = 0; a < ps.size(); ++a) {
    std::vector<double>& p = *ps[a];
    const std::vector<double>& g = *gs[a];
    std::vector<double>& m = state.m[a];
    std::vector<double>& v = state.v[a];
    if (p.size() != g.size() || p.size() != m.size())
      throw DataError("adam_step: shape mismatch");
    for (size_t i = 0; i < p.size(); ++i) {
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g[i];
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      p[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
    }
  }
}

Predictions predict(const QeNetParams& params, const std::vector<Window>& windows,
                    int threads) {
  Predictions out;
  out.word_probs.assign(windows.size(), 0.0);
  out.gap_probs.assign(windows.size(), 0.0);
#ifdef _OPENMP
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(n_threads)
#else
  (void)threads;
#endif
  for (long i = 0; i < static_cast<long>(windows.size()); ++i) {
    ForwardResult r = forward(params, windows[static_cast<size_t>(i)].values,
                              /*train_mode=*/false);
    out.word_probs[static_cast<size_t>(i)] = r.p_word;
    out.gap_probs[static_cast<size_t>(i)] = r.p_gap;
  }
  return out;
}

namespace {

struct DevGold {
  std::vector<size_t> word_windows;  // indices of unmasked labelled windows
  std::vector<Tag> word_tags;
  std::vector<size_t> gap_windows;
  std::vector<Tag> gap_tags;
};

DevGold collect_dev_gold(const std::vector<Window>& dev) {
  DevGold g;
  for (size_t i = 0; i < dev.size(); ++i) {
    if (!dev[i].word_masked && dev[i].word_gold >= 0) {
      g.word_windows.push_back(i);
      g.word_tags.push_back(dev[i].word_gold ? Tag::BAD : Tag::OK);
    }
    if (dev[i].gap_gold >= 0) {
      g.gap_windows.push_back(i);
      g.gap_tags.push_back(dev[i].gap_gold ? Tag::BAD : Tag::OK);
    }
  }
  if (g.word_windows.empty() || g.gap_windows.empty())
    throw DataError("development set lacks word or gap labels");
  return g;
}

struct DevEval {
  double metric = 0.0;  // higher is better (loss is negated)
  double word_threshold = 0.5;
  double gap_threshold = 0.5;
};

DevEval evaluate_dev(const QeNetParams& params, const std::vector<Window>& dev,
                     const DevGold& gold, const TrainConfig& config) {
  DevEval ev;
  Predictions pred = predict(params, dev, 1);
  std::vector<double> wp, gp;
  wp.reserve(gold.word_windows.size());
  for (size_t i : gold.word_windows) wp.push_back(pred.word_probs[i]);
  gp.reserve(gold.gap_windows.size());
  for (size_t i : gold.gap_windows) gp.push_back(pred.gap_probs[i]);

  ThresholdSearch tw = line_search_threshold(wp, gold.word_tags);
  ThresholdSearch tg = line_search_threshold(gp, gold.gap_tags);
  ev.word_threshold = tw.threshold;
  ev.gap_threshold = tg.threshold;

  if (config.dev_metric == TrainConfig::DevMetric::FMulti) {
    ev.metric = tw.f_multi * tg.f_multi;
  } else {
    std::vector<const Window*> all;
    all.reserve(dev.size());
    for (const Window& w : dev) all.push_back(&w);
    ev.metric = -loss_value(params, all, DropoutPlan{});
  }
  return ev;
}

struct RestartOutcome {
  bool failed = false;
  std::string note;
  double best_metric = -std::numeric_limits<double>::infinity();
  size_t best_epoch = 0;
  QeNetParams best_params;
  std::vector<EpochRecord> records;
};

RestartOutcome run_restart(size_t restart, const NetDims& dims,
                           const std::vector<Window>& train_windows,
                           const std::vector<Window>& dev_windows,
                           const DevGold& dev_gold, const TrainConfig& config) {
  RestartOutcome out;
  const uint64_t restart_seed = mix_seed(config.seed, restart);
  QeNetParams params = init_params(dims, restart_seed);
  AdamState adam;
  adam.zero_like(params);
  Rng rng(mix_seed(restart_seed, 0x5eed));

  std::vector<size_t> order(train_windows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  size_t since_best = 0;
  for (size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    size_t seen = 0;
    for (size_t at = 0; at < order.size(); at += config.batch_size) {
      const size_t end = std::min(order.size(), at + config.batch_size);
      std::vector<const Window*> batch;
      batch.reserve(end - at);
      for (size_t k = at; k < end; ++k) batch.push_back(&train_windows[order[k]]);
      DropoutPlan plan{config.dropout, rng.next()};
      LossGrad lg = loss_and_grad(params, batch, plan);
      if (!std::isfinite(lg.loss)) {
        out.failed = true;
        out.note = "restart " + std::to_string(restart) +
                   ": non-finite loss at epoch " + std::to_string(epoch);
        return out;
      }
      epoch_loss += lg.loss * static_cast<double>(batch.size());
      seen += batch.size();
      adam_step(params, lg.grads, adam, config);
    }
    epoch_loss /= static_cast<double>(seen);

    DevEval ev = evaluate_dev(params, dev_windows, dev_gold, config);
    out.records.push_back({restart, epoch, epoch_loss, ev.metric});

    if (ev.metric > out.best_metric) {
      out.best_metric = ev.metric;
      out.best_epoch = epoch;
      out.best_params = params;
      out.best_params.word_threshold = ev.word_threshold;
      out.best_params.gap_threshold = ev.gap_threshold;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (since_best >= config.patience) break;
  }
  if (out.best_epoch == 0) {
    out.failed = true;
    out.note = "restart " + std::to_string(restart) + ": no finished epoch";
  }
  return out;
}

}  // namespace

TrainResult train(const WindowBatch& train_windows, const WindowBatch& dev_windows,
                  const TrainConfig& config) {
  if (train_windows.windows.empty() || dev_windows.windows.empty())
    throw DataError("training needs non-empty train and dev window sets");
  if (config.patience == 0 || config.restarts == 0 || config.batch_size == 0)
    throw DataError("patience, restarts and batch size must be positive");
  if (train_windows.word_width != dev_windows.word_width ||
      train_windows.gap_width != dev_windows.gap_width ||
      train_windows.context != dev_windows.context)
    throw SchemaError("train and dev windows were cut with different schemas");
  for (const Window& w : train_windows.windows)
    if (w.gap_gold < 0 || (!w.word_masked && w.word_gold < 0))
      throw DataError("training window lacks gold labels");

  const NetDims dims = make_dims(train_windows.word_width, train_windows.gap_width,
                                 train_windows.context, config.embed);
  const DevGold dev_gold = collect_dev_gold(dev_windows.windows);

  std::vector<RestartOutcome> outcomes(config.restarts);
#ifdef _OPENMP
  const int n_threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(n_threads)
#endif
  for (long r = 0; r < static_cast<long>(config.restarts); ++r)
    outcomes[static_cast<size_t>(r)] =
        run_restart(static_cast<size_t>(r), dims, train_windows.windows,
                    dev_windows.windows, dev_gold, config);

  TrainResult result;
  long chosen = -1;
  for (size_t r = 0; r < outcomes.size(); ++r) {
    const RestartOutcome& o = outcomes[r];
    for (const EpochRecord& rec : o.records) result.history.epochs.push_back(rec);
    if (o.failed) {
      result.history.failures.push_back(o.note);
      continue;
    }
    if (chosen < 0 || o.best_metric > outcomes[static_cast<size_t>(chosen)].best_metric)
      chosen = static_cast<long>(r);
  }
  if (chosen < 0) throw DataError("every training restart diverged");

  const RestartOutcome& best = outcomes[static_cast<size_t>(chosen)];
  result.params = best.best_params;
  result.history.chosen_restart = static_cast<size_t>(chosen);
  result.history.chosen_epoch = best.best_epoch;
  result.history.chosen_dev_metric = best.best_metric;
  return result;
}

// ----- model files ------------------------------------------------------------

namespace {
constexpr uint32_t kModelMagic = 0x444d5150;  // "PQMD"
constexpr uint32_t kModelVersion = 1;
}  // namespace

void save_model(const ModelFile& model, const std::string& path) {
  const QeNetParams& p = model.params;
  BinWriter w(path);
  w.u32(kModelMagic);
  w.u32(kModelVersion);
  w.u32(model.max_len);
  w.u32(model.baseline_width);
  w.u32(static_cast<uint32_t>(p.dims.word_width));
  w.u32(static_cast<uint32_t>(p.dims.gap_width));
  w.u32(static_cast<uint32_t>(p.dims.context));
  w.u32(static_cast<uint32_t>(p.dims.embed));
  w.str(kComponentOrderTag);
  w.f64(p.word_threshold);
  w.f64(p.gap_threshold);
  for (const auto* a : p.arrays()) {
    w.u64(a->size());
    for (double v : *a) w.f64(v);
  }
  w.close();
}

ModelFile load_model(const std::string& path) {
  BinReader r(path);
  if (r.u32() != kModelMagic) throw SchemaError(path + ": not a model file");
  const uint32_t version = r.u32();
  if (version != kModelVersion)
    throw SchemaError(path + ": model version " + std::to_string(version) +
                      " unsupported");
  ModelFile model;
  model.max_len = r.u32();
  model.baseline_width = r.u32();
  NetDims dims;
  dims.word_width = r.u32();
  dims.gap_width = r.u32();
  dims.context = r.u32();
  dims.embed = r.u32();
  model.params.dims = dims;
  if (r.str() != kComponentOrderTag)
    throw SchemaError(path + ": feature component order does not match this build");
  model.params.word_threshold = r.f64();
  model.params.gap_threshold = r.f64();
  for (auto* a : model.params.arrays()) {
    a->resize(r.u64());
    for (double& v : *a) v = r.f64();
  }
  const NetDims& d = model.params.dims;
  if (model.params.word_enc_w.size() != d.embed * d.word_width ||
      model.params.hidden_w.size() != d.hidden_width() * d.concat_width() ||
      model.params.out_word_w.size() != d.hidden_width())
    throw SchemaError(path + ": weight shapes do not match stored dimensions");
  return model;
}

void check_model_features(const ModelFile& model, const FeatureFileHeader& header) {
  if (model.max_len != header.max_len || model.baseline_width != header.baseline_width ||
      model.params.dims.word_width != header.word_width ||
      model.params.dims.gap_width != header.gap_width)
    throw SchemaError(
        "feature file schema (L=" + std::to_string(header.max_len) +
        ", B=" + std::to_string(header.baseline_width) + ", F=" +
        std::to_string(header.word_width) + ", G=" + std::to_string(header.gap_width) +
        ") does not match the model (L=" + std::to_string(model.max_len) +
        ", B=" + std::to_string(model.baseline_width) +
        ", F=" + std::to_string(model.params.dims.word_width) +
        ", G=" + std::to_string(model.params.dims.gap_width) + ")");
}

}  // namespace phraseqe
