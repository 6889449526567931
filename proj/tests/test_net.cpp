#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "phraseqe/metrics.hpp"
#include "phraseqe/net.hpp"

using namespace phraseqe;

namespace {

Window make_window(Rng& rng, size_t width, bool masked) {
  Window w;
  w.values.resize(width);
  for (double& v : w.values) v = rng.uniform(-1.0, 1.0);
  w.word_masked = masked;
  w.word_gold = masked ? -1 : static_cast<int8_t>(rng.index(2));
  w.gap_gold = static_cast<int8_t>(rng.index(2));
  return w;
}

// max over parameters of |analytic - finite difference| / max(|a|,|f|,1e-6)
double gradient_check(QeNetParams& params, const std::vector<const Window*>& batch,
                      const DropoutPlan& plan) {
  LossGrad lg = loss_and_grad(params, batch, plan);
  const double h = 1e-5;
  double worst = 0.0;
  auto arrays = params.arrays();
  auto grads = lg.grads.arrays();
  for (size_t a = 0; a < arrays.size(); ++a) {
    std::vector<double>& p = *arrays[a];
    for (size_t i = 0; i < p.size(); ++i) {
      const double saved = p[i];
      p[i] = saved + h;
      const double lp = loss_value(params, batch, plan);
      p[i] = saved - h;
      const double lm = loss_value(params, batch, plan);
      p[i] = saved;
      const double fd = (lp - lm) / (2 * h);
      const double an = (*grads[a])[i];
      const double rel =
          std::fabs(an - fd) / std::max({std::fabs(an), std::fabs(fd), 1e-6});
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("init_params is deterministic in the seed") {
  NetDims dims = make_dims(30, 24, 3);
  CHECK(dims.embed == 27);
  CHECK(dims.hidden_width() == 378);

  QeNetParams a = init_params(dims, 7);
  QeNetParams b = init_params(dims, 7);
  QeNetParams c = init_params(dims, 8);
  CHECK(a.word_enc_w == b.word_enc_w);
  CHECK(a.hidden_w == b.hidden_w);
  CHECK(a.word_enc_w != c.word_enc_w);
  for (const auto* arr : a.arrays())
    for (double v : *arr) CHECK(std::isfinite(v));
  CHECK(a.word_enc_b == std::vector<double>(27, 0.0));
}

TEST_CASE("forward with zero weights gives 0.5/0.5 and stays in (0,1)") {
  NetDims dims = make_dims(4, 3, 1);
  QeNetParams zero = init_params(dims, 1);
  for (auto* arr : zero.arrays()) std::fill(arr->begin(), arr->end(), 0.0);

  Rng rng(2);
  Window w = make_window(rng, dims.hidden_width(), false);
  ForwardResult r = forward(zero, w.values, false);
  CHECK(r.p_word == doctest::Approx(0.5));
  CHECK(r.p_gap == doctest::Approx(0.5));

  QeNetParams p = init_params(dims, 3);
  for (int trial = 0; trial < 50; ++trial) {
    Window t = make_window(rng, dims.hidden_width(), false);
    ForwardResult fr = forward(p, t.values, false);
    CHECK(fr.p_word > 0.0);
    CHECK(fr.p_word < 1.0);
    CHECK(fr.p_gap > 0.0);
    CHECK(fr.p_gap < 1.0);
  }
}

TEST_CASE("train mode with dropout 0 equals inference mode") {
  NetDims dims = make_dims(5, 2, 1);
  QeNetParams p = init_params(dims, 11);
  Rng rng(4);
  Window w = make_window(rng, dims.hidden_width(), false);
  DropoutPlan none{0.0, 99};
  ForwardResult train_r = forward(p, w.values, true, &none, 0);
  ForwardResult infer_r = forward(p, w.values, false);
  CHECK(train_r.p_word == doctest::Approx(infer_r.p_word).epsilon(1e-15));
  CHECK(train_r.p_gap == doctest::Approx(infer_r.p_gap).epsilon(1e-15));
}

TEST_CASE("window width mismatch is rejected") {
  NetDims dims = make_dims(4, 3, 1);
  QeNetParams p = init_params(dims, 1);
  std::vector<double> wrong(dims.hidden_width() + 1, 0.0);
  CHECK_THROWS_AS(forward(p, wrong, false), DataError);
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937 meta(17);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t F = 1 + meta() % 4, G = 1 + meta() % 3, C = meta() % 2;
    const size_t E = 2 + meta() % 2;
    NetDims dims = make_dims(F, G, C, E);
    if (init_params(dims, 1).parameter_count() > 500) continue;
    QeNetParams p = init_params(dims, meta());

    Rng rng(meta());
    std::vector<Window> windows;
    for (int i = 0; i < 4; ++i)
      windows.push_back(make_window(rng, dims.hidden_width(), i == 0));
    std::vector<const Window*> batch;
    for (const Window& w : windows) batch.push_back(&w);

    // No dropout and fixed-mask dropout must both check out.
    CHECK(gradient_check(p, batch, DropoutPlan{0.0, 0}) < 1e-4);
    CHECK(gradient_check(p, batch, DropoutPlan{0.3, 1234}) < 1e-4);
  }
}

TEST_CASE("perfectly confident predictions drive the loss to zero") {
  NetDims dims = make_dims(2, 2, 0);
  QeNetParams p = init_params(dims, 5);
  for (auto* arr : p.arrays()) std::fill(arr->begin(), arr->end(), 0.0);
  // Saturate both outputs toward the gold labels via the output biases.
  p.out_word_b[0] = -40.0;
  p.out_gap_b[0] = -40.0;
  Window w;
  w.values.assign(dims.hidden_width(), 0.0);
  w.word_gold = 0;
  w.gap_gold = 0;
  const double loss = loss_value(p, {&w}, DropoutPlan{});
  CHECK(loss == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("masked word windows contribute no gradient to the word head") {
  NetDims dims = make_dims(3, 2, 1);
  QeNetParams p = init_params(dims, 9);
  Rng rng(10);
  Window w = make_window(rng, dims.hidden_width(), true);
  LossGrad lg = loss_and_grad(p, {&w}, DropoutPlan{});
  for (double g : lg.grads.out_word_w) CHECK(g == 0.0);
  CHECK(lg.grads.out_word_b[0] == 0.0);
  // The gap head still learns.
  double gap_norm = 0.0;
  for (double g : lg.grads.out_gap_w) gap_norm += std::fabs(g);
  CHECK(gap_norm > 0.0);
}

TEST_CASE("loss on a batch of duplicated examples equals the single example") {
  NetDims dims = make_dims(3, 3, 1);
  QeNetParams p = init_params(dims, 21);
  Rng rng(22);
  Window w = make_window(rng, dims.hidden_width(), false);
  const double single = loss_value(p, {&w}, DropoutPlan{});
  const double repeated = loss_value(p, {&w, &w, &w, &w}, DropoutPlan{});
  CHECK(repeated == doctest::Approx(single).epsilon(1e-12));
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  NetDims dims = make_dims(2, 2, 0);
  QeNetParams p = init_params(dims, 2);
  QeNetParams before = p;
  QeNetGrads g;
  g.zero_like(p);
  AdamState state;
  state.zero_like(p);
  TrainConfig cfg;
  adam_step(p, g, state, cfg);
  for (size_t a = 0; a < p.arrays().size(); ++a)
    CHECK(*p.arrays()[a] == *before.arrays()[a]);
}

TEST_CASE("adam: first step moves weights by about lr times sign(g)") {
  NetDims dims = make_dims(2, 2, 0);
  QeNetParams p = init_params(dims, 3);
  QeNetParams before = p;
  QeNetGrads g;
  g.zero_like(p);
  Rng rng(6);
  for (auto* arr : g.arrays())
    for (double& v : *arr) v = rng.uniform(-2.0, 2.0);
  AdamState state;
  state.zero_like(p);
  TrainConfig cfg;
  adam_step(p, g, state, cfg);

  auto pa = p.arrays();
  auto ba = before.arrays();
  auto ga = g.arrays();
  for (size_t a = 0; a < pa.size(); ++a)
    for (size_t i = 0; i < pa[a]->size(); ++i) {
      const double grad = (*ga[a])[i];
      if (std::fabs(grad) < 1e-6) continue;
      const double step = (*ba[a])[i] - (*pa[a])[i];
      // Bias-corrected first step: lr * g / (|g| + eps)
      CHECK(step == doctest::Approx(cfg.learning_rate * (grad > 0 ? 1.0 : -1.0))
                        .epsilon(1e-4));
    }
}

TEST_CASE("inverted dropout: train-mode logit expectation matches inference") {
  // Keep the hidden layer in its linear region so the pre-sigmoid output is
  // affine in the dropout masks; the expectation is then exact.
  NetDims dims = make_dims(2, 2, 0, 2);
  QeNetParams p = init_params(dims, 13);
  for (double& v : p.hidden_b) v = 5.0;
  for (double& v : p.hidden_w) v *= 0.1;
  Rng rng(14);
  Window w = make_window(rng, dims.hidden_width(), false);

  const double infer = forward(p, w.values, false).logit_word;
  const int n = 40000;
  double sum = 0.0, sum_sq = 0.0;
  DropoutPlan plan{0.2, 777};
  for (int i = 0; i < n; ++i) {
    const double logit =
        forward(p, w.values, true, &plan, static_cast<uint64_t>(i)).logit_word;
    sum += logit;
    sum_sq += logit * logit;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  const double stderr_mean = std::sqrt(var / n);
  CHECK(std::fabs(mean - infer) < 5.0 * stderr_mean + 1e-9);
}

namespace {

// Linearly separable toy task: one feature in the centre word slot carries
// the word label, one in the centre gap slot carries the gap label.
WindowBatch separable_batch(size_t count, uint64_t seed) {
  WindowBatch batch;
  batch.word_width = 4;
  batch.gap_width = 3;
  batch.context = 1;
  Rng rng(seed);
  const size_t slots = 3, F = 4, G = 3;
  for (size_t i = 0; i < count; ++i) {
    Window w;
    w.values.assign(slots * (F + G), 0.0);
    w.word_gold = static_cast<int8_t>(rng.index(2));
    w.gap_gold = static_cast<int8_t>(rng.index(2));
    for (double& v : w.values) v = rng.uniform(0.0, 0.1);
    w.values[1 * F + 0] = w.word_gold ? 1.0 : 0.0;               // centre word slot
    w.values[slots * F + 1 * G + 0] = w.gap_gold ? 1.0 : 0.0;    // centre gap slot
    w.word_masked = false;
    w.position = 1;
    batch.windows.push_back(std::move(w));
  }
  return batch;
}

TrainConfig fast_config() {
  TrainConfig cfg;
  cfg.restarts = 2;
  cfg.max_epochs = 50;
  cfg.patience = 10;
  cfg.batch_size = 32;
  cfg.learning_rate = 5e-3;
  cfg.dropout = 0.1;
  cfg.seed = 99;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("training solves a linearly separable task") {
  WindowBatch train_b = separable_batch(400, 1);
  WindowBatch dev_b = separable_batch(150, 2);
  TrainResult result = train(train_b, dev_b, fast_config());

  CHECK(result.history.chosen_dev_metric > 0.8);  // product of two F1 products

  // Word F_MULTI alone on dev.
  Predictions pred = predict(result.params, dev_b.windows, 1);
  std::vector<Tag> pw, gw;
  for (size_t i = 0; i < dev_b.windows.size(); ++i) {
    pw.push_back(apply_threshold(pred.word_probs[i], result.params.word_threshold));
    gw.push_back(dev_b.windows[i].word_gold ? Tag::BAD : Tag::OK);
  }
  CHECK(f1_suite(pw, gw).f_multi >= 0.9);

  // Early stopping: no restart runs more than patience epochs past its best.
  for (size_t r = 0; r < 2; ++r) {
    size_t best_epoch = 0, last_epoch = 0;
    double best = -1.0;
    for (const EpochRecord& rec : result.history.epochs) {
      if (rec.restart != r) continue;
      last_epoch = std::max(last_epoch, rec.epoch);
      if (rec.dev_metric > best) {
        best = rec.dev_metric;
        best_epoch = rec.epoch;
      }
    }
    CHECK(last_epoch <= best_epoch + fast_config().patience);
  }
}

TEST_CASE("training is reproducible for a fixed seed") {
  WindowBatch train_b = separable_batch(120, 5);
  WindowBatch dev_b = separable_batch(60, 6);
  TrainConfig cfg = fast_config();
  cfg.restarts = 1;
  cfg.max_epochs = 8;
  TrainResult a = train(train_b, dev_b, cfg);
  TrainResult b = train(train_b, dev_b, cfg);
  for (size_t i = 0; i < a.params.arrays().size(); ++i)
    CHECK(*a.params.arrays()[i] == *b.params.arrays()[i]);
  CHECK(a.params.word_threshold == b.params.word_threshold);

  // Thread count must not change the winner either.
  cfg.restarts = 3;
  cfg.threads = 1;
  TrainResult serial = train(train_b, dev_b, cfg);
  cfg.threads = 3;
  TrainResult parallel = train(train_b, dev_b, cfg);
  CHECK(serial.history.chosen_restart == parallel.history.chosen_restart);
  for (size_t i = 0; i < serial.params.arrays().size(); ++i)
    CHECK(*serial.params.arrays()[i] == *parallel.params.arrays()[i]);
}

TEST_CASE("predict is deterministic and in range") {
  NetDims dims = make_dims(3, 2, 1);
  QeNetParams p = init_params(dims, 31);
  Rng rng(32);
  std::vector<Window> windows;
  for (int i = 0; i < 64; ++i)
    windows.push_back(make_window(rng, dims.hidden_width(), i % 7 == 0));
  Predictions a = predict(p, windows, 1);
  Predictions b = predict(p, windows, 4);
  CHECK(a.word_probs == b.word_probs);
  CHECK(a.gap_probs == b.gap_probs);
  for (double v : a.word_probs) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("model files round-trip and reject mismatched features") {
  NetDims dims = make_dims(12, 6, 2);
  ModelFile model;
  model.params = init_params(dims, 77);
  model.params.word_threshold = 0.4;
  model.params.gap_threshold = 0.6;
  model.max_len = 2;
  model.baseline_width = 0;

  const std::string path =
      (std::filesystem::temp_directory_path() / "pq_model.bin").string();
  save_model(model, path);
  ModelFile loaded = load_model(path);
  CHECK(loaded.params.dims == dims);
  CHECK(loaded.params.word_threshold == 0.4);
  for (size_t i = 0; i < loaded.params.arrays().size(); ++i)
    CHECK(*loaded.params.arrays()[i] == *model.params.arrays()[i]);
  std::filesystem::remove(path);

  FeatureFileHeader good{2, 0, 12, 6, kComponentOrderTag};
  CHECK_NOTHROW(check_model_features(loaded, good));
  FeatureFileHeader bad{3, 0, 18, 12, kComponentOrderTag};
  CHECK_THROWS_AS(check_model_features(loaded, bad), SchemaError);
}
