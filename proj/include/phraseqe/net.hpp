#ifndef PHRASEQE_NET_HPP
#define PHRASEQE_NET_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phraseqe/features.hpp"

namespace phraseqe {

// Deterministic RNG wrapper; distributions are hand-rolled so results do not
// depend on the standard library's implementation.
class Rng {
public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  uint64_t next() { return gen_(); }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  size_t index(size_t n) { return static_cast<size_t>(gen_() % n); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

private:
  std::mt19937_64 gen_;
};

struct NetDims {
  size_t word_width = 0;  // F
  size_t gap_width = 0;   // G
  size_t context = 0;     // C
  size_t embed = 0;       // E

  size_t slots() const { return 2 * context + 1; }
  size_t concat_width() const { return slots() * 2 * embed; }
  // Window width and second-layer width coincide: (2C+1)(F+G).
  size_t hidden_width() const { return slots() * (word_width + gap_width); }
  bool operator==(const NetDims&) const = default;
};

// embed = 0 picks the default E = ceil((F+G)/2).
NetDims make_dims(size_t word_width, size_t gap_width, size_t context,
                  size_t embed = 0);

// Two-hidden-layer feed-forward net predicting p(word BAD) and p(gap BAD)
// jointly. First layer: one affine map per input kind (word / gap), shared
// across all context slots, ReLU. Second layer: affine to width (2C+1)(F+G),
// ReLU. Output: two sigmoid units. The two decision thresholds calibrated on
// the development set ride along with the weights.
struct QeNetParams {
  NetDims dims;
  std::vector<double> word_enc_w;  // E x F, row-major
  std::vector<double> word_enc_b;  // E
  std::vector<double> gap_enc_w;   // E x G
  std::vector<double> gap_enc_b;   // E
  std::vector<double> hidden_w;    // H x D
  std::vector<double> hidden_b;    // H
  std::vector<double> out_word_w;  // H
  std::vector<double> out_word_b;  // 1
  std::vector<double> out_gap_w;   // H
  std::vector<double> out_gap_b;   // 1
  double word_threshold = 0.5;
  double gap_threshold = 0.5;

  std::array<std::vector<double>*, 10> arrays();
  std::array<const std::vector<double>*, 10> arrays() const;
  size_t parameter_count() const;
};

struct QeNetGrads {
  std::vector<double> word_enc_w, word_enc_b, gap_enc_w, gap_enc_b, hidden_w,
      hidden_b, out_word_w, out_word_b, out_gap_w, out_gap_b;

  std::array<std::vector<double>*, 10> arrays();
  std::array<const std::vector<double>*, 10> arrays() const;
  void zero_like(const QeNetParams& params);
};

// Uniform He-style initialization: weights ~ U(-sqrt(6/fan_in),
// +sqrt(6/fan_in)), biases zero. Deterministic in the seed.
QeNetParams init_params(const NetDims& dims, uint64_t seed);

// Inverted dropout: units are dropped with probability `rate` at train time
// and the survivors scaled by 1/(1-rate); inference applies no scaling.
// Masks are regenerated deterministically from (seed, window_index).
struct DropoutPlan {
  double rate = 0.0;
  uint64_t seed = 0;
};

struct ForwardResult {
  double p_word = 0.5;
  double p_gap = 0.5;
  double logit_word = 0.0;
  double logit_gap = 0.0;
};

ForwardResult forward(const QeNetParams& params, const std::vector<double>& window,
                      bool train_mode, const DropoutPlan* plan = nullptr,
                      uint64_t window_index = 0);

// Smallest |pre-activation| over both hidden layers for this input. Gradient
// checks use it to reject evaluation points sitting on a ReLU kink, where
// finite differences and the subgradient legitimately disagree.
double min_preactivation_margin(const QeNetParams& params,
                                const std::vector<double>& window,
                                const DropoutPlan* plan = nullptr,
                                uint64_t window_index = 0);

// Mean over the batch of the summed word/gap binary cross-entropies; word
// terms of masked windows are excluded (and contribute zero gradient).
struct LossGrad {
  double loss = 0.0;
  QeNetGrads grads;
};

LossGrad loss_and_grad(const QeNetParams& params,
                       const std::vector<const Window*>& batch,
                       const DropoutPlan& plan);
double loss_value(const QeNetParams& params,
                  const std::vector<const Window*>& batch,
                  const DropoutPlan& plan);

// Canonical bias-corrected Adam.
struct AdamState {
  size_t step = 0;
  std::array<std::vector<double>, 10> m;
  std::array<std::vector<double>, 10> v;

  void zero_like(const QeNetParams& params);
};

struct TrainConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double dropout = 0.2;
  size_t patience = 10;
  size_t restarts = 10;
  size_t batch_size = 64;
  size_t max_epochs = 200;
  uint64_t seed = 1;
  size_t embed = 0;  // E; 0 = default ceil((F+G)/2)
  enum class DevMetric { FMulti, Loss } dev_metric = DevMetric::FMulti;
  int threads = 0;  // parallel restarts; <= 0 lets OpenMP decide
};

void adam_step(QeNetParams& params, const QeNetGrads& grads, AdamState& state,
               const TrainConfig& config);

struct EpochRecord {
  size_t restart = 0;
  size_t epoch = 0;
  double train_loss = 0.0;
  double dev_metric = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::vector<std::string> failures;  // diverged restarts, one note each
  size_t chosen_restart = 0;
  size_t chosen_epoch = 0;
  double chosen_dev_metric = 0.0;
};

struct TrainResult {
  QeNetParams params;  // best across restarts, thresholds calibrated
  TrainHistory history;
};

// Mini-batch Adam with dropout and early stopping (dev metric not improving
// for `patience` epochs), repeated over `restarts` seeds; returns the
// dev-best parameter set. Dev metric: thresholded F1-product of words and
// gaps (thresholds re-fit each evaluation) or mean dev loss. Restarts run
// in parallel; the result is independent of the thread count.
TrainResult train(const WindowBatch& train_windows, const WindowBatch& dev_windows,
                  const TrainConfig& config);

struct Predictions {
  std::vector<double> word_probs;  // aligned with windows; masked ones too
  std::vector<double> gap_probs;
};

Predictions predict(const QeNetParams& params, const std::vector<Window>& windows,
                    int threads = 0);

// ----- model files ------------------------------------------------------------

struct ModelFile {
  QeNetParams params;
  uint32_t max_len = 0;         // L of the feature schema
  uint32_t baseline_width = 0;  // B of the feature schema
};

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

// Throws SchemaError when a feature file cannot feed this model.
void check_model_features(const ModelFile& model, const FeatureFileHeader& header);

}  // namespace phraseqe

#endif
