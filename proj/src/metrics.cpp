#include "phraseqe/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace phraseqe {

F1Scores f1_suite(const std::vector<Tag>& predicted, const std::vector<Tag>& gold) {
  if (predicted.size() != gold.size())
    throw DataError("f1_suite: prediction/gold length mismatch");

  size_t tp_bad = 0, fp_bad = 0, fn_bad = 0;
  size_t tp_ok = 0, fp_ok = 0, fn_ok = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    const bool pb = predicted[i] == Tag::BAD, gb = gold[i] == Tag::BAD;
    tp_bad += pb && gb;
    fp_bad += pb && !gb;
    fn_bad += !pb && gb;
    tp_ok += !pb && !gb;
    fp_ok += !pb && gb;
    fn_ok += pb && !gb;
  }
  auto f1 = [](size_t tp, size_t fp, size_t fn) {
    const double denom = static_cast<double>(2 * tp + fp + fn);
    return denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
  };
  F1Scores out;
  out.f_bad = f1(tp_bad, fp_bad, fn_bad);
  out.f_ok = f1(tp_ok, fp_ok, fn_ok);
  out.f_multi = out.f_bad * out.f_ok;
  return out;
}

ThresholdSearch line_search_threshold(const std::vector<double>& probs,
                                      const std::vector<Tag>& gold) {
  if (probs.empty() || probs.size() != gold.size())
    throw DataError("line_search_threshold: empty input or length mismatch");

  const bool has_bad = std::find(gold.begin(), gold.end(), Tag::BAD) != gold.end();
  const bool has_ok = std::find(gold.begin(), gold.end(), Tag::OK) != gold.end();
  if (!has_bad || !has_ok) {
    // The F1 product is identically zero; no threshold is better than another.
    return {0.5, 0.0, true};
  }

  std::vector<double> sorted = probs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<double> candidates;
  candidates.push_back(0.0);
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    candidates.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  candidates.push_back(1.0);
  std::sort(candidates.begin(), candidates.end());

  ThresholdSearch best;
  best.threshold = candidates.front();
  best.f_multi = -1.0;
  std::vector<Tag> pred(gold.size());
  for (double thr : candidates) {
    for (size_t i = 0; i < probs.size(); ++i) pred[i] = apply_threshold(probs[i], thr);
    const double fm = f1_suite(pred, gold).f_multi;
    if (fm > best.f_multi) {
      best.f_multi = fm;
      best.threshold = thr;
    }
  }
  return best;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson(const std::vector<double>& x,
                              const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

SentenceMetrics sentence_metrics(const std::vector<double>& predicted,
                                 const std::vector<double>& gold) {
  if (predicted.size() != gold.size())
    throw DataError("sentence_metrics: length mismatch");
  if (predicted.empty()) throw DataError("sentence_metrics: empty input");

  SentenceMetrics out;
  double abs_sum = 0.0, sq_sum = 0.0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - gold[i];
    abs_sum += std::fabs(d);
    sq_sum += d * d;
  }
  out.mae = abs_sum / static_cast<double>(predicted.size());
  out.rmse = std::sqrt(sq_sum / static_cast<double>(predicted.size()));
  if (predicted.size() >= 2) {
    out.pearson_r = pearson(predicted, gold);
    out.spearman_rho = pearson(average_ranks(predicted), average_ranks(gold));
  }
  return out;
}

}  // namespace phraseqe
