#ifndef PHRASEQE_METRICS_HPP
#define PHRASEQE_METRICS_HPP

#include <optional>
#include <vector>

#include "phraseqe/corpus.hpp"

namespace phraseqe {

// probability >= threshold means BAD.
inline Tag apply_threshold(double prob, double threshold) {
  return prob >= threshold ? Tag::BAD : Tag::OK;
}

struct F1Scores {
  double f_bad = 0.0;
  double f_ok = 0.0;
  double f_multi = 0.0;  // f_bad * f_ok
};

F1Scores f1_suite(const std::vector<Tag>& predicted, const std::vector<Tag>& gold);

struct ThresholdSearch {
  double threshold = 0.5;
  double f_multi = 0.0;
  bool degenerate = false;  // single-class gold; threshold falls back to 0.5
};

// Exact line search for the threshold maximizing F1_OK * F1_BAD. Candidates
// are 0, 1 and the midpoints of consecutive distinct probabilities, which
// cover every achievable labelling; ties go to the smallest threshold.
ThresholdSearch line_search_threshold(const std::vector<double>& probs,
                                      const std::vector<Tag>& gold);

struct SentenceMetrics {
  std::optional<double> pearson_r;    // undefined on zero variance
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> spearman_rho; // average ranks on ties
};

SentenceMetrics sentence_metrics(const std::vector<double>& predicted,
                                 const std::vector<double>& gold);

}  // namespace phraseqe

#endif
