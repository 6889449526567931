#include <doctest.h>

#include <cmath>
#include <random>

#include "phraseqe/metrics.hpp"

using namespace phraseqe;

TEST_CASE("f1_suite on the worked confusion matrix") {
  const std::vector<Tag> gold = {Tag::BAD, Tag::BAD, Tag::OK, Tag::OK};
  const std::vector<Tag> pred = {Tag::BAD, Tag::OK, Tag::OK, Tag::OK};
  F1Scores f = f1_suite(pred, gold);
  CHECK(f.f_bad == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.f_ok == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(f.f_multi == doctest::Approx(2.0 / 3.0 * 0.8).epsilon(1e-9));
}

TEST_CASE("f1_suite edges") {
  const std::vector<Tag> gold = {Tag::BAD, Tag::OK};
  F1Scores perfect = f1_suite(gold, gold);
  CHECK(perfect.f_bad == 1.0);
  CHECK(perfect.f_ok == 1.0);
  CHECK(perfect.f_multi == 1.0);

  F1Scores blind = f1_suite({Tag::OK, Tag::OK}, gold);
  CHECK(blind.f_bad == 0.0);
  CHECK(blind.f_multi == 0.0);

  CHECK_THROWS_AS(f1_suite({Tag::OK}, gold), DataError);
}

TEST_CASE("line search finds the separating threshold") {
  ThresholdSearch r = line_search_threshold({0.1, 0.4, 0.9},
                                            {Tag::OK, Tag::BAD, Tag::BAD});
  CHECK(r.threshold == doctest::Approx(0.25));
  CHECK(r.f_multi == doctest::Approx(1.0));
  CHECK_FALSE(r.degenerate);
}

TEST_CASE("line search degenerates on single-class gold") {
  ThresholdSearch r = line_search_threshold({0.2, 0.8}, {Tag::BAD, Tag::BAD});
  CHECK(r.degenerate);
  CHECK(r.threshold == doctest::Approx(0.5));
}

TEST_CASE("line search beats a dense grid on random inputs") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 2 + rng() % 30;
    std::vector<double> probs(n);
    std::vector<Tag> gold(n);
    bool has_ok = false, has_bad = false;
    for (size_t i = 0; i < n; ++i) {
      probs[i] = uni(rng);
      gold[i] = rng() % 2 ? Tag::BAD : Tag::OK;
      (gold[i] == Tag::OK ? has_ok : has_bad) = true;
    }
    if (!has_ok || !has_bad) continue;

    ThresholdSearch r = line_search_threshold(probs, gold);
    double grid_best = -1.0;
    std::vector<Tag> pred(n);
    for (int g = 0; g <= 10000; ++g) {
      const double thr = static_cast<double>(g) / 10000.0;
      for (size_t i = 0; i < n; ++i) pred[i] = apply_threshold(probs[i], thr);
      grid_best = std::max(grid_best, f1_suite(pred, gold).f_multi);
    }
    CHECK(r.f_multi >= grid_best - 1e-12);
  }
}

TEST_CASE("sentence metrics identity and reversal") {
  SentenceMetrics id = sentence_metrics({1, 2, 3}, {1, 2, 3});
  CHECK(*id.pearson_r == doctest::Approx(1.0));
  CHECK(*id.spearman_rho == doctest::Approx(1.0));
  CHECK(id.mae == 0.0);
  CHECK(id.rmse == 0.0);

  SentenceMetrics rev = sentence_metrics({1, 2, 3}, {3, 2, 1});
  CHECK(*rev.pearson_r == doctest::Approx(-1.0));
  CHECK(*rev.spearman_rho == doctest::Approx(-1.0));
}

TEST_CASE("spearman is invariant to monotone transforms, pearson is not") {
  const std::vector<double> gold = {1, 2, 3, 4, 5};
  const std::vector<double> pred = {1, 4, 9, 16, 25};  // squared positives
  SentenceMetrics m = sentence_metrics(pred, gold);
  CHECK(*m.spearman_rho == doctest::Approx(1.0));
  CHECK(*m.pearson_r < 1.0);
  CHECK(*m.pearson_r > 0.9);
}

TEST_CASE("zero variance reports undefined correlations, not zero") {
  SentenceMetrics m = sentence_metrics({1, 1, 1}, {1, 2, 3});
  CHECK_FALSE(m.pearson_r.has_value());
  CHECK_FALSE(m.spearman_rho.has_value());
  CHECK(m.mae == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("spearman uses average ranks on ties") {
  // pred ties on the middle two; gold is strictly increasing.
  SentenceMetrics m = sentence_metrics({1, 2, 2, 3}, {1, 2, 3, 4});
  // ranks pred: 1, 2.5, 2.5, 4 vs gold 1,2,3,4 -> rho = 0.9486...
  CHECK(*m.spearman_rho == doctest::Approx(0.9486832980505138).epsilon(1e-9));
}

TEST_CASE("mae never exceeds rmse") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> uni(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 2 + rng() % 20;
    std::vector<double> a(n), b(n);
    for (size_t i = 0; i < n; ++i) {
      a[i] = uni(rng);
      b[i] = uni(rng);
    }
    SentenceMetrics m = sentence_metrics(a, b);
    CHECK(m.mae <= m.rmse + 1e-12);
    if (m.pearson_r) {
      CHECK(*m.pearson_r <= 1.0 + 1e-12);
      CHECK(*m.pearson_r >= -1.0 - 1e-12);
    }
    if (m.spearman_rho) {
      CHECK(*m.spearman_rho <= 1.0 + 1e-12);
      CHECK(*m.spearman_rho >= -1.0 - 1e-12);
    }
  }
}
