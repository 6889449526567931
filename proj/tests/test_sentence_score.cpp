#include <doctest.h>

#include <random>

#include "phraseqe/sentence_score.hpp"

using namespace phraseqe;

TEST_CASE("approximate_ter worked examples") {
  // BAD word followed by BAD gap pairs into one replacement.
  ApproxTer a = approximate_ter({Tag::BAD, Tag::OK, Tag::BAD},
                                {Tag::OK, Tag::BAD, Tag::OK, Tag::OK});
  CHECK(a.counts.replacements == 1);
  CHECK(a.counts.deletions == 1);
  CHECK(a.counts.insertions == 0);
  CHECK(a.score == doctest::Approx(2.0 / 3.0));

  ApproxTer all_ok = approximate_ter({Tag::OK, Tag::OK},
                                     {Tag::OK, Tag::OK, Tag::OK});
  CHECK(all_ok.score == 0.0);
  CHECK(all_ok.counts.total() == 0);

  // Everything BAD on |T|=2: two replacements plus the leading gap.
  ApproxTer all_bad = approximate_ter({Tag::BAD, Tag::BAD},
                                      {Tag::BAD, Tag::BAD, Tag::BAD});
  CHECK(all_bad.counts.replacements == 2);
  CHECK(all_bad.counts.deletions == 0);
  CHECK(all_bad.counts.insertions == 1);
  CHECK(all_bad.score == doctest::Approx(1.5));
}

TEST_CASE("approximate_ter validates lengths") {
  CHECK_THROWS_AS(approximate_ter({}, {Tag::OK}), DataError);
  CHECK_THROWS_AS(approximate_ter({Tag::OK}, {Tag::OK}), DataError);
}

namespace {

double score_of(const std::vector<Tag>& words, const std::vector<Tag>& gaps) {
  return approximate_ter(words, gaps).score;
}

}  // namespace

TEST_CASE("score is zero iff every label is OK") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t m = 1 + rng() % 6;
    std::vector<Tag> words(m), gaps(m + 1);
    bool any_bad = false;
    for (auto& t : words) {
      t = rng() % 3 == 0 ? Tag::BAD : Tag::OK;
      any_bad |= t == Tag::BAD;
    }
    for (auto& t : gaps) {
      t = rng() % 4 == 0 ? Tag::BAD : Tag::OK;
      any_bad |= t == Tag::BAD;
    }
    ApproxTer r = approximate_ter(words, gaps);
    CHECK((r.score == 0.0) == !any_bad);
    // Every BAD label lands in exactly one bucket.
    size_t bad_words = 0, bad_gaps = 0;
    for (Tag t : words) bad_words += t == Tag::BAD;
    for (Tag t : gaps) bad_gaps += t == Tag::BAD;
    CHECK(2 * r.counts.replacements + r.counts.deletions + r.counts.insertions ==
          bad_words + bad_gaps);
    CHECK(r.counts.replacements + r.counts.deletions <= r.counts.mt_length);
    CHECK(r.counts.insertions <= r.counts.mt_length + 1);
  }
}

TEST_CASE("flipping any single label OK->BAD never decreases the score") {
  std::mt19937 rng(321);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t m = 1 + rng() % 6;
    std::vector<Tag> words(m), gaps(m + 1);
    for (auto& t : words) t = rng() % 2 ? Tag::BAD : Tag::OK;
    for (auto& t : gaps) t = rng() % 2 ? Tag::BAD : Tag::OK;
    const double base = score_of(words, gaps);

    const size_t flip = rng() % (2 * m + 1);
    if (flip < m) {
      if (words[flip] == Tag::BAD) continue;
      words[flip] = Tag::BAD;
    } else {
      const size_t g = flip - m;
      if (gaps[g] == Tag::BAD) continue;
      gaps[g] = Tag::BAD;
    }
    CHECK(score_of(words, gaps) >= base - 1e-12);
  }
}

TEST_CASE("ranking is ascending and stable") {
  auto order = rank_by_score({0.5, 0.1, 0.5, 0.0});
  CHECK(order == std::vector<size_t>{3, 1, 0, 2});
}
