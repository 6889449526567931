#include "phraseqe/sentence_score.hpp"

#include <algorithm>
#include <numeric>

namespace phraseqe {

ApproxTer approximate_ter(const std::vector<Tag>& word_labels,
                          const std::vector<Tag>& gap_labels) {
  const size_t m = word_labels.size();
  if (m == 0) throw DataError("approximate_ter: empty sentence");
  if (gap_labels.size() != m + 1)
    throw DataError("approximate_ter: need |T|+1 gap labels");

  ApproxTer out;
  out.counts.mt_length = m;
  std::vector<bool> gap_consumed(m + 1, false);
  for (size_t j = 1; j <= m; ++j) {
    if (word_labels[j - 1] != Tag::BAD) continue;
    if (gap_labels[j] == Tag::BAD) {
      ++out.counts.replacements;  // word t_j together with gap after it
      gap_consumed[j] = true;
    } else {
      ++out.counts.deletions;
    }
  }
  for (size_t j = 0; j <= m; ++j)
    if (gap_labels[j] == Tag::BAD && !gap_consumed[j]) ++out.counts.insertions;

  out.score = static_cast<double>(out.counts.total()) / static_cast<double>(m);
  return out;
}

std::vector<size_t> rank_by_score(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  return order;
}

}  // namespace phraseqe
