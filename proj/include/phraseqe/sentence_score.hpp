#ifndef PHRASEQE_SENTENCE_SCORE_HPP
#define PHRASEQE_SENTENCE_SCORE_HPP

#include <cstddef>
#include <vector>

#include "phraseqe/corpus.hpp"

namespace phraseqe {

struct EditCounts {
  size_t replacements = 0;
  size_t deletions = 0;
  size_t insertions = 0;
  size_t mt_length = 0;

  size_t total() const { return replacements + deletions + insertions; }
};

struct ApproxTer {
  EditCounts counts;
  double score = 0.0;  // total edits / |T|; may exceed 1
};

// TER-like score from predicted labels: a BAD word whose following gap is
// also BAD counts as one replacement consuming both; every other BAD word is
// a deletion; every other BAD gap (the leading gap included) a one-word
// insertion.
ApproxTer approximate_ter(const std::vector<Tag>& word_labels,
                          const std::vector<Tag>& gap_labels);

// Sentence indices ordered by ascending score; ties keep original order.
std::vector<size_t> rank_by_score(const std::vector<double>& scores);

}  // namespace phraseqe

#endif
