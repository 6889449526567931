#ifndef PHRASEQE_SUBSEG_HPP
#define PHRASEQE_SUBSEG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "phraseqe/phrase_store.hpp"

namespace phraseqe {

inline constexpr const char* kBosToken = "<s>";
inline constexpr const char* kEosToken = "</s>";

// T extended with the imaginary boundary words: index 0 holds "<s>",
// indexes 1..|T| the real words, index |T|+1 "</s>". Word positions in the
// extended vector therefore coincide with the usual 1-based word numbering.
Tokens extend_with_boundaries(const Tokens& tokens);

struct Subsegment {
  Tokens tokens;
  size_t start = 0;  // index of the first token in the input sequence
};

// All contiguous n-grams in order; empty when n > |tokens|. Requires n >= 1.
std::vector<Subsegment> subsegments(const Tokens& tokens, size_t n);

// Inclusive position interval [begin, end] in a boundary-extended sequence.
struct Span {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const Span&) const = default;

  bool covers(size_t j) const { return begin <= j && j <= end; }
  // Whether [j, j+1] lies inside the interval (the gap-covering test).
  bool covers_gap(size_t j) const { return begin <= j && j + 1 <= end; }
  // Fully inside the real words 1..n_words, i.e. a span of the plain T.
  bool plain(size_t n_words) const { return begin >= 1 && end <= n_words; }
};

// Every occurrence of `phrase` in `extended` (token-wise, exact match).
std::vector<Span> spans(const Tokens& phrase, const Tokens& extended);

enum class QueryDirection { SL_TL, TL_SL };

// One matched phrase pair: sigma occurs in the boundary-extended S, tau has
// occurrences in the boundary-extended T recorded in tau_spans. In the
// TL->SL direction the same pairs are found via the target index and carry
// the reverse conditional probability; prob is the direction-appropriate
// translation probability summed by the Freq features.
struct SpannedMatch {
  std::string sigma;
  std::string tau;
  std::vector<Span> tau_spans;
  QueryDirection direction = QueryDirection::SL_TL;
  double prob = 0.0;

  bool has_plain_span(size_t n_words) const {
    for (const Span& s : tau_spans)
      if (s.plain(n_words)) return true;
    return false;
  }
};

// All store pairs (sigma, tau) with sigma a sub-segment of any length of the
// boundary-extended S and tau an n-token sub-segment of the boundary-extended
// T. Inputs are the original (unlowercased) token sequences; matching is
// lowercase. Results are sorted by (sigma, tau) for determinism.
std::vector<SpannedMatch> match_pairs(const PhrasePairStore& store,
                                      const Tokens& source_tokens,
                                      const Tokens& mt_tokens, size_t n,
                                      QueryDirection direction);

}  // namespace phraseqe

#endif
