#ifndef PHRASEQE_REFERENCE_HPP
#define PHRASEQE_REFERENCE_HPP

#include <vector>

#include "phraseqe/common.hpp"
#include "phraseqe/edit_align.hpp"

namespace phraseqe::reference {

// Slow reference implementation of every sub-segment feature, written as a
// direct transcription of the feature definitions: it enumerates all
// sub-segment pairs, scans for occurrences, and recomputes probabilities and
// edit scripts from scratch on every call. It shares no code with the
// production extractor and exists as the test oracle and benchmark baseline.
//
// Tokens are compared verbatim; callers supply lowercased fixtures.

struct RefPair {
  Tokens sigma;
  Tokens tau;
  double count = 1.0;
};

struct RefFixture {
  Tokens source;                // S, without boundary tokens
  Tokens mt;                    // T, without boundary tokens
  std::vector<RefPair> pairs;   // M; duplicate pairs accumulate their counts
};

// Word features, j in 1..|T|. The matched pair set is the same in both query
// directions; only the probability conditioning differs, so keep() has no
// direction argument while freq_keep() takes `reverse` (true = TL->SL,
// i.e. p(sigma|tau)).
double keep(const RefFixture& fx, size_t j, size_t n);
double freq_keep(const RefFixture& fx, size_t j, size_t n, bool reverse);
double align_keep(const RefFixture& fx, size_t j, size_t n, EditOp e);

// Gap features, j in 0..|T| (0 is the slot before the first word).
double noinsert(const RefFixture& fx, size_t j, size_t n);
double freq_noins(const RefFixture& fx, size_t j, size_t n, bool reverse);
double align_noins(const RefFixture& fx, size_t j, size_t n, GapOp e);

}  // namespace phraseqe::reference

#endif
