#ifndef PHRASEQE_FEATURES_HPP
#define PHRASEQE_FEATURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "phraseqe/corpus.hpp"
#include "phraseqe/edit_align.hpp"
#include "phraseqe/subseg.hpp"

namespace phraseqe {

// Fixed component order inside one feature vector. Per word, for each
// sub-segment length n = 1..L:
//   keep(SL->TL), keep(TL->SL), freq(SL->TL), freq(TL->SL),
//   align(match), align(delete)
// followed by the baseline block. Per gap, for each n = 2..L:
//   noinsert(SL->TL), noinsert(TL->SL), freq(SL->TL), freq(TL->SL),
//   align(match), align(insert)
inline constexpr size_t kFamiliesPerN = 6;
inline constexpr const char* kComponentOrderTag =
    "word:keep2,freq2,align2+baseline;gap:noins2,freq2,align2;v1";

enum class WordComponent : size_t {
  KeepFwd = 0,
  KeepRev = 1,
  FreqFwd = 2,
  FreqRev = 3,
  AlignMatch = 4,
  AlignDelete = 5,
};

enum class GapComponent : size_t {
  NoInsertFwd = 0,
  NoInsertRev = 1,
  FreqFwd = 2,
  FreqRev = 3,
  AlignMatch = 4,
  AlignInsert = 5,
};

inline size_t word_component_offset(size_t n, WordComponent c) {
  return (n - 1) * kFamiliesPerN + static_cast<size_t>(c);
}
inline size_t gap_component_offset(size_t n, GapComponent c) {
  return (n - 2) * kFamiliesPerN + static_cast<size_t>(c);
}

inline size_t word_subseg_width(size_t max_len) { return kFamiliesPerN * max_len; }
inline size_t gap_vector_width(size_t max_len) {
  return max_len < 2 ? 0 : kFamiliesPerN * (max_len - 1);
}

// Column labels matching the layout above (without / with baseline columns).
std::vector<std::string> word_component_names(size_t max_len, size_t baseline_width);
std::vector<std::string> gap_component_names(size_t max_len);

struct FeatureOptions {
  size_t max_len = 5;  // L: longest tau considered
};

// All features of one sentence: |T| word vectors of width F = 6L + B and
// |T|+1 gap vectors of width G = 6(L-1), plus the matched pair sets per n
// kept for inspection and dumps.
struct FeatureContext {
  size_t n_words = 0;
  size_t max_len = 0;
  size_t baseline_width = 0;
  std::vector<std::vector<double>> word_vectors;
  std::vector<std::vector<double>> gap_vectors;
  std::vector<std::vector<SpannedMatch>> matches_by_len;  // index n-1

  size_t word_width() const { return word_subseg_width(max_len) + baseline_width; }
  size_t gap_width() const { return gap_vector_width(max_len); }
};

// baseline_rows, when given, must hold one vector per word of the sentence.
FeatureContext build_feature_context(
    const QeSentence& sentence, const PhrasePairStore& store,
    const std::vector<std::vector<double>>* baseline_rows,
    const FeatureOptions& opts);

// Per-sentence extraction over a frozen store; parallelized across
// sentences with OpenMP. threads <= 0 means the OpenMP default. Results are
// identical for any thread count.
std::vector<FeatureContext> extract_contexts(
    const std::vector<QeSentence>& sentences, const PhrasePairStore& store,
    const BaselineFeatureTable* baseline, const FeatureOptions& opts,
    int threads = 0);

// Accessors into a built context, mirroring the feature definitions.
// Word positions j are 1-based; gap positions run 0..|T|.
double keep(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d);
double freq_keep(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d);
double align_keep(const FeatureContext& ctx, size_t j, size_t n, EditOp e);
double noinsert(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d);
double freq_noins(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d);
double align_noins(const FeatureContext& ctx, size_t j, size_t n, GapOp e);

// ----- context windows -------------------------------------------------------

// One training/prediction example: the word and gap vectors of positions
// i-C..i+C concatenated (word slots first, then gap slots), zero-padded
// outside the sentence. Window i=0 exists for gap 0 only: its word slot is
// zero and the word output is masked.
struct Window {
  std::vector<double> values;
  bool word_masked = false;
  int8_t word_gold = -1;  // 0 = OK, 1 = BAD, -1 = unknown
  int8_t gap_gold = -1;
  uint32_t sentence = 0;
  uint32_t position = 0;  // i in 0..|T|
};

size_t window_width(size_t context, size_t word_width, size_t gap_width);

// Windows plus the schema they were cut with.
struct WindowBatch {
  size_t word_width = 0;  // F
  size_t gap_width = 0;   // G
  size_t context = 0;     // C
  std::vector<Window> windows;
};

WindowBatch build_windows(const std::vector<FeatureContext>& ctxs, size_t context,
                          const std::vector<QeSentence>* gold = nullptr);

// ----- feature files ---------------------------------------------------------

struct FeatureFileHeader {
  uint32_t max_len = 0;
  uint32_t baseline_width = 0;
  uint32_t word_width = 0;
  uint32_t gap_width = 0;
  std::string order_tag;
};

void save_feature_file(const std::string& path,
                       const std::vector<FeatureContext>& ctxs, size_t max_len,
                       size_t baseline_width);

struct LoadedFeatures {
  FeatureFileHeader header;
  std::vector<FeatureContext> contexts;  // match caches empty
};

LoadedFeatures load_feature_file(const std::string& path);

// Human-readable dump: one row per word/gap with named columns.
void dump_features_tsv(const std::string& path,
                       const std::vector<FeatureContext>& ctxs);

}  // namespace phraseqe

#endif
