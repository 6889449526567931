#ifndef PHRASEQE_CORPUS_HPP
#define PHRASEQE_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "phraseqe/common.hpp"

namespace phraseqe {

enum class Tag : uint8_t { OK = 0, BAD = 1 };

const char* tag_name(Tag t);
Tag parse_tag(const std::string& s);

// One (source, MT) pair with optional gold annotation. Word tags cover
// t_1..t_|T|; gap tags cover the |T|+1 inter-word positions including the
// slots before the first and after the last word.
struct QeSentence {
  Tokens source_tokens;
  Tokens mt_tokens;
  std::optional<std::vector<Tag>> gold_word_tags;  // size |T|
  std::optional<std::vector<Tag>> gold_gap_tags;   // size |T|+1
  std::optional<double> gold_hter;
};

// Tag files interleave gap and word tags on one line:
//   gap_0 word_1 gap_1 word_2 ... word_n gap_n   (2n+1 tags)
struct TagPair {
  std::vector<Tag> word_tags;
  std::vector<Tag> gap_tags;
};

TagPair parse_tag_line(const std::string& line);
std::string format_tag_line(const std::vector<Tag>& word_tags,
                            const std::vector<Tag>& gap_tags);

std::vector<QeSentence> load_qe_dataset(const std::string& src_path,
                                        const std::string& mt_path,
                                        const std::string& tags_path = "",
                                        const std::string& hter_path = "");

// ----- baseline features ---------------------------------------------------
//
// The organizers' per-word feature files are tab separated, one row per
// word, sentences separated by blank lines (a flat file without blank lines
// is sliced by the known sentence lengths instead). The schema says which
// columns are kept numeric and which one holds the POS category.

struct BaselineSchema {
  int total_columns = 28;
  std::vector<int> numeric_columns;  // 0-based column indices
  int pos_column = -1;               // -1 when absent
  bool use_pos = true;               // mirrors the option of dropping POS
  std::vector<std::string> pos_vocab;  // frozen on the training split

  bool has_vocab() const { return !pos_vocab.empty(); }
  // Width of one baseline vector under this schema.
  int width() const;
};

BaselineSchema load_baseline_schema(const std::string& path);
void save_baseline_schema(const BaselineSchema& schema, const std::string& path);

// Distinct POS values of the file's POS column, sorted.
std::vector<std::string> fit_pos_vocab(const std::string& path,
                                       const BaselineSchema& schema);

struct BaselineFeatureTable {
  int width = 0;
  // vectors[s][w] is the baseline vector of word w of sentence s.
  std::vector<std::vector<std::vector<double>>> vectors;
};

// sentence_lengths give |T| per sentence; used to validate blank-line
// groups or to slice a flat file.
BaselineFeatureTable load_baseline_features(
    const std::string& path, const BaselineSchema& schema,
    const std::vector<size_t>& sentence_lengths);

// One-hot encodes `pos` against the frozen vocabulary; unseen values give
// an all-zero block.
void append_pos_one_hot(const std::string& pos,
                        const std::vector<std::string>& vocab,
                        std::vector<double>& out);

// ----- prediction output ----------------------------------------------------

struct PredictionFiles {
  std::string tags;             // interleaved, round-trips via load_qe_dataset
  std::string word_tags;        // one line per sentence, |T| tags
  std::string gap_tags;         // one line per sentence, |T|+1 tags
  std::string probabilities;    // interleaved BAD-probabilities, tab separated
  std::string sentence_scores;  // one score per line
  std::string ranking;          // sentence indices by ascending score
};

PredictionFiles prediction_file_names(const std::string& out_dir);

void write_predictions(const std::vector<QeSentence>& sentences,
                       const std::vector<std::vector<double>>& word_probs,
                       const std::vector<std::vector<double>>& gap_probs,
                       const std::vector<std::vector<Tag>>& word_labels,
                       const std::vector<std::vector<Tag>>& gap_labels,
                       const std::vector<double>& sentence_scores,
                       const std::vector<size_t>& ranking,
                       const std::string& out_dir);

}  // namespace phraseqe

#endif
