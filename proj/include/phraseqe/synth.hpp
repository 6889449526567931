#ifndef PHRASEQE_SYNTH_HPP
#define PHRASEQE_SYNTH_HPP

#include <cstdint>
#include <string>

namespace phraseqe {

// Generator for the bundled demo corpus: a toy bijective language pair whose
// phrase-table evidence decides the gold labels. Source sentences walk a
// cyclic vocabulary chain; the "MT output" corrupts the reference by
// substituting words with out-of-table noise (word BAD) or dropping them
// (gap BAD). The planted sentence score applies the same TER-style counting
// used by the predictor, so perfect tags give a perfect correlation.
struct SynthConfig {
  size_t vocabulary = 40;
  size_t noise_words = 20;
  size_t train_sentences = 2000;
  size_t dev_sentences = 200;
  size_t test_sentences = 200;
  size_t min_len = 3;
  size_t max_len = 8;
  double p_substitute = 0.22;
  double p_delete = 0.15;
  uint64_t seed = 2024;
};

struct SynthPaths {
  std::string table_fwd;  // source -> target phrase table
  std::string table_rev;  // same pairs written target-first; ingest with invert
  std::string train_src, train_mt, train_tags, train_hter;
  std::string dev_src, dev_mt, dev_tags, dev_hter;
  std::string test_src, test_mt, test_tags, test_hter;
};

SynthPaths generate_synthetic_corpus(const SynthConfig& config,
                                     const std::string& out_dir);

}  // namespace phraseqe

#endif
