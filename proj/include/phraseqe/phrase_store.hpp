#ifndef PHRASEQE_PHRASE_STORE_HPP
#define PHRASEQE_PHRASE_STORE_HPP

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "phraseqe/common.hpp"

namespace phraseqe {

// Bilingual evidence set: phrase pairs with joint counts accumulated across
// tables, indexed by both sides. Phrases are stored lowercased and
// space-joined. Build with ingest_phrase_table(), then freeze(); queries are
// only legal on a frozen store, which is immutable and safe to share across
// threads.
class PhrasePairStore {
public:
  struct Target {
    std::string phrase;
    double count = 0.0;
  };

  struct SourceEntry {
    std::vector<Target> targets;  // sorted by phrase
    double marginal = 0.0;        // sum of target counts
  };

  void add(const Tokens& source, const Tokens& target, double count);
  void freeze();
  bool frozen() const { return frozen_; }

  size_t size() const { return n_pairs_; }
  size_t max_source_len() const { return max_source_len_; }
  size_t max_target_len() const { return max_target_len_; }

  // Exact lowercased lookup; nullptr / empty result when absent.
  const SourceEntry* find_source(const std::string& source_phrase) const;
  std::vector<std::pair<std::string, double>> lookup_by_source(
      const std::string& source_phrase) const;
  std::vector<std::pair<std::string, double>> lookup_by_target(
      const std::string& target_phrase) const;

  double count(const std::string& source_phrase,
               const std::string& target_phrase) const;
  double source_marginal(const std::string& source_phrase) const;
  double target_marginal(const std::string& target_phrase) const;

  // p(target|source) from accumulated counts. The pair must be present.
  double translation_prob(const std::string& source_phrase,
                          const std::string& target_phrase) const;
  // p(source|target) from the inverted marginals.
  double reverse_translation_prob(const std::string& source_phrase,
                                  const std::string& target_phrase) const;

  // All pairs as (source, target, count), sorted; mainly for serialization
  // and the reference implementation.
  std::vector<std::tuple<std::string, std::string, double>> all_pairs() const;

private:
  const Target* find_pair(const std::string& src, const std::string& tgt) const;

  // Ordered maps during build keep everything independent of insertion order.
  std::map<std::string, std::map<std::string, double>> building_;
  std::unordered_map<std::string, SourceEntry> by_source_;
  std::unordered_map<std::string, SourceEntry> by_target_;
  size_t n_pairs_ = 0;
  size_t max_source_len_ = 0;
  size_t max_target_len_ = 0;
  bool frozen_ = false;
};

// Reads one phrase table in the usual "src ||| tgt ||| scores ||| align |||
// counts" layout and accumulates joint counts into the store. The joint
// count is the third number of the counts field when three are present,
// otherwise the last one. `invert` swaps the two sides. Both sides are
// lowercased. Gzip input is handled transparently.
void ingest_phrase_table(const std::string& path, bool invert,
                         PhrasePairStore& store);

// Versioned binary cache for fast reload; rejects version mismatches.
void save_store_cache(const PhrasePairStore& store, const std::string& path);
PhrasePairStore load_store_cache(const std::string& path);

}  // namespace phraseqe

#endif
