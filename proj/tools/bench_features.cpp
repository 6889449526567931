// Timing harness for feature extraction: literal reference implementation
// vs the production kernel, and the production kernel across thread counts.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "phraseqe/features.hpp"
#include "phraseqe/net.hpp"
#include "phraseqe/phrase_store.hpp"
#include "phraseqe/reference.hpp"

using namespace phraseqe;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Corpus {
  PhrasePairStore store;
  std::vector<QeSentence> sentences;
  std::vector<reference::RefPair> pairs;
};

Corpus make_corpus(size_t n_sentences, size_t vocab, size_t n_pairs,
                   uint64_t seed) {
  Corpus c;
  Rng rng(seed);
  auto word = [&](const char* prefix, size_t k) {
    return std::string(prefix) + std::to_string(k);
  };
  for (size_t i = 0; i < n_pairs; ++i) {
    Tokens sigma, tau;
    const size_t ls = 1 + rng.index(3), lt = 1 + rng.index(3);
    for (size_t k = 0; k < ls; ++k) sigma.push_back(word("s", rng.index(vocab)));
    for (size_t k = 0; k < lt; ++k) tau.push_back(word("t", rng.index(vocab)));
    const double count = 1.0 + static_cast<double>(rng.index(8));
    c.store.add(sigma, tau, count);
    c.pairs.push_back({sigma, tau, count});
  }
  c.store.freeze();
  for (size_t s = 0; s < n_sentences; ++s) {
    QeSentence sent;
    const size_t ls = 4 + rng.index(6), lt = 4 + rng.index(6);
    for (size_t k = 0; k < ls; ++k)
      sent.source_tokens.push_back(word("s", rng.index(vocab)));
    for (size_t k = 0; k < lt; ++k)
      sent.mt_tokens.push_back(word("t", rng.index(vocab)));
    c.sentences.push_back(std::move(sent));
  }
  return c;
}

// Full reference extraction of one sentence (every family, position, n).
void reference_extract(const reference::RefFixture& fx, size_t max_len,
                       double& sink) {
  for (size_t n = 1; n <= max_len; ++n) {
    for (size_t j = 1; j <= fx.mt.size(); ++j) {
      sink += reference::keep(fx, j, n);
      sink += reference::freq_keep(fx, j, n, false);
      sink += reference::freq_keep(fx, j, n, true);
      sink += reference::align_keep(fx, j, n, EditOp::Match);
      sink += reference::align_keep(fx, j, n, EditOp::Delete);
    }
    if (n < 2) continue;
    for (size_t j = 0; j <= fx.mt.size(); ++j) {
      sink += reference::noinsert(fx, j, n);
      sink += reference::freq_noins(fx, j, n, false);
      sink += reference::freq_noins(fx, j, n, true);
      sink += reference::align_noins(fx, j, n, GapOp::Match);
      sink += reference::align_noins(fx, j, n, GapOp::Insert);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  size_t n_sentences = 400;
  size_t n_ref_sentences = 40;
  int max_threads = 4;
  if (argc > 1) n_sentences = static_cast<size_t>(std::atol(argv[1]));
  if (argc > 2) max_threads = std::atoi(argv[2]);

  const size_t max_len = 5;
  Corpus corpus = make_corpus(n_sentences, /*vocab=*/30, /*n_pairs=*/600, 7);
  FeatureOptions opts;
  opts.max_len = max_len;

  std::printf("corpus: %zu sentences, %zu phrase pairs, L=%zu\n",
              corpus.sentences.size(), corpus.store.size(), max_len);

  // Literal reference, serial, on a subset (it is orders of magnitude slower).
  double sink = 0.0;
  auto t0 = Clock::now();
  for (size_t s = 0; s < std::min(n_ref_sentences, corpus.sentences.size()); ++s) {
    reference::RefFixture fx{corpus.sentences[s].source_tokens,
                             corpus.sentences[s].mt_tokens, corpus.pairs};
    reference_extract(fx, max_len, sink);
  }
  const double ref_time = seconds_since(t0);
  const double ref_per_sentence =
      ref_time / static_cast<double>(std::min(n_ref_sentences, corpus.sentences.size()));
  std::printf("reference (serial):   %8.3f s for %zu sentences (%.4f s/sentence)\n",
              ref_time, std::min(n_ref_sentences, corpus.sentences.size()),
              ref_per_sentence);

  double serial_time = 0.0;
  for (int threads = 1; threads <= max_threads; threads *= 2) {
    t0 = Clock::now();
    std::vector<FeatureContext> ctxs =
        extract_contexts(corpus.sentences, corpus.store, nullptr, opts, threads);
    const double elapsed = seconds_since(t0);
    if (threads == 1) serial_time = elapsed;
    sink += ctxs.back().word_vectors.back().front();
    std::printf(
        "production (%d thread%s): %8.3f s for %zu sentences (%.6f s/sentence, "
        "speedup vs 1 thread %.2fx)\n",
        threads, threads == 1 ? " " : "s", elapsed, corpus.sentences.size(),
        elapsed / static_cast<double>(corpus.sentences.size()),
        serial_time / elapsed);
  }
  std::printf("reference/production per-sentence ratio: %.1fx (checksum %g)\n",
              ref_per_sentence / (serial_time / static_cast<double>(
                                                    corpus.sentences.size())),
              sink);
  return 0;
}
