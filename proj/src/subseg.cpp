#include "phraseqe/subseg.hpp"

#include <algorithm>
#include <set>

namespace phraseqe {

Tokens extend_with_boundaries(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size() + 2);
  out.push_back(kBosToken);
  out.insert(out.end(), tokens.begin(), tokens.end());
  out.push_back(kEosToken);
  return out;
}

std::vector<Subsegment> subsegments(const Tokens& tokens, size_t n) {
  if (n == 0) throw DataError("subsegment length must be >= 1");
  std::vector<Subsegment> out;
  if (n > tokens.size()) return out;
  out.reserve(tokens.size() - n + 1);
  for (size_t s = 0; s + n <= tokens.size(); ++s)
    out.push_back({Tokens(tokens.begin() + static_cast<long>(s),
                          tokens.begin() + static_cast<long>(s + n)),
                   s});
  return out;
}

std::vector<Span> spans(const Tokens& phrase, const Tokens& extended) {
  std::vector<Span> out;
  if (phrase.empty() || phrase.size() > extended.size()) return out;
  for (size_t s = 0; s + phrase.size() <= extended.size(); ++s) {
    bool hit = true;
    for (size_t k = 0; k < phrase.size(); ++k)
      if (extended[s + k] != phrase[k]) {
        hit = false;
        break;
      }
    if (hit) out.push_back({s, s + phrase.size() - 1});
  }
  return out;
}

std::vector<SpannedMatch> match_pairs(const PhrasePairStore& store,
                                      const Tokens& source_tokens,
                                      const Tokens& mt_tokens, size_t n,
                                      QueryDirection direction) {
  if (n == 0) throw DataError("match_pairs requires n >= 1");
  const Tokens s_ext = extend_with_boundaries(lowercased(source_tokens));
  const Tokens t_ext = extend_with_boundaries(lowercased(mt_tokens));

  // Distinct source-side sub-segments, bounded by the longest key held by
  // the store; identical to the unbounded union for matching purposes.
  std::set<std::string> sigma_set;
  const size_t max_len = std::min(store.max_source_len(), s_ext.size());
  for (size_t len = 1; len <= max_len; ++len)
    for (const Subsegment& seg : subsegments(s_ext, len))
      sigma_set.insert(join_tokens(seg.tokens));

  // Distinct n-grams of the boundary-extended T with all their spans.
  std::set<std::string> tau_set;
  for (const Subsegment& seg : subsegments(t_ext, n))
    tau_set.insert(join_tokens(seg.tokens));

  std::vector<SpannedMatch> out;
  for (const std::string& sigma : sigma_set) {
    for (const auto& [tau, count] : store.lookup_by_source(sigma)) {
      (void)count;
      if (!tau_set.count(tau)) continue;
      SpannedMatch m;
      m.sigma = sigma;
      m.tau = tau;
      m.tau_spans = spans(split_tokens(tau), t_ext);
      m.direction = direction;
      m.prob = direction == QueryDirection::SL_TL
                   ? store.translation_prob(sigma, tau)
                   : store.reverse_translation_prob(sigma, tau);
      out.push_back(std::move(m));
    }
  }
  std::sort(out.begin(), out.end(), [](const SpannedMatch& a, const SpannedMatch& b) {
    return a.sigma != b.sigma ? a.sigma < b.sigma : a.tau < b.tau;
  });
  return out;
}

}  // namespace phraseqe
