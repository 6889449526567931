#include "phraseqe/reference.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "phraseqe/subseg.hpp"

namespace phraseqe::reference {

namespace {

Tokens extended(const Tokens& toks) {
  Tokens out;
  out.push_back(kBosToken);
  out.insert(out.end(), toks.begin(), toks.end());
  out.push_back(kEosToken);
  return out;
}

// Occurrence start positions of `needle` in `haystack`.
std::vector<size_t> occurrences(const Tokens& needle, const Tokens& haystack) {
  std::vector<size_t> out;
  if (needle.empty() || needle.size() > haystack.size()) return out;
  for (size_t s = 0; s + needle.size() <= haystack.size(); ++s) {
    size_t k = 0;
    while (k < needle.size() && haystack[s + k] == needle[k]) ++k;
    if (k == needle.size()) out.push_back(s);
  }
  return out;
}

// Any occurrence interval of tau lying wholly inside the plain words
// 1..n_words and covering word position j.
bool covers_word_plain(const Tokens& tau, const Tokens& ext, size_t n_words,
                       size_t j) {
  for (size_t s : occurrences(tau, ext))
    if (s >= 1 && s + tau.size() - 1 <= n_words && s <= j &&
        j <= s + tau.size() - 1)
      return true;
  return false;
}

// Any occurrence interval of tau containing both j and j+1.
bool covers_gap(const Tokens& tau, const Tokens& seq, size_t j) {
  for (size_t s : occurrences(tau, seq))
    if (s <= j && j + 1 <= s + tau.size() - 1) return true;
  return false;
}

// M with duplicate pairs merged; counts accumulated.
struct Accumulated {
  std::map<std::pair<Tokens, Tokens>, double> counts;
};

Accumulated accumulate(const std::vector<RefPair>& pairs) {
  Accumulated acc;
  for (const RefPair& p : pairs) acc.counts[{p.sigma, p.tau}] += p.count;
  return acc;
}

double forward_prob(const Accumulated& m, const Tokens& sigma, const Tokens& tau) {
  double joint = 0.0, marginal = 0.0;
  for (const auto& [key, c] : m.counts) {
    if (key.first == sigma) {
      marginal += c;
      if (key.second == tau) joint += c;
    }
  }
  return joint / marginal;
}

double reverse_prob(const Accumulated& m, const Tokens& sigma, const Tokens& tau) {
  double joint = 0.0, marginal = 0.0;
  for (const auto& [key, c] : m.counts) {
    if (key.second == tau) {
      marginal += c;
      if (key.first == sigma) joint += c;
    }
  }
  return joint / marginal;
}

// Independent LCS machinery (fresh DP, same canonical tie-break convention:
// match when symbols agree, otherwise prefer advancing in X).
std::vector<std::vector<int>> lcs_dp(const Tokens& x, const Tokens& y) {
  std::vector<std::vector<int>> dp(x.size() + 1, std::vector<int>(y.size() + 1, 0));
  for (size_t i = 1; i <= x.size(); ++i)
    for (size_t j = 1; j <= y.size(); ++j)
      dp[i][j] = x[i - 1] == y[j - 1]
                     ? dp[i - 1][j - 1] + 1
                     : std::max(dp[i - 1][j], dp[i][j - 1]);
  return dp;
}

int lcs_len(const Tokens& x, const Tokens& y) {
  return lcs_dp(x, y)[x.size()][y.size()];
}

// For each position of x: true when x_i is matched in the canonical script
// of (x, y).
std::vector<bool> matched_in_x(const Tokens& x, const Tokens& y) {
  auto dp = lcs_dp(x, y);
  std::vector<bool> matched(x.size(), false);
  size_t i = x.size(), j = y.size();
  while (i > 0 && j > 0) {
    if (x[i - 1] == y[j - 1]) {
      matched[i - 1] = true;
      --i;
      --j;
    } else if (dp[i - 1][j] == dp[i][j]) {
      --i;
    } else {
      --j;
    }
  }
  return matched;
}

// For each position of y: index in x it is matched to, or -1.
std::vector<long> alignment_into(const Tokens& x, const Tokens& y) {
  auto dp = lcs_dp(x, y);
  std::vector<long> pos(y.size(), -1);
  size_t i = x.size(), j = y.size();
  while (i > 0 && j > 0) {
    if (x[i - 1] == y[j - 1]) {
      pos[j - 1] = static_cast<long>(i - 1);
      --i;
      --j;
    } else if (dp[i - 1][j] == dp[i][j]) {
      --i;
    } else {
      --j;
    }
  }
  return pos;
}

// All sub-segments of any length, as a set of token sequences.
std::set<Tokens> all_subsegments(const Tokens& seq) {
  std::set<Tokens> out;
  for (size_t len = 1; len <= seq.size(); ++len)
    for (size_t s = 0; s + len <= seq.size(); ++s)
      out.insert(Tokens(seq.begin() + static_cast<long>(s),
                        seq.begin() + static_cast<long>(s + len)));
  return out;
}

std::set<Tokens> ngrams(const Tokens& seq, size_t n) {
  std::set<Tokens> out;
  if (n == 0 || n > seq.size()) return out;
  for (size_t s = 0; s + n <= seq.size(); ++s)
    out.insert(Tokens(seq.begin() + static_cast<long>(s),
                      seq.begin() + static_cast<long>(s + n)));
  return out;
}

// Distinct tau appearing in M paired with some sub-segment of the extended
// source, with |tau| = n. This is the candidate set of the Align features;
// tau need not occur in T at all.
std::set<Tokens> align_candidates(const Accumulated& m, const Tokens& s_ext,
                                  size_t n) {
  std::set<Tokens> sigma_set = all_subsegments(s_ext);
  std::set<Tokens> out;
  for (const auto& [key, c] : m.counts) {
    (void)c;
    if (key.second.size() == n && sigma_set.count(key.first))
      out.insert(key.second);
  }
  return out;
}

}  // namespace

double keep(const RefFixture& fx, size_t j, size_t n) {
  const Tokens s_ext = extended(fx.source);
  const Tokens t_ext = extended(fx.mt);
  const Accumulated m = accumulate(fx.pairs);
  const std::set<Tokens> sigma_set = all_subsegments(s_ext);

  // Word features live on the plain T: seg_n(T) and spans within 1..|T|.
  std::set<Tokens> denom;
  for (const Tokens& tau : ngrams(fx.mt, n))
    if (covers_word_plain(tau, t_ext, fx.mt.size(), j)) denom.insert(tau);

  std::set<Tokens> numer;
  for (const auto& [key, c] : m.counts) {
    (void)c;
    const Tokens& sigma = key.first;
    const Tokens& tau = key.second;
    if (tau.size() != n || !sigma_set.count(sigma)) continue;
    if (!denom.count(tau)) continue;  // tau in seg_n(T) covering j
    numer.insert(tau);
  }
  if (denom.empty()) return 0.0;
  return static_cast<double>(numer.size()) / static_cast<double>(denom.size());
}

double freq_keep(const RefFixture& fx, size_t j, size_t n, bool reverse) {
  const Tokens s_ext = extended(fx.source);
  const Tokens t_ext = extended(fx.mt);
  const Accumulated m = accumulate(fx.pairs);
  const std::set<Tokens> sigma_set = all_subsegments(s_ext);

  double sum = 0.0;
  for (const auto& [key, c] : m.counts) {
    (void)c;
    const Tokens& sigma = key.first;
    const Tokens& tau = key.second;
    if (tau.size() != n || !sigma_set.count(sigma)) continue;
    // tau must occur within the plain T with an occurrence covering j.
    if (!covers_word_plain(tau, t_ext, fx.mt.size(), j)) continue;
    sum += reverse ? reverse_prob(m, sigma, tau) : forward_prob(m, sigma, tau);
  }
  return sum;
}

double align_keep(const RefFixture& fx, size_t j, size_t n, EditOp e) {
  const Tokens s_ext = extended(fx.source);
  const Accumulated m = accumulate(fx.pairs);
  double sum = 0.0;
  for (const Tokens& tau : align_candidates(m, s_ext, n)) {
    std::vector<bool> matched = matched_in_x(fx.mt, tau);
    EditOp op = matched[j - 1] ? EditOp::Match : EditOp::Delete;
    if (op != e) continue;
    sum += static_cast<double>(lcs_len(tau, fx.mt)) / static_cast<double>(n);
  }
  return sum;
}

double noinsert(const RefFixture& fx, size_t j, size_t n) {
  const Tokens s_ext = extended(fx.source);
  const Tokens t_ext = extended(fx.mt);
  const Accumulated m = accumulate(fx.pairs);
  const std::set<Tokens> sigma_set = all_subsegments(s_ext);

  std::set<Tokens> denom;
  for (const Tokens& tau : ngrams(t_ext, n))
    if (covers_gap(tau, t_ext, j)) denom.insert(tau);

  std::set<Tokens> numer;
  for (const auto& [key, c] : m.counts) {
    (void)c;
    if (key.second.size() != n || !sigma_set.count(key.first)) continue;
    if (covers_gap(key.second, t_ext, j)) numer.insert(key.second);
  }
  if (denom.empty()) return 0.0;
  return static_cast<double>(numer.size()) / static_cast<double>(denom.size());
}

double freq_noins(const RefFixture& fx, size_t j, size_t n, bool reverse) {
  const Tokens s_ext = extended(fx.source);
  const Tokens t_ext = extended(fx.mt);
  const Accumulated m = accumulate(fx.pairs);
  const std::set<Tokens> sigma_set = all_subsegments(s_ext);

  double sum = 0.0;
  for (const auto& [key, c] : m.counts) {
    (void)c;
    if (key.second.size() != n || !sigma_set.count(key.first)) continue;
    if (!covers_gap(key.second, t_ext, j)) continue;
    sum += reverse ? reverse_prob(m, key.first, key.second)
                   : forward_prob(m, key.first, key.second);
  }
  return sum;
}

double align_noins(const RefFixture& fx, size_t j, size_t n, GapOp e) {
  const Tokens s_ext = extended(fx.source);
  const Tokens t_ext = extended(fx.mt);
  const Accumulated m = accumulate(fx.pairs);

  double sum = 0.0;
  for (const Tokens& tau : align_candidates(m, s_ext, n)) {
    std::vector<long> pos = alignment_into(tau, t_ext);
    long a = pos[j], b = pos[j + 1];
    GapOp op = GapOp::None;
    if (a >= 0 && b >= 0) op = (b == a + 1) ? GapOp::Match : GapOp::Insert;
    if (op != e || op == GapOp::None) continue;
    sum += static_cast<double>(lcs_len(tau, t_ext)) / static_cast<double>(n);
  }
  return sum;
}

}  // namespace phraseqe::reference
