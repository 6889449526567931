#include "phraseqe/edit_align.hpp"

#include <algorithm>
#include <limits>

namespace phraseqe {

namespace {

// Full DP table; sequences here are short (phrases and sentences).
std::vector<std::vector<uint32_t>> lcs_table(const Tokens& x, const Tokens& y) {
  const size_t nx = x.size(), ny = y.size();
  std::vector<std::vector<uint32_t>> dp(nx + 1, std::vector<uint32_t>(ny + 1, 0));
  for (size_t i = 1; i <= nx; ++i)
    for (size_t j = 1; j <= ny; ++j) {
      if (x[i - 1] == y[j - 1])
        dp[i][j] = dp[i - 1][j - 1] + 1;
      else
        dp[i][j] = std::max(dp[i - 1][j], dp[i][j - 1]);
    }
  return dp;
}

}  // namespace

size_t lcs_length(const Tokens& x, const Tokens& y) {
  if (x.empty() || y.empty()) return 0;
  // One-row DP; table not needed for the length alone.
  std::vector<uint32_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (size_t i = 1; i <= x.size(); ++i) {
    for (size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

EditScript edit_script(const Tokens& x, const Tokens& y) {
  const auto dp = lcs_table(x, y);
  EditScript script;
  script.reserve(x.size() + y.size());
  size_t i = x.size(), j = y.size();
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && x[i - 1] == y[j - 1]) {
      script.push_back({EditOp::Match, i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && (j == 0 || dp[i - 1][j] == dp[i][j])) {
      script.push_back({EditOp::Delete, i - 1, 0});
      --i;
    } else {
      script.push_back({EditOp::Insert, 0, j - 1});
      --j;
    }
  }
  std::reverse(script.begin(), script.end());
  return script;
}

std::vector<EditOp> word_edit_ops(const Tokens& mt, const Tokens& tau) {
  std::vector<EditOp> ops(mt.size(), EditOp::Delete);
  for (const EditStep& step : edit_script(mt, tau))
    if (step.op == EditOp::Match) ops[step.i] = EditOp::Match;
  return ops;
}

std::vector<GapOp> gap_edit_ops(const Tokens& tau, const Tokens& extended) {
  constexpr size_t npos = std::numeric_limits<size_t>::max();
  std::vector<size_t> tau_pos(extended.size(), npos);
  for (const EditStep& step : edit_script(tau, extended))
    if (step.op == EditOp::Match) tau_pos[step.j] = step.i;

  std::vector<GapOp> ops;
  if (extended.size() < 2) return ops;
  ops.reserve(extended.size() - 1);
  for (size_t j = 0; j + 1 < extended.size(); ++j) {
    const size_t a = tau_pos[j], b = tau_pos[j + 1];
    if (a == npos || b == npos) {
      ops.push_back(GapOp::None);
    } else if (b == a + 1) {
      ops.push_back(GapOp::Match);
    } else {
      // Monotone alignment: every tau token strictly between the two
      // aligned positions is unmatched, i.e. would need insertion into T.
      ops.push_back(GapOp::Insert);
    }
  }
  return ops;
}

}  // namespace phraseqe
