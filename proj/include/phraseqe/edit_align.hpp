#ifndef PHRASEQE_EDIT_ALIGN_HPP
#define PHRASEQE_EDIT_ALIGN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "phraseqe/common.hpp"

namespace phraseqe {

enum class EditOp : uint8_t { Match, Delete, Insert };

// One step of the script transforming X into Y. Indexes are 0-based: i into
// X (match/delete), j into Y (match/insert).
struct EditStep {
  EditOp op;
  size_t i = 0;
  size_t j = 0;
  bool operator==(const EditStep&) const = default;
};

using EditScript = std::vector<EditStep>;

// Word-based LCS over exact token equality. Callers lowercase beforehand.
size_t lcs_length(const Tokens& x, const Tokens& y);

// Canonical LCS backtrace. Ties are broken deterministically: match when the
// symbols agree, otherwise delete (advance in X) whenever it preserves the
// optimum, insert last.
EditScript edit_script(const Tokens& x, const Tokens& y);

// Edit operation assigned to each position of T by edit_script(T, tau):
// Match where t_j participates in the LCS, Delete otherwise. Index 0 of the
// result corresponds to the first token of T.
std::vector<EditOp> word_edit_ops(const Tokens& mt, const Tokens& tau);

enum class GapOp : uint8_t { Match, Insert, None };

// Gap operations derived from edit_script(tau, extended). For the gap
// between positions j and j+1 of the extended T: Insert when at least one
// token of tau falls strictly between the tau positions aligned to t_j and
// t_{j+1}; Match when t_j and t_{j+1} align to consecutive tokens of tau;
// None when the pair is not jointly covered. Result index j is the gap
// after extended position j (j in 0..|extended|-2).
std::vector<GapOp> gap_edit_ops(const Tokens& tau, const Tokens& extended);

}  // namespace phraseqe

#endif
