#include "phraseqe/features.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phraseqe {

std::vector<std::string> word_component_names(size_t max_len,
                                              size_t baseline_width) {
  std::vector<std::string> names;
  for (size_t n = 1; n <= max_len; ++n) {
    const std::string sn = std::to_string(n);
    names.push_back("keep_" + sn + "_sl_tl");
    names.push_back("keep_" + sn + "_tl_sl");
    names.push_back("freq_keep_" + sn + "_sl_tl");
    names.push_back("freq_keep_" + sn + "_tl_sl");
    names.push_back("align_keep_" + sn + "_match");
    names.push_back("align_keep_" + sn + "_delete");
  }
  for (size_t b = 0; b < baseline_width; ++b)
    names.push_back("baseline_" + std::to_string(b));
  return names;
}

std::vector<std::string> gap_component_names(size_t max_len) {
  std::vector<std::string> names;
  for (size_t n = 2; n <= max_len; ++n) {
    const std::string sn = std::to_string(n);
    names.push_back("noinsert_" + sn + "_sl_tl");
    names.push_back("noinsert_" + sn + "_tl_sl");
    names.push_back("freq_noins_" + sn + "_sl_tl");
    names.push_back("freq_noins_" + sn + "_tl_sl");
    names.push_back("align_noins_" + sn + "_match");
    names.push_back("align_noins_" + sn + "_insert");
  }
  return names;
}

namespace {

// One distinct tau paired with at least one sigma found in the source.
struct TauCandidate {
  Tokens tokens;
  std::vector<Span> ext_spans;
  double pair_freq_fwd = 0.0;  // sum over paired sigmas of p(tau|sigma)
  double pair_freq_rev = 0.0;  // sum over paired sigmas of p(sigma|tau)
  std::vector<std::pair<std::string, std::pair<double, double>>> pairs;
};

}  // namespace

FeatureContext build_feature_context(
    const QeSentence& sentence, const PhrasePairStore& store,
    const std::vector<std::vector<double>>* baseline_rows,
    const FeatureOptions& opts) {
  if (!store.frozen()) throw DataError("feature extraction needs a frozen store");
  if (opts.max_len < 1) throw DataError("max sub-segment length must be >= 1");
  if (sentence.mt_tokens.empty())
    throw DataError("feature extraction requires a non-empty MT sentence");

  const size_t L = opts.max_len;
  const size_t m = sentence.mt_tokens.size();
  if (baseline_rows && baseline_rows->size() != m)
    throw DataError("baseline row count does not match sentence length");
  const size_t B = baseline_rows ? (*baseline_rows)[0].size() : 0;

  FeatureContext ctx;
  ctx.n_words = m;
  ctx.max_len = L;
  ctx.baseline_width = B;
  ctx.word_vectors.assign(m, std::vector<double>(word_subseg_width(L) + B, 0.0));
  ctx.gap_vectors.assign(m + 1, std::vector<double>(gap_vector_width(L), 0.0));
  ctx.matches_by_len.assign(L, {});

  const Tokens t_plain = lowercased(sentence.mt_tokens);
  const Tokens s_ext = extend_with_boundaries(lowercased(sentence.source_tokens));
  const Tokens t_ext = extend_with_boundaries(t_plain);

  // Candidate pairs: every store entry whose source side occurs in the
  // boundary-extended S, grouped by target length. Ordered map so the
  // result never depends on hash iteration order.
  std::vector<std::map<std::string, TauCandidate>> by_len(L + 1);
  std::set<std::string> sigma_set;
  const size_t max_sigma = std::min(store.max_source_len(), s_ext.size());
  for (size_t len = 1; len <= max_sigma; ++len)
    for (size_t s = 0; s + len <= s_ext.size(); ++s)
      sigma_set.insert(join_tokens(
          Tokens(s_ext.begin() + static_cast<long>(s),
                 s_ext.begin() + static_cast<long>(s + len))));

  for (const std::string& sigma : sigma_set) {
    const PhrasePairStore::SourceEntry* entry = store.find_source(sigma);
    if (!entry) continue;
    for (const auto& target : entry->targets) {
      Tokens tau_tokens = split_tokens(target.phrase);
      if (tau_tokens.size() > L) continue;
      TauCandidate& cand = by_len[tau_tokens.size()][target.phrase];
      if (cand.tokens.empty()) cand.tokens = std::move(tau_tokens);
      const double p_fwd = target.count / entry->marginal;
      const double p_rev = target.count / store.target_marginal(target.phrase);
      cand.pair_freq_fwd += p_fwd;
      cand.pair_freq_rev += p_rev;
      cand.pairs.push_back({sigma, {p_fwd, p_rev}});
    }
  }

  std::vector<uint8_t> covered(m + 2, 0);
  for (size_t n = 1; n <= L; ++n) {
    auto& cands = by_len[n];

    // Denominators are store-independent: distinct n-grams of T (resp. of
    // the extended T) with an occurrence covering the position (resp. gap).
    std::vector<double> word_denom(m + 1, 0.0);
    if (n <= m) {
      std::map<std::string, std::vector<size_t>> plain_starts;
      for (size_t s = 1; s + n - 1 <= m; ++s)
        plain_starts[join_tokens(Tokens(t_ext.begin() + static_cast<long>(s),
                                        t_ext.begin() + static_cast<long>(s + n)))]
            .push_back(s);
      for (const auto& [str, starts] : plain_starts) {
        (void)str;
        std::fill(covered.begin(), covered.end(), 0);
        for (size_t s : starts)
          for (size_t j = s; j <= s + n - 1; ++j) covered[j] = 1;
        for (size_t j = 1; j <= m; ++j)
          if (covered[j]) word_denom[j] += 1.0;
      }
    }

    std::vector<double> gap_denom(m + 1, 0.0);
    if (n >= 2 && n <= m + 2) {
      std::map<std::string, std::vector<size_t>> ext_starts;
      for (size_t s = 0; s + n <= t_ext.size(); ++s)
        ext_starts[join_tokens(Tokens(t_ext.begin() + static_cast<long>(s),
                                      t_ext.begin() + static_cast<long>(s + n)))]
            .push_back(s);
      for (const auto& [str, starts] : ext_starts) {
        (void)str;
        std::fill(covered.begin(), covered.end(), 0);
        for (size_t s : starts)
          for (size_t j = s; j + 1 <= s + n - 1; ++j) covered[j] = 1;
        for (size_t j = 0; j <= m; ++j)
          if (covered[j]) gap_denom[j] += 1.0;
      }
    }

    std::vector<double> word_num(m + 1, 0.0), word_ffwd(m + 1, 0.0),
        word_frev(m + 1, 0.0);
    std::vector<double> gap_num(m + 1, 0.0), gap_ffwd(m + 1, 0.0),
        gap_frev(m + 1, 0.0);
    std::vector<double> align_w_match(m + 1, 0.0), align_w_delete(m + 1, 0.0);
    std::vector<double> align_g_match(m + 1, 0.0), align_g_insert(m + 1, 0.0);

    for (auto& [tau_str, cand] : cands) {
      cand.ext_spans = spans(cand.tokens, t_ext);

      // Occurrence-based families (Keep / NoInsert / Freq).
      if (!cand.ext_spans.empty()) {
        std::fill(covered.begin(), covered.end(), 0);
        for (const Span& sp : cand.ext_spans)
          if (sp.plain(m))
            for (size_t j = sp.begin; j <= sp.end; ++j) covered[j] = 1;
        for (size_t j = 1; j <= m; ++j)
          if (covered[j]) {
            word_num[j] += 1.0;
            word_ffwd[j] += cand.pair_freq_fwd;
            word_frev[j] += cand.pair_freq_rev;
          }

        if (n >= 2) {
          std::fill(covered.begin(), covered.end(), 0);
          for (const Span& sp : cand.ext_spans)
            for (size_t j = sp.begin; j + 1 <= sp.end; ++j) covered[j] = 1;
          for (size_t j = 0; j <= m; ++j)
            if (covered[j]) {
              gap_num[j] += 1.0;
              gap_ffwd[j] += cand.pair_freq_fwd;
              gap_frev[j] += cand.pair_freq_rev;
            }
        }
      }

      // Alignment families use every candidate, matched in T or not.
      if (m > 0) {
        const std::vector<EditOp> word_ops = word_edit_ops(t_plain, cand.tokens);
        size_t lcs_plain = 0;
        for (EditOp op : word_ops)
          if (op == EditOp::Match) ++lcs_plain;
        const double w_contrib =
            static_cast<double>(lcs_plain) / static_cast<double>(n);
        for (size_t j = 1; j <= m; ++j) {
          if (word_ops[j - 1] == EditOp::Match)
            align_w_match[j] += w_contrib;
          else
            align_w_delete[j] += w_contrib;
        }
      }
      if (n >= 2) {
        const std::vector<GapOp> gap_ops = gap_edit_ops(cand.tokens, t_ext);
        const double g_contrib =
            static_cast<double>(lcs_length(cand.tokens, t_ext)) /
            static_cast<double>(n);
        for (size_t j = 0; j <= m; ++j) {
          if (gap_ops[j] == GapOp::Match)
            align_g_match[j] += g_contrib;
          else if (gap_ops[j] == GapOp::Insert)
            align_g_insert[j] += g_contrib;
        }
      }

      // Cache the matched pairs (tau occurring in the extended T) in both
      // query directions.
      if (!cand.ext_spans.empty()) {
        for (const auto& [sigma, probs] : cand.pairs) {
          SpannedMatch fwd{sigma, tau_str, cand.ext_spans, QueryDirection::SL_TL,
                           probs.first};
          SpannedMatch rev{sigma, tau_str, cand.ext_spans, QueryDirection::TL_SL,
                           probs.second};
          ctx.matches_by_len[n - 1].push_back(std::move(fwd));
          ctx.matches_by_len[n - 1].push_back(std::move(rev));
        }
      }
    }

    for (size_t j = 1; j <= m; ++j) {
      std::vector<double>& v = ctx.word_vectors[j - 1];
      const double kp = word_denom[j] > 0.0 ? word_num[j] / word_denom[j] : 0.0;
      v[word_component_offset(n, WordComponent::KeepFwd)] = kp;
      v[word_component_offset(n, WordComponent::KeepRev)] = kp;
      v[word_component_offset(n, WordComponent::FreqFwd)] = word_ffwd[j];
      v[word_component_offset(n, WordComponent::FreqRev)] = word_frev[j];
      v[word_component_offset(n, WordComponent::AlignMatch)] = align_w_match[j];
      v[word_component_offset(n, WordComponent::AlignDelete)] = align_w_delete[j];
    }
    if (n >= 2)
      for (size_t j = 0; j <= m; ++j) {
        std::vector<double>& v = ctx.gap_vectors[j];
        const double ni = gap_denom[j] > 0.0 ? gap_num[j] / gap_denom[j] : 0.0;
        v[gap_component_offset(n, GapComponent::NoInsertFwd)] = ni;
        v[gap_component_offset(n, GapComponent::NoInsertRev)] = ni;
        v[gap_component_offset(n, GapComponent::FreqFwd)] = gap_ffwd[j];
        v[gap_component_offset(n, GapComponent::FreqRev)] = gap_frev[j];
        v[gap_component_offset(n, GapComponent::AlignMatch)] = align_g_match[j];
        v[gap_component_offset(n, GapComponent::AlignInsert)] = align_g_insert[j];
      }
  }

  if (baseline_rows) {
    const size_t base = word_subseg_width(L);
    for (size_t w = 0; w < m; ++w) {
      const std::vector<double>& row = (*baseline_rows)[w];
      if (row.size() != B)
        throw DataError("inconsistent baseline width within a sentence");
      std::copy(row.begin(), row.end(), ctx.word_vectors[w].begin() +
                                            static_cast<long>(base));
    }
  }
  return ctx;
}

std::vector<FeatureContext> extract_contexts(
    const std::vector<QeSentence>& sentences, const PhrasePairStore& store,
    const BaselineFeatureTable* baseline, const FeatureOptions& opts,
    int threads) {
  if (baseline && baseline->vectors.size() != sentences.size())
    throw DataError("baseline table does not match dataset sentence count");

  std::vector<FeatureContext> out(sentences.size());
  std::exception_ptr error;

#ifdef _OPENMP
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(n_threads)
#else
  (void)threads;
#endif
  for (long i = 0; i < static_cast<long>(sentences.size()); ++i) {
    try {
      const size_t idx = static_cast<size_t>(i);
      const std::vector<std::vector<double>>* rows =
          baseline ? &baseline->vectors[idx] : nullptr;
      out[idx] = build_feature_context(sentences[idx], store, rows, opts);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  // Uniform baseline width across the dataset.
  const size_t expected = baseline ? static_cast<size_t>(baseline->width) : 0;
  for (const FeatureContext& ctx : out)
    if (ctx.baseline_width != expected)
      throw DataError("baseline width varies across sentences");
  return out;
}

namespace {

double word_at(const FeatureContext& ctx, size_t j, size_t n, WordComponent c) {
  if (j < 1 || j > ctx.n_words) throw DataError("word position out of range");
  if (n < 1 || n > ctx.max_len) throw DataError("sub-segment length out of range");
  return ctx.word_vectors[j - 1][word_component_offset(n, c)];
}

double gap_at(const FeatureContext& ctx, size_t j, size_t n, GapComponent c) {
  if (j > ctx.n_words) throw DataError("gap position out of range");
  if (n < 2 || n > ctx.max_len) throw DataError("sub-segment length out of range");
  return ctx.gap_vectors[j][gap_component_offset(n, c)];
}

}  // namespace

double keep(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d) {
  return word_at(ctx, j, n,
                 d == QueryDirection::SL_TL ? WordComponent::KeepFwd
                                            : WordComponent::KeepRev);
}

double freq_keep(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d) {
  return word_at(ctx, j, n,
                 d == QueryDirection::SL_TL ? WordComponent::FreqFwd
                                            : WordComponent::FreqRev);
}

double align_keep(const FeatureContext& ctx, size_t j, size_t n, EditOp e) {
  if (e == EditOp::Insert) throw DataError("align_keep edit op must be match/delete");
  return word_at(ctx, j, n,
                 e == EditOp::Match ? WordComponent::AlignMatch
                                    : WordComponent::AlignDelete);
}

double noinsert(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d) {
  return gap_at(ctx, j, n,
                d == QueryDirection::SL_TL ? GapComponent::NoInsertFwd
                                           : GapComponent::NoInsertRev);
}

double freq_noins(const FeatureContext& ctx, size_t j, size_t n, QueryDirection d) {
  return gap_at(ctx, j, n,
                d == QueryDirection::SL_TL ? GapComponent::FreqFwd
                                           : GapComponent::FreqRev);
}

double align_noins(const FeatureContext& ctx, size_t j, size_t n, GapOp e) {
  if (e == GapOp::None) throw DataError("align_noins edit op must be match/insert");
  return gap_at(ctx, j, n,
                e == GapOp::Match ? GapComponent::AlignMatch
                                  : GapComponent::AlignInsert);
}

// ----- context windows -------------------------------------------------------

size_t window_width(size_t context, size_t word_width, size_t gap_width) {
  return (2 * context + 1) * (word_width + gap_width);
}

WindowBatch build_windows(const std::vector<FeatureContext>& ctxs, size_t context,
                          const std::vector<QeSentence>* gold) {
  if (gold && gold->size() != ctxs.size())
    throw DataError("gold sentences do not match feature contexts");

  WindowBatch batch;
  batch.context = context;
  if (!ctxs.empty()) {
    batch.word_width = ctxs.front().word_width();
    batch.gap_width = ctxs.front().gap_width();
  }

  std::vector<Window>& out = batch.windows;
  size_t total = 0;
  for (const FeatureContext& ctx : ctxs) total += ctx.n_words + 1;
  out.reserve(total);

  const size_t slots = 2 * context + 1;
  for (size_t s = 0; s < ctxs.size(); ++s) {
    const FeatureContext& ctx = ctxs[s];
    const size_t F = ctx.word_width(), G = ctx.gap_width();
    if (F != batch.word_width || G != batch.gap_width)
      throw SchemaError("feature widths vary across sentences");
    const size_t width = slots * (F + G);
    const QeSentence* sent = gold ? &(*gold)[s] : nullptr;
    if (sent && sent->gold_word_tags && sent->gold_word_tags->size() != ctx.n_words)
      throw DataError("gold tags do not match feature context length");

    for (size_t i = 0; i <= ctx.n_words; ++i) {
      Window w;
      w.values.assign(width, 0.0);
      for (size_t k = 0; k < slots; ++k) {
        const long p = static_cast<long>(i) + static_cast<long>(k) -
                       static_cast<long>(context);
        if (p >= 1 && p <= static_cast<long>(ctx.n_words))
          std::copy(ctx.word_vectors[static_cast<size_t>(p - 1)].begin(),
                    ctx.word_vectors[static_cast<size_t>(p - 1)].end(),
                    w.values.begin() + static_cast<long>(k * F));
        if (p >= 0 && p <= static_cast<long>(ctx.n_words))
          std::copy(ctx.gap_vectors[static_cast<size_t>(p)].begin(),
                    ctx.gap_vectors[static_cast<size_t>(p)].end(),
                    w.values.begin() + static_cast<long>(slots * F + k * G));
      }
      w.word_masked = (i == 0);
      w.sentence = static_cast<uint32_t>(s);
      w.position = static_cast<uint32_t>(i);
      if (sent && i > 0 && sent->gold_word_tags)
        w.word_gold = (*sent->gold_word_tags)[i - 1] == Tag::BAD ? 1 : 0;
      if (sent && sent->gold_gap_tags)
        w.gap_gold = (*sent->gold_gap_tags)[i] == Tag::BAD ? 1 : 0;
      out.push_back(std::move(w));
    }
  }
  return batch;
}

// ----- feature files ---------------------------------------------------------

namespace {
constexpr uint32_t kFeatureMagic = 0x58465150;  // "PQFX"
constexpr uint32_t kFeatureVersion = 1;
}  // namespace

void save_feature_file(const std::string& path,
                       const std::vector<FeatureContext>& ctxs, size_t max_len,
                       size_t baseline_width) {
  BinWriter w(path);
  w.u32(kFeatureMagic);
  w.u32(kFeatureVersion);
  w.u32(static_cast<uint32_t>(max_len));
  w.u32(static_cast<uint32_t>(baseline_width));
  w.u32(static_cast<uint32_t>(word_subseg_width(max_len) + baseline_width));
  w.u32(static_cast<uint32_t>(gap_vector_width(max_len)));
  w.str(kComponentOrderTag);
  w.u64(ctxs.size());
  for (const FeatureContext& ctx : ctxs) {
    if (ctx.max_len != max_len || ctx.baseline_width != baseline_width)
      throw DataError("feature context schema mismatch while saving");
    w.u32(static_cast<uint32_t>(ctx.n_words));
    for (const auto& vec : ctx.word_vectors)
      for (double v : vec) w.f64(v);
    for (const auto& vec : ctx.gap_vectors)
      for (double v : vec) w.f64(v);
  }
  w.close();
}

LoadedFeatures load_feature_file(const std::string& path) {
  BinReader r(path);
  if (r.u32() != kFeatureMagic) throw SchemaError(path + ": not a feature file");
  const uint32_t version = r.u32();
  if (version != kFeatureVersion)
    throw SchemaError(path + ": feature file version " + std::to_string(version) +
                      " unsupported");
  LoadedFeatures out;
  out.header.max_len = r.u32();
  out.header.baseline_width = r.u32();
  out.header.word_width = r.u32();
  out.header.gap_width = r.u32();
  out.header.order_tag = r.str();
  if (out.header.order_tag != kComponentOrderTag)
    throw SchemaError(path + ": component order '" + out.header.order_tag +
                      "' does not match this build");
  if (out.header.word_width !=
          word_subseg_width(out.header.max_len) + out.header.baseline_width ||
      out.header.gap_width != gap_vector_width(out.header.max_len))
    throw SchemaError(path + ": inconsistent widths in header");

  const uint64_t n = r.u64();
  out.contexts.resize(n);
  for (uint64_t i = 0; i < n; ++i) {
    FeatureContext& ctx = out.contexts[i];
    ctx.n_words = r.u32();
    ctx.max_len = out.header.max_len;
    ctx.baseline_width = out.header.baseline_width;
    ctx.word_vectors.assign(ctx.n_words,
                            std::vector<double>(out.header.word_width));
    ctx.gap_vectors.assign(ctx.n_words + 1,
                           std::vector<double>(out.header.gap_width));
    for (auto& vec : ctx.word_vectors)
      for (double& v : vec) v = r.f64();
    for (auto& vec : ctx.gap_vectors)
      for (double& v : vec) v = r.f64();
  }
  return out;
}

void dump_features_tsv(const std::string& path,
                       const std::vector<FeatureContext>& ctxs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  const size_t L = ctxs.empty() ? 0 : ctxs.front().max_len;
  const size_t B = ctxs.empty() ? 0 : ctxs.front().baseline_width;

  out << "#word\tsentence\tposition";
  for (const std::string& name : word_component_names(L, B)) out << "\t" << name;
  out << "\n#gap\tsentence\tposition";
  for (const std::string& name : gap_component_names(L)) out << "\t" << name;
  out << "\n";

  char buf[40];
  auto emit = [&](const char* kind, size_t s, size_t pos,
                  const std::vector<double>& vec) {
    out << kind << "\t" << s << "\t" << pos;
    for (double v : vec) {
      std::snprintf(buf, sizeof(buf), "%.12g", v);
      out << "\t" << buf;
    }
    out << "\n";
  };
  for (size_t s = 0; s < ctxs.size(); ++s) {
    for (size_t j = 0; j < ctxs[s].n_words; ++j)
      emit("word", s, j + 1, ctxs[s].word_vectors[j]);
    for (size_t j = 0; j <= ctxs[s].n_words; ++j)
      emit("gap", s, j, ctxs[s].gap_vectors[j]);
  }
}

}  // namespace phraseqe
