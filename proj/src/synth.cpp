#include "phraseqe/synth.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "phraseqe/corpus.hpp"
#include "phraseqe/net.hpp"
#include "phraseqe/sentence_score.hpp"
#include "phraseqe/subseg.hpp"

namespace phraseqe {

namespace {

std::string src_word(size_t k) { return "src" + std::to_string(k); }
std::string tgt_word(size_t k) { return "tgt" + std::to_string(k); }
std::string noise_word(size_t k) { return "zz" + std::to_string(k); }

std::ofstream open_new(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

void write_tables(const SynthConfig& cfg, const std::string& fwd_path,
                  const std::string& rev_path) {
  std::ofstream fwd = open_new(fwd_path);
  std::ofstream rev = open_new(rev_path);
  // Counts field follows the usual "target source joint" layout; only the
  // joint count (third number) is consumed downstream.
  auto emit = [&](const std::string& s, const std::string& t, double joint) {
    char counts[64];
    std::snprintf(counts, sizeof(counts), "%.1f %.1f %.1f", joint + 2.0,
                  joint + 2.0, joint);
    fwd << s << " ||| " << t << " ||| 0.5 0.5 ||| 0-0 ||| " << counts << "\n";
    rev << t << " ||| " << s << " ||| 0.5 0.5 ||| 0-0 ||| " << counts << "\n";
  };
  const size_t V = cfg.vocabulary;
  for (size_t k = 0; k < V; ++k) {
    const size_t next = (k + 1) % V;
    emit(src_word(k), tgt_word(k), 8.0);
    // A weak wrong sense per word keeps the translation probabilities off 1.
    emit(src_word(k), tgt_word((k + 7) % V), 1.0);
    emit(src_word(k) + " " + src_word(next), tgt_word(k) + " " + tgt_word(next),
         4.0);
    // Boundary-anchored evidence for the first and last gaps.
    emit(std::string(kBosToken) + " " + src_word(k),
         std::string(kBosToken) + " " + tgt_word(k), 4.0);
    emit(src_word(k) + " " + std::string(kEosToken),
         tgt_word(k) + " " + std::string(kEosToken), 4.0);
  }
}

void write_split(const SynthConfig& cfg, Rng& rng, size_t n_sentences,
                 const std::string& src_path, const std::string& mt_path,
                 const std::string& tags_path, const std::string& hter_path) {
  std::ofstream src = open_new(src_path);
  std::ofstream mt = open_new(mt_path);
  std::ofstream tags = open_new(tags_path);
  std::ofstream hter = open_new(hter_path);

  const size_t V = cfg.vocabulary;
  for (size_t s = 0; s < n_sentences; ++s) {
    const size_t len = cfg.min_len + rng.index(cfg.max_len - cfg.min_len + 1);
    const size_t start = rng.index(V);

    enum class Fate { Keep, Substitute, Drop };
    std::vector<Fate> fate(len, Fate::Keep);
    size_t kept = 0;
    for (size_t i = 0; i < len; ++i) {
      const double roll = rng.uniform();
      if (roll < cfg.p_substitute)
        fate[i] = Fate::Substitute;
      else if (roll < cfg.p_substitute + cfg.p_delete)
        fate[i] = Fate::Drop;
      if (fate[i] != Fate::Drop) ++kept;
    }
    if (kept == 0) {
      fate[0] = Fate::Keep;  // MT output must not be empty
      kept = 1;
    }

    Tokens source, mt_tokens;
    std::vector<Tag> word_tags;
    std::vector<Tag> gap_tags(kept + 1, Tag::OK);
    for (size_t i = 0; i < len; ++i) {
      const size_t k = (start + i) % V;
      source.push_back(src_word(k));
      switch (fate[i]) {
        case Fate::Keep:
          mt_tokens.push_back(tgt_word(k));
          word_tags.push_back(Tag::OK);
          break;
        case Fate::Substitute:
          mt_tokens.push_back(noise_word(rng.index(cfg.noise_words)));
          word_tags.push_back(Tag::BAD);
          break;
        case Fate::Drop:
          gap_tags[mt_tokens.size()] = Tag::BAD;
          break;
      }
    }

    src << join_tokens(source) << "\n";
    mt << join_tokens(mt_tokens) << "\n";
    tags << format_tag_line(word_tags, gap_tags) << "\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f",
                  approximate_ter(word_tags, gap_tags).score);
    hter << buf << "\n";
  }
}

}  // namespace

SynthPaths generate_synthetic_corpus(const SynthConfig& cfg,
                                     const std::string& out_dir) {
  if (cfg.min_len < 1 || cfg.max_len < cfg.min_len)
    throw DataError("bad synthetic sentence length range");
  if (cfg.p_substitute + cfg.p_delete >= 1.0)
    throw DataError("corruption probabilities must sum below 1");
  std::filesystem::create_directories(out_dir);

  SynthPaths p;
  p.table_fwd = out_dir + "/table_fwd.txt";
  p.table_rev = out_dir + "/table_rev.txt";
  write_tables(cfg, p.table_fwd, p.table_rev);

  Rng rng(cfg.seed);
  auto split = [&](const char* name, size_t n, std::string& src, std::string& mt,
                   std::string& tags, std::string& hter) {
    src = out_dir + "/" + name + ".src";
    mt = out_dir + "/" + name + ".mt";
    tags = out_dir + "/" + name + ".tags";
    hter = out_dir + "/" + name + ".hter";
    write_split(cfg, rng, n, src, mt, tags, hter);
  };
  split("train", cfg.train_sentences, p.train_src, p.train_mt, p.train_tags,
        p.train_hter);
  split("dev", cfg.dev_sentences, p.dev_src, p.dev_mt, p.dev_tags, p.dev_hter);
  split("test", cfg.test_sentences, p.test_src, p.test_mt, p.test_tags,
        p.test_hter);
  return p;
}

}  // namespace phraseqe
