#include "phraseqe/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace phraseqe {

const char* tag_name(Tag t) { return t == Tag::OK ? "OK" : "BAD"; }

Tag parse_tag(const std::string& s) {
  if (s == "OK") return Tag::OK;
  if (s == "BAD") return Tag::BAD;
  throw DataError("tag not in {OK, BAD}: '" + s + "'");
}

TagPair parse_tag_line(const std::string& line) {
  Tokens toks = split_tokens(line);
  if (toks.empty() || toks.size() % 2 == 0)
    throw DataError("tags line must hold 2*|T|+1 tags, got " +
                    std::to_string(toks.size()));
  TagPair out;
  const size_t n_words = toks.size() / 2;
  out.word_tags.reserve(n_words);
  out.gap_tags.reserve(n_words + 1);
  // Order on the line: gap_0 word_1 gap_1 ... word_n gap_n.
  for (size_t i = 0; i < toks.size(); ++i) {
    Tag t = parse_tag(toks[i]);
    if (i % 2 == 0)
      out.gap_tags.push_back(t);
    else
      out.word_tags.push_back(t);
  }
  return out;
}

std::string format_tag_line(const std::vector<Tag>& word_tags,
                            const std::vector<Tag>& gap_tags) {
  if (gap_tags.size() != word_tags.size() + 1)
    throw DataError("gap tag count must be word tag count + 1");
  std::string out = tag_name(gap_tags[0]);
  for (size_t j = 0; j < word_tags.size(); ++j) {
    out += ' ';
    out += tag_name(word_tags[j]);
    out += ' ';
    out += tag_name(gap_tags[j + 1]);
  }
  return out;
}

static Tokens parse_sentence_line(const std::string& line, const std::string& path,
                                  size_t line_no) {
  Tokens toks = split_tokens(line);
  for (const auto& t : toks)
    if (t.empty())
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": empty token (double space?)");
  return toks;
}

std::vector<QeSentence> load_qe_dataset(const std::string& src_path,
                                        const std::string& mt_path,
                                        const std::string& tags_path,
                                        const std::string& hter_path) {
  std::vector<std::string> src = read_lines(src_path);
  std::vector<std::string> mt = read_lines(mt_path);
  if (src.size() != mt.size())
    throw DataError("line count mismatch: " + src_path + " has " +
                    std::to_string(src.size()) + " lines, " + mt_path + " has " +
                    std::to_string(mt.size()));

  std::vector<std::string> tags;
  if (!tags_path.empty()) {
    tags = read_lines(tags_path);
    if (tags.size() != mt.size())
      throw DataError("line count mismatch between " + mt_path + " and " + tags_path);
  }
  std::vector<std::string> hter;
  if (!hter_path.empty()) {
    hter = read_lines(hter_path);
    if (hter.size() != mt.size())
      throw DataError("line count mismatch between " + mt_path + " and " + hter_path);
  }

  std::vector<QeSentence> out(src.size());
  for (size_t i = 0; i < src.size(); ++i) {
    QeSentence& s = out[i];
    s.source_tokens = parse_sentence_line(src[i], src_path, i + 1);
    s.mt_tokens = parse_sentence_line(mt[i], mt_path, i + 1);
    if (!tags.empty()) {
      if (s.mt_tokens.empty())
        throw DataError(mt_path + ":" + std::to_string(i + 1) +
                        ": empty MT sentence cannot carry tags");
      TagPair tp = parse_tag_line(tags[i]);
      if (tp.word_tags.size() != s.mt_tokens.size())
        throw DataError(tags_path + ":" + std::to_string(i + 1) + ": expected " +
                        std::to_string(2 * s.mt_tokens.size() + 1) + " tags, got " +
                        std::to_string(2 * tp.word_tags.size() + 1));
      s.gold_word_tags = std::move(tp.word_tags);
      s.gold_gap_tags = std::move(tp.gap_tags);
    }
    if (!hter.empty()) {
      double v = parse_real(hter[i], hter_path + ":" + std::to_string(i + 1));
      if (v < 0.0)
        throw DataError(hter_path + ":" + std::to_string(i + 1) + ": negative HTER");
      s.gold_hter = v;
    }
  }
  return out;
}

// ----- baseline features ----------------------------------------------------

int BaselineSchema::width() const {
  int w = static_cast<int>(numeric_columns.size());
  if (use_pos && pos_column >= 0) w += static_cast<int>(pos_vocab.size());
  return w;
}

}  // namespace phraseqe

#include <nlohmann/json.hpp>

namespace phraseqe {

using nlohmann::json;

BaselineSchema load_baseline_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open baseline schema: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("bad JSON in " + path + ": " + e.what());
  }
  BaselineSchema s;
  try {
    s.total_columns = j.value("total_columns", 28);
    s.numeric_columns = j.at("numeric_columns").get<std::vector<int>>();
    s.pos_column = j.value("pos_column", -1);
    s.use_pos = j.value("use_pos", s.pos_column >= 0);
    if (j.contains("pos_vocabulary"))
      s.pos_vocab = j["pos_vocabulary"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError("bad baseline schema " + path + ": " + e.what());
  }
  for (int c : s.numeric_columns)
    if (c < 0 || c >= s.total_columns)
      throw DataError("numeric column index out of range: " + std::to_string(c));
  if (s.pos_column >= s.total_columns)
    throw DataError("pos column index out of range");
  if (s.use_pos && s.pos_column < 0)
    throw DataError("use_pos requires pos_column");
  return s;
}

void save_baseline_schema(const BaselineSchema& schema, const std::string& path) {
  json j;
  j["total_columns"] = schema.total_columns;
  j["numeric_columns"] = schema.numeric_columns;
  j["pos_column"] = schema.pos_column;
  j["use_pos"] = schema.use_pos;
  j["pos_vocabulary"] = schema.pos_vocab;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write baseline schema: " + path);
  out << j.dump(2) << "\n";
}

// Reads the raw rows, grouped by blank lines when present.
static std::vector<std::vector<std::vector<std::string>>> read_baseline_rows(
    const std::string& path, int total_columns) {
  LineReader r(path);
  std::vector<std::vector<std::vector<std::string>>> groups(1);
  std::string line;
  size_t line_no = 0;
  bool saw_blank = false;
  while (r.next(line)) {
    ++line_no;
    if (line.empty()) {
      saw_blank = true;
      if (!groups.back().empty()) groups.emplace_back();
      continue;
    }
    std::vector<std::string> cols = split_on(line, '\t');
    if (static_cast<int>(cols.size()) != total_columns)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(total_columns) + " columns, got " +
                      std::to_string(cols.size()));
    groups.back().push_back(std::move(cols));
  }
  if (groups.back().empty()) groups.pop_back();
  if (!saw_blank && groups.size() == 1) {
    // Flat file: caller slices by sentence lengths.
    return groups;
  }
  return groups;
}

std::vector<std::string> fit_pos_vocab(const std::string& path,
                                       const BaselineSchema& schema) {
  if (schema.pos_column < 0) throw DataError("schema has no pos column");
  auto groups = read_baseline_rows(path, schema.total_columns);
  std::set<std::string> vocab;
  for (const auto& g : groups)
    for (const auto& row : g) vocab.insert(row[schema.pos_column]);
  return {vocab.begin(), vocab.end()};
}

void append_pos_one_hot(const std::string& pos,
                        const std::vector<std::string>& vocab,
                        std::vector<double>& out) {
  size_t base = out.size();
  out.resize(base + vocab.size(), 0.0);
  auto it = std::lower_bound(vocab.begin(), vocab.end(), pos);
  if (it != vocab.end() && *it == pos)
    out[base + static_cast<size_t>(it - vocab.begin())] = 1.0;
}

BaselineFeatureTable load_baseline_features(
    const std::string& path, const BaselineSchema& schema,
    const std::vector<size_t>& sentence_lengths) {
  if (schema.use_pos && schema.pos_column >= 0 && !schema.has_vocab())
    throw SchemaError("baseline schema uses POS but carries no vocabulary; "
                      "fit one on the training split first");
  auto groups = read_baseline_rows(path, schema.total_columns);

  // Regroup a flat file by the expected sentence lengths.
  if (groups.size() == 1 && sentence_lengths.size() > 1) {
    size_t total = 0;
    for (size_t n : sentence_lengths) total += n;
    if (groups[0].size() != total)
      throw DataError(path + ": row count " + std::to_string(groups[0].size()) +
                      " does not match dataset word count " + std::to_string(total));
    std::vector<std::vector<std::vector<std::string>>> sliced;
    size_t at = 0;
    for (size_t n : sentence_lengths) {
      sliced.emplace_back(groups[0].begin() + static_cast<long>(at),
                          groups[0].begin() + static_cast<long>(at + n));
      at += n;
    }
    groups = std::move(sliced);
  }

  if (groups.size() != sentence_lengths.size())
    throw DataError(path + ": sentence count " + std::to_string(groups.size()) +
                    " does not match dataset sentence count " +
                    std::to_string(sentence_lengths.size()));

  BaselineFeatureTable table;
  table.width = schema.width();
  table.vectors.resize(groups.size());
  for (size_t s = 0; s < groups.size(); ++s) {
    if (groups[s].size() != sentence_lengths[s])
      throw DataError(path + ": sentence " + std::to_string(s + 1) + " has " +
                      std::to_string(groups[s].size()) + " rows, expected " +
                      std::to_string(sentence_lengths[s]));
    table.vectors[s].reserve(groups[s].size());
    for (const auto& row : groups[s]) {
      std::vector<double> vec;
      vec.reserve(static_cast<size_t>(table.width));
      for (int c : schema.numeric_columns)
        vec.push_back(parse_real(row[static_cast<size_t>(c)],
                                 path + " numeric column " + std::to_string(c)));
      if (schema.use_pos && schema.pos_column >= 0)
        append_pos_one_hot(row[static_cast<size_t>(schema.pos_column)],
                           schema.pos_vocab, vec);
      table.vectors[s].push_back(std::move(vec));
    }
  }
  return table;
}

// ----- prediction output ----------------------------------------------------

PredictionFiles prediction_file_names(const std::string& out_dir) {
  PredictionFiles f;
  f.tags = out_dir + "/tags.txt";
  f.word_tags = out_dir + "/word_tags.txt";
  f.gap_tags = out_dir + "/gap_tags.txt";
  f.probabilities = out_dir + "/probabilities.txt";
  f.sentence_scores = out_dir + "/sentence_scores.txt";
  f.ranking = out_dir + "/ranking.txt";
  return f;
}

static std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

static std::string fmt_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", p);
  return buf;
}

void write_predictions(const std::vector<QeSentence>& sentences,
                       const std::vector<std::vector<double>>& word_probs,
                       const std::vector<std::vector<double>>& gap_probs,
                       const std::vector<std::vector<Tag>>& word_labels,
                       const std::vector<std::vector<Tag>>& gap_labels,
                       const std::vector<double>& sentence_scores,
                       const std::vector<size_t>& ranking,
                       const std::string& out_dir) {
  const size_t n = sentences.size();
  if (word_probs.size() != n || gap_probs.size() != n || word_labels.size() != n ||
      gap_labels.size() != n || sentence_scores.size() != n || ranking.size() != n)
    throw DataError("write_predictions: array lengths do not match dataset");

  std::filesystem::create_directories(out_dir);
  PredictionFiles f = prediction_file_names(out_dir);
  std::ofstream tags = open_out(f.tags);
  std::ofstream wtags = open_out(f.word_tags);
  std::ofstream gtags = open_out(f.gap_tags);
  std::ofstream probs = open_out(f.probabilities);
  std::ofstream scores = open_out(f.sentence_scores);
  std::ofstream rank = open_out(f.ranking);

  for (size_t i = 0; i < n; ++i) {
    const size_t m = sentences[i].mt_tokens.size();
    if (word_labels[i].size() != m || gap_labels[i].size() != m + 1 ||
        word_probs[i].size() != m || gap_probs[i].size() != m + 1)
      throw DataError("write_predictions: sentence " + std::to_string(i + 1) +
                      ": label/probability lengths do not match |T|=" +
                      std::to_string(m));

    tags << format_tag_line(word_labels[i], gap_labels[i]) << "\n";

    for (size_t j = 0; j < m; ++j) wtags << (j ? " " : "") << tag_name(word_labels[i][j]);
    wtags << "\n";
    for (size_t j = 0; j <= m; ++j) gtags << (j ? " " : "") << tag_name(gap_labels[i][j]);
    gtags << "\n";

    // Same interleaved order as the tag line.
    probs << fmt_prob(gap_probs[i][0]);
    for (size_t j = 0; j < m; ++j)
      probs << "\t" << fmt_prob(word_probs[i][j]) << "\t" << fmt_prob(gap_probs[i][j + 1]);
    probs << "\n";

    scores << fmt_prob(sentence_scores[i]) << "\n";
  }
  for (size_t idx : ranking) rank << idx << "\n";
}

}  // namespace phraseqe
