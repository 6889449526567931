#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "phraseqe/corpus.hpp"

using namespace phraseqe;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("phraseqe_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = (path / name).string();
    std::ofstream out(p);
    out << content;
    return p;
  }
};

}  // namespace

TEST_CASE("tag line interleaving splits gaps and words") {
  TagPair tp = parse_tag_line("OK BAD OK OK OK");
  CHECK(tp.word_tags == std::vector<Tag>{Tag::BAD, Tag::OK});
  CHECK(tp.gap_tags == std::vector<Tag>{Tag::OK, Tag::OK, Tag::OK});
}

TEST_CASE("minimal tag line") {
  TagPair tp = parse_tag_line("OK OK OK");
  CHECK(tp.word_tags == std::vector<Tag>{Tag::OK});
  CHECK(tp.gap_tags == std::vector<Tag>{Tag::OK, Tag::OK});
}

TEST_CASE("tag line with even token count is rejected") {
  CHECK_THROWS_AS(parse_tag_line("OK BAD"), DataError);
  CHECK_THROWS_AS(parse_tag_line(""), DataError);
  CHECK_THROWS_AS(parse_tag_line("OK MAYBE OK"), DataError);
}

TEST_CASE("format_tag_line is the inverse of parse_tag_line") {
  const std::string line = format_tag_line({Tag::BAD, Tag::OK},
                                           {Tag::OK, Tag::BAD, Tag::OK});
  CHECK(line == "OK BAD BAD OK OK");
  TagPair tp = parse_tag_line(line);
  CHECK(tp.word_tags == std::vector<Tag>{Tag::BAD, Tag::OK});
  CHECK(tp.gap_tags == std::vector<Tag>{Tag::OK, Tag::BAD, Tag::OK});
}

TEST_CASE("load_qe_dataset splits tags and parses HTER") {
  TempDir dir;
  const std::string src = dir.file("s.src", "a b c\nd e\n");
  const std::string mt = dir.file("s.mt", "x y\nz\n");
  const std::string tags = dir.file("s.tags", "OK BAD OK OK OK\nBAD OK BAD\n");
  const std::string hter = dir.file("s.hter", "0.5\n0\n");

  auto data = load_qe_dataset(src, mt, tags, hter);
  REQUIRE(data.size() == 2);
  CHECK(data[0].source_tokens == Tokens{"a", "b", "c"});
  CHECK(data[0].mt_tokens == Tokens{"x", "y"});
  CHECK(*data[0].gold_word_tags == std::vector<Tag>{Tag::BAD, Tag::OK});
  CHECK(*data[0].gold_gap_tags == std::vector<Tag>{Tag::OK, Tag::OK, Tag::OK});
  CHECK(*data[0].gold_hter == doctest::Approx(0.5));
  CHECK(*data[1].gold_word_tags == std::vector<Tag>{Tag::OK});
  CHECK(*data[1].gold_gap_tags == std::vector<Tag>{Tag::BAD, Tag::BAD});
}

TEST_CASE("load_qe_dataset validates counts and values") {
  TempDir dir;
  const std::string src = dir.file("s.src", "a\nb\n");
  const std::string mt1 = dir.file("one.mt", "x\n");
  CHECK_THROWS_AS(load_qe_dataset(src, mt1), DataError);

  const std::string mt = dir.file("s.mt", "x y\nz\n");
  const std::string bad_tags = dir.file("bad.tags", "OK BAD\nOK OK OK\n");
  CHECK_THROWS_AS(load_qe_dataset(src, mt, bad_tags), DataError);

  const std::string short_tags = dir.file("short.tags", "OK OK OK\nOK OK OK\n");
  CHECK_THROWS_AS(load_qe_dataset(src, mt, short_tags), DataError);

  const std::string hter = dir.file("s.hter", "0.1\nnope\n");
  CHECK_THROWS_AS(load_qe_dataset(src, mt, "", hter), DataError);

  const std::string neg = dir.file("neg.hter", "0.1\n-0.2\n");
  CHECK_THROWS_AS(load_qe_dataset(src, mt, "", neg), DataError);
}

TEST_CASE("write_predictions round-trips through load_qe_dataset") {
  TempDir dir;
  const std::string src = dir.file("s.src", "a b\nc\n");
  const std::string mt = dir.file("s.mt", "x y\nz\n");
  auto data = load_qe_dataset(src, mt);

  std::vector<std::vector<Tag>> word_labels = {{Tag::BAD, Tag::OK}, {Tag::OK}};
  std::vector<std::vector<Tag>> gap_labels = {{Tag::OK, Tag::BAD, Tag::OK},
                                              {Tag::OK, Tag::OK}};
  std::vector<std::vector<double>> word_probs = {{0.9, 0.1}, {0.2}};
  std::vector<std::vector<double>> gap_probs = {{0.1, 0.8, 0.2}, {0.3, 0.4}};
  const std::string out = (dir.path / "pred").string();
  write_predictions(data, word_probs, gap_probs, word_labels, gap_labels,
                    {0.5, 0.0}, {1, 0}, out);

  auto files = prediction_file_names(out);
  auto reloaded = load_qe_dataset(src, mt, files.tags);
  REQUIRE(reloaded.size() == 2);
  CHECK(*reloaded[0].gold_word_tags == word_labels[0]);
  CHECK(*reloaded[0].gold_gap_tags == gap_labels[0]);
  CHECK(*reloaded[1].gold_word_tags == word_labels[1]);
  CHECK(*reloaded[1].gold_gap_tags == gap_labels[1]);

  auto ranking = read_lines(files.ranking);
  CHECK(ranking == std::vector<std::string>{"1", "0"});
}

TEST_CASE("write_predictions rejects mismatched lengths") {
  TempDir dir;
  const std::string src = dir.file("s.src", "a\n");
  const std::string mt = dir.file("s.mt", "x y\n");
  auto data = load_qe_dataset(src, mt);
  CHECK_THROWS_AS(
      write_predictions(data, {{0.5}}, {{0.5, 0.5, 0.5}}, {{Tag::OK}},
                        {{Tag::OK, Tag::OK, Tag::OK}}, {0.0}, {0},
                        (dir.path / "pred").string()),
      DataError);
}

TEST_CASE("baseline features: numeric columns plus one-hot POS") {
  TempDir dir;
  // 4 columns: two numeric, POS, one ignored.
  std::string content;
  content += "1.5\t2\tV\tx\n0.5\t1\tN\tx\n\n3\t4\tADJ\tx\n";
  const std::string path = dir.file("base.tsv", content);

  BaselineSchema schema;
  schema.total_columns = 4;
  schema.numeric_columns = {0, 1};
  schema.pos_column = 2;
  schema.use_pos = true;
  schema.pos_vocab = fit_pos_vocab(path, schema);
  CHECK(schema.pos_vocab == std::vector<std::string>{"ADJ", "N", "V"});
  CHECK(schema.width() == 5);

  auto table = load_baseline_features(path, schema, {2, 1});
  REQUIRE(table.width == 5);
  REQUIRE(table.vectors.size() == 2);
  CHECK(table.vectors[0][0] == std::vector<double>{1.5, 2.0, 0.0, 0.0, 1.0});
  CHECK(table.vectors[0][1] == std::vector<double>{0.5, 1.0, 0.0, 1.0, 0.0});
  CHECK(table.vectors[1][0] == std::vector<double>{3.0, 4.0, 1.0, 0.0, 0.0});
}

TEST_CASE("baseline features: unseen POS maps to zeros, POS can be disabled") {
  TempDir dir;
  const std::string path = dir.file("base.tsv", "1\t2\tADV\tx\n");
  BaselineSchema schema;
  schema.total_columns = 4;
  schema.numeric_columns = {0, 1};
  schema.pos_column = 2;
  schema.use_pos = true;
  schema.pos_vocab = {"N", "V"};

  auto table = load_baseline_features(path, schema, {1});
  CHECK(table.vectors[0][0] == std::vector<double>{1.0, 2.0, 0.0, 0.0});

  schema.use_pos = false;
  auto no_pos = load_baseline_features(path, schema, {1});
  CHECK(no_pos.width == 2);
  CHECK(no_pos.vectors[0][0] == std::vector<double>{1.0, 2.0});
}

TEST_CASE("baseline features: flat file sliced by sentence lengths") {
  TempDir dir;
  const std::string path = dir.file("base.tsv", "1\n2\n3\n");
  BaselineSchema schema;
  schema.total_columns = 1;
  schema.numeric_columns = {0};
  schema.pos_column = -1;
  schema.use_pos = false;

  auto table = load_baseline_features(path, schema, {2, 1});
  REQUIRE(table.vectors.size() == 2);
  CHECK(table.vectors[0].size() == 2);
  CHECK(table.vectors[1].size() == 1);

  CHECK_THROWS_AS(load_baseline_features(path, schema, {2, 2}), DataError);
}

TEST_CASE("baseline features: errors on junk and missing vocabulary") {
  TempDir dir;
  const std::string path = dir.file("base.tsv", "1\tx\n");
  BaselineSchema schema;
  schema.total_columns = 2;
  schema.numeric_columns = {0, 1};
  schema.pos_column = -1;
  schema.use_pos = false;
  CHECK_THROWS_AS(load_baseline_features(path, schema, {1}), DataError);

  BaselineSchema pos_schema;
  pos_schema.total_columns = 2;
  pos_schema.numeric_columns = {0};
  pos_schema.pos_column = 1;
  pos_schema.use_pos = true;  // but no vocabulary fitted
  CHECK_THROWS_AS(load_baseline_features(path, pos_schema, {1}), SchemaError);
}

TEST_CASE("baseline schema JSON round-trip") {
  TempDir dir;
  BaselineSchema schema;
  schema.total_columns = 28;
  schema.numeric_columns = {2, 3, 4};
  schema.pos_column = 16;
  schema.use_pos = true;
  schema.pos_vocab = {"N", "V"};
  const std::string path = (dir.path / "schema.json").string();
  save_baseline_schema(schema, path);
  BaselineSchema loaded = load_baseline_schema(path);
  CHECK(loaded.numeric_columns == schema.numeric_columns);
  CHECK(loaded.pos_column == 16);
  CHECK(loaded.use_pos);
  CHECK(loaded.pos_vocab == schema.pos_vocab);
}
