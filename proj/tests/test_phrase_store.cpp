#include <doctest.h>
#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "phraseqe/phrase_store.hpp"

using namespace phraseqe;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string p =
      (std::filesystem::temp_directory_path() / ("pqs_" + name)).string();
  std::ofstream out(p, std::ios::trunc);
  out << content;
  return p;
}

PhrasePairStore fixture_store() {
  PhrasePairStore store;
  store.add({"a", "b"}, {"x", "y"}, 3);
  store.add({"a", "b"}, {"x", "q"}, 1);
  store.add({"c"}, {"z"}, 2);
  store.add({"a", "c"}, {"x", "z"}, 1);
  store.freeze();
  return store;
}

}  // namespace

TEST_CASE("ingest accumulates joint counts across tables") {
  const std::string line = "a b ||| x y ||| 0.5 0.5 ||| 0-0 ||| 4 3 3\n";
  const std::string path = temp_file("t1.txt", line);
  PhrasePairStore store;
  ingest_phrase_table(path, false, store);
  ingest_phrase_table(path, false, store);
  store.freeze();
  CHECK(store.count("a b", "x y") == doctest::Approx(6.0));
  std::filesystem::remove(path);
}

TEST_CASE("ingest with invert swaps the sides") {
  const std::string path =
      temp_file("t2.txt", "a b ||| x y ||| 0.5 0.5 ||| 0-0 ||| 4 3 3\n");
  PhrasePairStore store;
  ingest_phrase_table(path, true, store);
  store.freeze();
  CHECK(store.count("x y", "a b") == doctest::Approx(3.0));
  CHECK(store.count("a b", "x y") == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("ingest lowercases both sides; empty file leaves store unchanged") {
  const std::string path =
      temp_file("t3.txt", "A B ||| X y ||| 0.1 ||| 0-0 ||| 2 2 2\n");
  PhrasePairStore store;
  ingest_phrase_table(path, false, store);
  const std::string empty = temp_file("t4.txt", "");
  ingest_phrase_table(empty, false, store);
  store.freeze();
  CHECK(store.size() == 1);
  CHECK(store.count("a b", "x y") == doctest::Approx(2.0));
  std::filesystem::remove(path);
  std::filesystem::remove(empty);
}

TEST_CASE("counts field: last number when fewer than three") {
  const std::string path =
      temp_file("t5.txt", "a ||| x ||| 0.5 ||| 0-0 ||| 7\n"
                          "b ||| y ||| 0.5 ||| 0-0 ||| 9 4\n");
  PhrasePairStore store;
  ingest_phrase_table(path, false, store);
  store.freeze();
  CHECK(store.count("a", "x") == doctest::Approx(7.0));
  CHECK(store.count("b", "y") == doctest::Approx(4.0));
  std::filesystem::remove(path);
}

TEST_CASE("malformed tables are rejected") {
  PhrasePairStore store;
  const std::string noc = temp_file("t6.txt", "a ||| x ||| 0.5\n");
  CHECK_THROWS_AS(ingest_phrase_table(noc, false, store), DataError);
  const std::string few = temp_file("t7.txt", "a ||| x\n");
  CHECK_THROWS_AS(ingest_phrase_table(few, false, store), DataError);
  const std::string neg = temp_file("t8.txt", "a ||| x ||| 0.5 ||| 0-0 ||| 1 1 -2\n");
  CHECK_THROWS_AS(ingest_phrase_table(neg, false, store), DataError);
  std::filesystem::remove(noc);
  std::filesystem::remove(few);
  std::filesystem::remove(neg);
}

TEST_CASE("gzip tables are read transparently") {
  const std::string gz =
      (std::filesystem::temp_directory_path() / "pqs_table.txt.gz").string();
  {
    gzFile f = gzopen(gz.c_str(), "wb");
    REQUIRE(f != nullptr);
    const std::string content = "a b ||| x y ||| 0.5 ||| 0-0 ||| 4 3 3\n";
    gzwrite(f, content.data(), static_cast<unsigned>(content.size()));
    gzclose(f);
  }
  PhrasePairStore store;
  ingest_phrase_table(gz, false, store);
  store.freeze();
  CHECK(store.count("a b", "x y") == doctest::Approx(3.0));
  std::filesystem::remove(gz);
}

TEST_CASE("translation probabilities from accumulated counts") {
  PhrasePairStore store = fixture_store();
  CHECK(store.translation_prob("a b", "x y") == doctest::Approx(0.75));
  CHECK(store.translation_prob("a b", "x q") == doctest::Approx(0.25));
  CHECK(store.translation_prob("c", "z") == doctest::Approx(1.0));
  CHECK_THROWS_AS(store.translation_prob("a b", "zzz"), DataError);

  // Reverse conditioning uses the target-side marginal.
  CHECK(store.reverse_translation_prob("a b", "x y") == doctest::Approx(1.0));
  CHECK(store.reverse_translation_prob("a c", "x z") == doctest::Approx(1.0));
}

TEST_CASE("lookups answer both directions and miss cleanly") {
  PhrasePairStore store = fixture_store();
  auto fwd = store.lookup_by_source("a b");
  REQUIRE(fwd.size() == 2);
  CHECK(fwd[0].first == "x q");
  CHECK(fwd[0].second == doctest::Approx(1.0));
  CHECK(fwd[1].first == "x y");
  CHECK(fwd[1].second == doctest::Approx(3.0));

  auto rev = store.lookup_by_target("x y");
  REQUIRE(rev.size() == 1);
  CHECK(rev[0].first == "a b");
  CHECK(rev[0].second == doctest::Approx(3.0));

  CHECK(store.lookup_by_source("nope").empty());
  CHECK(store.lookup_by_target("nope").empty());
}

TEST_CASE("source/target indexes are exact inverses") {
  PhrasePairStore store = fixture_store();
  for (const auto& [src, tgt, count] : store.all_pairs()) {
    (void)count;
    auto rev = store.lookup_by_target(tgt);
    CHECK(std::any_of(rev.begin(), rev.end(),
                      [&](const auto& p) { return p.first == src; }));
  }
}

TEST_CASE("ingest order does not change the store") {
  std::vector<std::string> lines = {
      "a ||| x ||| 0.5 ||| 0-0 ||| 1 1 2\n",
      "b c ||| y ||| 0.5 ||| 0-0 ||| 1 1 5\n",
      "a ||| y z ||| 0.5 ||| 0-0 ||| 1 1 1\n",
      "d ||| w ||| 0.5 ||| 0-0 ||| 1 1 4\n",
  };
  std::mt19937 rng(99);
  auto build = [&](const std::vector<std::string>& ordered) {
    std::string content;
    for (const auto& l : ordered) content += l;
    const std::string path = temp_file("perm.txt", content);
    PhrasePairStore store;
    ingest_phrase_table(path, false, store);
    store.freeze();
    std::filesystem::remove(path);
    return store.all_pairs();
  };
  auto baseline = build(lines);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(lines.begin(), lines.end(), rng);
    CHECK(build(lines) == baseline);
  }
}

TEST_CASE("translation probabilities sum to one per source") {
  PhrasePairStore store = fixture_store();
  for (const auto& [src, tgt, count] : store.all_pairs()) {
    (void)tgt;
    (void)count;
    double sum = 0.0;
    for (const auto& [t, c] : store.lookup_by_source(src)) {
      (void)c;
      sum += store.translation_prob(src, t);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("store cache round-trips and rejects wrong files") {
  PhrasePairStore store = fixture_store();
  const std::string path =
      (std::filesystem::temp_directory_path() / "pqs_cache.bin").string();
  save_store_cache(store, path);
  PhrasePairStore loaded = load_store_cache(path);
  CHECK(loaded.all_pairs() == store.all_pairs());
  CHECK(loaded.max_source_len() == store.max_source_len());
  CHECK(loaded.max_target_len() == store.max_target_len());
  std::filesystem::remove(path);

  const std::string junk = temp_file("junk.bin", "not a cache at all");
  CHECK_THROWS_AS(load_store_cache(junk), SchemaError);
  std::filesystem::remove(junk);
}
