#include "phraseqe/phrase_store.hpp"

#include <algorithm>
#include <cassert>

namespace phraseqe {

void PhrasePairStore::add(const Tokens& source, const Tokens& target, double count) {
  if (frozen_) throw DataError("phrase store is frozen");
  if (source.empty() || target.empty())
    throw DataError("phrase pair with an empty side");
  if (!(count > 0.0)) throw DataError("non-positive phrase pair count");
  building_[join_tokens(lowercased(source))][join_tokens(lowercased(target))] += count;
}

void PhrasePairStore::freeze() {
  if (frozen_) return;
  by_source_.clear();
  by_target_.clear();
  std::map<std::string, std::map<std::string, double>> inverted;
  n_pairs_ = 0;
  max_source_len_ = 0;
  max_target_len_ = 0;
  for (const auto& [src, targets] : building_) {
    SourceEntry entry;
    entry.targets.reserve(targets.size());
    for (const auto& [tgt, c] : targets) {
      entry.targets.push_back({tgt, c});
      entry.marginal += c;
      inverted[tgt][src] += c;
      ++n_pairs_;
      max_target_len_ = std::max(max_target_len_, split_tokens(tgt).size());
    }
    max_source_len_ = std::max(max_source_len_, split_tokens(src).size());
    by_source_.emplace(src, std::move(entry));
  }
  for (const auto& [tgt, sources] : inverted) {
    SourceEntry entry;
    entry.targets.reserve(sources.size());
    for (const auto& [src, c] : sources) {
      entry.targets.push_back({src, c});
      entry.marginal += c;
    }
    by_target_.emplace(tgt, std::move(entry));
  }
  building_.clear();
  frozen_ = true;
}

const PhrasePairStore::SourceEntry* PhrasePairStore::find_source(
    const std::string& source_phrase) const {
  assert(frozen_);
  auto it = by_source_.find(source_phrase);
  return it == by_source_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, double>> PhrasePairStore::lookup_by_source(
    const std::string& source_phrase) const {
  std::vector<std::pair<std::string, double>> out;
  if (const SourceEntry* e = find_source(source_phrase))
    for (const auto& t : e->targets) out.emplace_back(t.phrase, t.count);
  return out;
}

std::vector<std::pair<std::string, double>> PhrasePairStore::lookup_by_target(
    const std::string& target_phrase) const {
  assert(frozen_);
  std::vector<std::pair<std::string, double>> out;
  auto it = by_target_.find(target_phrase);
  if (it != by_target_.end())
    for (const auto& t : it->second.targets) out.emplace_back(t.phrase, t.count);
  return out;
}

const PhrasePairStore::Target* PhrasePairStore::find_pair(
    const std::string& src, const std::string& tgt) const {
  const SourceEntry* e = find_source(src);
  if (!e) return nullptr;
  auto it = std::lower_bound(
      e->targets.begin(), e->targets.end(), tgt,
      [](const Target& a, const std::string& b) { return a.phrase < b; });
  if (it == e->targets.end() || it->phrase != tgt) return nullptr;
  return &*it;
}

double PhrasePairStore::count(const std::string& src, const std::string& tgt) const {
  const Target* t = find_pair(src, tgt);
  return t ? t->count : 0.0;
}

double PhrasePairStore::source_marginal(const std::string& src) const {
  const SourceEntry* e = find_source(src);
  return e ? e->marginal : 0.0;
}

double PhrasePairStore::target_marginal(const std::string& tgt) const {
  assert(frozen_);
  auto it = by_target_.find(tgt);
  return it == by_target_.end() ? 0.0 : it->second.marginal;
}

double PhrasePairStore::translation_prob(const std::string& src,
                                         const std::string& tgt) const {
  const Target* t = find_pair(src, tgt);
  if (!t) throw DataError("translation_prob on absent pair ('" + src + "', '" +
                          tgt + "')");
  return t->count / source_marginal(src);
}

double PhrasePairStore::reverse_translation_prob(const std::string& src,
                                                 const std::string& tgt) const {
  const Target* t = find_pair(src, tgt);
  if (!t) throw DataError("reverse_translation_prob on absent pair ('" + src +
                          "', '" + tgt + "')");
  return t->count / target_marginal(tgt);
}

std::vector<std::tuple<std::string, std::string, double>> PhrasePairStore::all_pairs()
    const {
  assert(frozen_);
  std::vector<std::tuple<std::string, std::string, double>> out;
  out.reserve(n_pairs_);
  std::vector<std::string> keys;
  keys.reserve(by_source_.size());
  for (const auto& [src, _] : by_source_) keys.push_back(src);
  std::sort(keys.begin(), keys.end());
  for (const auto& src : keys)
    for (const auto& t : by_source_.at(src).targets)
      out.emplace_back(src, t.phrase, t.count);
  return out;
}

void ingest_phrase_table(const std::string& path, bool invert,
                         PhrasePairStore& store) {
  LineReader reader(path);
  std::string line;
  size_t line_no = 0;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t pos = line.find(" ||| ", start);
      if (pos == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, pos - start));
      start = pos + 5;
    }
    const std::string where = path + ":" + std::to_string(line_no);
    if (fields.size() < 3)
      throw DataError(where + ": malformed phrase table line (" +
                      std::to_string(fields.size()) + " fields)");

    Tokens src = split_tokens(fields[0]);
    Tokens tgt = split_tokens(fields[1]);
    if (src.empty() || tgt.empty())
      throw DataError(where + ": empty phrase side");

    // Joint count: third number of the counts field when three are present,
    // otherwise the last number. Tables without a counts column (fewer than
    // five fields) cannot supply joint counts and are rejected.
    if (fields.size() < 5)
      throw DataError(where + ": no counts field; this table cannot be used "
                      "(joint counts are required)");
    Tokens counts = split_tokens(fields[4]);
    if (counts.empty()) throw DataError(where + ": empty counts field");
    const std::string& raw =
        counts.size() >= 3 ? counts[2] : counts.back();
    double joint = parse_real(raw, where + " counts field");
    if (!(joint > 0.0)) throw DataError(where + ": non-positive joint count");

    if (invert)
      store.add(tgt, src, joint);
    else
      store.add(src, tgt, joint);
  }
}

namespace {
constexpr uint32_t kStoreMagic = 0x53505150;  // "PQPS"
constexpr uint32_t kStoreVersion = 1;
}  // namespace

void save_store_cache(const PhrasePairStore& store, const std::string& path) {
  if (!store.frozen()) throw DataError("store must be frozen before saving");
  BinWriter w(path);
  w.u32(kStoreMagic);
  w.u32(kStoreVersion);
  auto pairs = store.all_pairs();
  w.u64(pairs.size());
  for (const auto& [src, tgt, c] : pairs) {
    w.str(src);
    w.str(tgt);
    w.f64(c);
  }
  w.close();
}

PhrasePairStore load_store_cache(const std::string& path) {
  BinReader r(path);
  if (r.u32() != kStoreMagic)
    throw SchemaError(path + ": not a phrase store cache");
  uint32_t version = r.u32();
  if (version != kStoreVersion)
    throw SchemaError(path + ": cache version " + std::to_string(version) +
                      " unsupported (expected " + std::to_string(kStoreVersion) + ")");
  PhrasePairStore store;
  uint64_t n = r.u64();
  for (uint64_t i = 0; i < n; ++i) {
    std::string src = r.str();
    std::string tgt = r.str();
    double c = r.f64();
    store.add(split_tokens(src), split_tokens(tgt), c);
  }
  store.freeze();
  return store;
}

}  // namespace phraseqe
