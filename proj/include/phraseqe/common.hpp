#ifndef PHRASEQE_COMMON_HPP
#define PHRASEQE_COMMON_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace phraseqe {

using Tokens = std::vector<std::string>;

// Error categories map to CLI exit codes: usage=1, data=2, schema=3.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ASCII lowercasing; multi-byte UTF-8 sequences pass through untouched.
std::string lowercased(const std::string& s);
Tokens lowercased(const Tokens& toks);

// Splits on single spaces. "a  b" yields an empty token in between,
// which is rejected by the corpus loaders.
Tokens split_tokens(const std::string& line);
std::vector<std::string> split_on(const std::string& line, char sep);
std::string join_tokens(const Tokens& toks, char sep = ' ');

double parse_real(const std::string& s, const std::string& what);
long parse_int(const std::string& s, const std::string& what);

// Line reader over plain or gzip-compressed files (sniffed by content).
class LineReader {
public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Returns false on EOF. Strips trailing \n and \r.
  bool next(std::string& line);
  const std::string& path() const { return path_; }

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string path_;
};

std::vector<std::string> read_lines(const std::string& path);

// Little-endian binary IO used by the cache/feature/model formats.
class BinWriter {
public:
  explicit BinWriter(const std::string& path);
  ~BinWriter();
  void u32(uint32_t v);
  void u64(uint64_t v);
  void f64(double v);
  void str(const std::string& s);
  void close();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class BinReader {
public:
  explicit BinReader(const std::string& path);
  ~BinReader();
  uint32_t u32();
  uint64_t u64();
  double f64();
  std::string str();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace phraseqe

#endif
