#include "phraseqe/common.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace phraseqe {

std::string lowercased(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Tokens lowercased(const Tokens& toks) {
  Tokens out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(lowercased(t));
  return out;
}

Tokens split_tokens(const std::string& line) {
  if (line.empty()) return {};
  return split_on(line, ' ');
}

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string join_tokens(const Tokens& toks, char sep) {
  std::string out;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (i) out.push_back(sep);
    out += toks[i];
  }
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  if (s.empty()) throw DataError(what + ": empty number");
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size())
    throw DataError(what + ": cannot parse real '" + s + "'");
  return v;
}

long parse_int(const std::string& s, const std::string& what) {
  if (s.empty()) throw DataError(what + ": empty integer");
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size())
    throw DataError(what + ": cannot parse integer '" + s + "'");
  return v;
}

// gzopen reads plain files transparently, so one code path covers both.
struct LineReader::Impl {
  gzFile f = nullptr;
  std::string buf;
  size_t pos = 0;
  bool eof = false;
};

LineReader::LineReader(const std::string& path) : impl_(new Impl), path_(path) {
  impl_->f = gzopen(path.c_str(), "rb");
  if (!impl_->f) throw DataError("cannot open file: " + path);
}

LineReader::~LineReader() {
  if (impl_ && impl_->f) gzclose(impl_->f);
}

bool LineReader::next(std::string& line) {
  Impl& im = *impl_;
  line.clear();
  while (true) {
    size_t nl = im.buf.find('\n', im.pos);
    if (nl != std::string::npos) {
      line.append(im.buf, im.pos, nl - im.pos);
      im.pos = nl + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    line.append(im.buf, im.pos, im.buf.size() - im.pos);
    im.buf.clear();
    im.pos = 0;
    if (im.eof) {
      if (line.empty()) return false;
      if (line.back() == '\r') line.pop_back();
      return true;
    }
    char chunk[1 << 16];
    int n = gzread(im.f, chunk, sizeof(chunk));
    if (n < 0) throw DataError("read error in " + path_);
    if (n == 0) {
      im.eof = true;
    } else {
      im.buf.assign(chunk, static_cast<size_t>(n));
    }
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  LineReader r(path);
  std::vector<std::string> lines;
  std::string line;
  while (r.next(line)) lines.push_back(line);
  return lines;
}

struct BinWriter::Impl {
  std::ofstream out;
};

BinWriter::BinWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) throw DataError("cannot open for writing: " + path);
}

BinWriter::~BinWriter() = default;

void BinWriter::u32(uint32_t v) {
  impl_->out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void BinWriter::u64(uint64_t v) {
  impl_->out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void BinWriter::f64(double v) {
  impl_->out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void BinWriter::str(const std::string& s) {
  u32(static_cast<uint32_t>(s.size()));
  impl_->out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinWriter::close() {
  impl_->out.close();
  if (!impl_->out) throw DataError("write failure on close");
}

struct BinReader::Impl {
  std::ifstream in;
  std::string path;
};

BinReader::BinReader(const std::string& path) : impl_(new Impl) {
  impl_->in.open(path, std::ios::binary);
  impl_->path = path;
  if (!impl_->in) throw DataError("cannot open file: " + path);
}

BinReader::~BinReader() = default;

uint32_t BinReader::u32() {
  uint32_t v = 0;
  impl_->in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!impl_->in) throw DataError("truncated file: " + impl_->path);
  return v;
}

uint64_t BinReader::u64() {
  uint64_t v = 0;
  impl_->in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!impl_->in) throw DataError("truncated file: " + impl_->path);
  return v;
}

double BinReader::f64() {
  double v = 0;
  impl_->in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!impl_->in) throw DataError("truncated file: " + impl_->path);
  return v;
}

std::string BinReader::str() {
  uint32_t n = u32();
  std::string s(n, '\0');
  impl_->in.read(s.data(), n);
  if (!impl_->in) throw DataError("truncated file: " + impl_->path);
  return s;
}

}  // namespace phraseqe
