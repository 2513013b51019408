#include "hiervec/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hiervec/error.hpp"

namespace hiervec {

std::optional<int> EmbeddingMatrix::row_of(const std::string& word) const {
  auto it = index.find(word);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<Eigen::VectorXd> EmbeddingMatrix::lookup(
    const std::string& word) const {
  auto r = row_of(word);
  if (!r) return std::nullopt;
  return row_as_double(*r);
}

Eigen::VectorXd EmbeddingMatrix::row_as_double(int r) const {
  return data.row(r).cast<double>().transpose();
}

void EmbeddingMatrix::rebuild_index() {
  index.clear();
  index.reserve(vocab.size());
  for (size_t i = 0; i < vocab.size(); ++i)
    index.emplace(vocab[i], static_cast<int>(i));
}

std::unordered_set<std::string> load_vocab_filter(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocab filter: " + path);
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.insert(line);
  }
  return out;
}

namespace {

// Replaces invalid UTF-8 bytes with U+FFFD; returns true if anything changed.
bool sanitize_utf8(std::string* s) {
  static const char kReplacement[] = "\xEF\xBF\xBD";
  std::string out;
  bool changed = false;
  const auto* p = reinterpret_cast<const unsigned char*>(s->data());
  const size_t n = s->size();
  size_t i = 0;
  while (i < n) {
    unsigned char c = p[i];
    size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    bool ok = len > 0 && i + len <= n;
    for (size_t k = 1; ok && k < len; ++k)
      if ((p[i + k] & 0xC0) != 0x80) ok = false;
    if (ok) {
      out.append(reinterpret_cast<const char*>(p + i), len);
      i += len;
    } else {
      out.append(kReplacement);
      changed = true;
      ++i;
    }
  }
  if (changed) *s = std::move(out);
  return changed;
}

void finalize(EmbeddingMatrix* m, const std::string& path) {
  m->rebuild_index();
  for (int r = 0; r < m->rows(); ++r) {
    for (int c = 0; c < m->dim; ++c) {
      if (!std::isfinite(m->data(r, c)))
        throw Error("non-finite entry for token '" + m->vocab[r] + "' in " +
                    path);
    }
  }
}

}  // namespace

EmbeddingMatrix load_word2vec_binary(
    const std::string& path, const std::unordered_set<std::string>* restrict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open embedding file: " + path);

  long long vocab_count = 0, dim = 0;
  std::string header;
  if (!std::getline(in, header))
    throw Error("word2vec header missing in " + path);
  {
    std::istringstream hs(header);
    if (!(hs >> vocab_count >> dim) || vocab_count <= 0 || dim <= 0)
      throw Error("malformed word2vec header '" + header + "' in " + path);
  }

  EmbeddingMatrix m;
  m.dim = static_cast<int>(dim);
  std::vector<float> rows;
  std::unordered_set<std::string> seen;
  std::vector<float> buf(static_cast<size_t>(dim));

  for (long long rec = 0; rec < vocab_count; ++rec) {
    std::string token;
    int ch;
    // tolerate newlines between records (some exporters emit them)
    while ((ch = in.get()) != EOF && (ch == '\n' || ch == '\r')) {}
    while (ch != EOF && ch != ' ') {
      token.push_back(static_cast<char>(ch));
      ch = in.get();
    }
    if (ch == EOF) {
      in.clear();
      in.seekg(0, std::ios::end);
      throw Error("truncated word2vec file at byte offset " +
                  std::to_string(static_cast<long long>(in.tellg())) +
                  " (record " + std::to_string(rec) + " of " +
                  std::to_string(vocab_count) + ") in " + path);
    }
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(sizeof(float) * buf.size()));
    if (in.gcount() !=
        static_cast<std::streamsize>(sizeof(float) * buf.size())) {
      in.clear();
      in.seekg(0, std::ios::end);
      throw Error("truncated word2vec record '" + token + "' at byte offset " +
                  std::to_string(static_cast<long long>(in.tellg())) + " in " +
                  path);
    }
    if (sanitize_utf8(&token))
      std::cerr << "warning: non-UTF-8 token replaced at record " << rec
                << " in " << path << "\n";
    if (restrict && !restrict->count(token)) continue;
    if (!seen.insert(token).second) {
      std::cerr << "warning: duplicate token '" << token
                << "' kept first occurrence in " << path << "\n";
      continue;
    }
    m.vocab.push_back(token);
    rows.insert(rows.end(), buf.begin(), buf.end());
  }

  m.data = MatrixXfRM(static_cast<Eigen::Index>(m.vocab.size()), m.dim);
  std::memcpy(m.data.data(), rows.data(), rows.size() * sizeof(float));
  finalize(&m, path);
  if (!restrict && m.rows() == 0)
    throw Error("no vectors loaded from " + path);
  return m;
}

EmbeddingMatrix load_glove_text(
    const std::string& path, const std::unordered_set<std::string>* restrict) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file: " + path);

  EmbeddingMatrix m;
  std::vector<float> rows;
  std::unordered_set<std::string> seen;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t sp = line.find(' ');
    if (sp == std::string::npos)
      throw Error("no vector values on line " + std::to_string(line_no) +
                  " of " + path);
    std::string token = line.substr(0, sp);
    std::vector<float> vals;
    const char* p = line.c_str() + sp;
    char* end = nullptr;
    while (*p) {
      float v = std::strtof(p, &end);
      if (end == p) break;
      vals.push_back(v);
      p = end;
    }
    if (m.dim == 0) {
      if (vals.empty())
        throw Error("no vector values on line 1 of " + path);
      m.dim = static_cast<int>(vals.size());
    } else if (static_cast<int>(vals.size()) != m.dim) {
      throw Error("dimension mismatch (" + std::to_string(vals.size()) +
                  " vs " + std::to_string(m.dim) + ") on line " +
                  std::to_string(line_no) + " of " + path);
    }
    if (sanitize_utf8(&token))
      std::cerr << "warning: non-UTF-8 token replaced on line " << line_no
                << " in " << path << "\n";
    if (restrict && !restrict->count(token)) continue;
    if (!seen.insert(token).second) {
      std::cerr << "warning: duplicate token '" << token
                << "' kept first occurrence in " << path << "\n";
      continue;
    }
    m.vocab.push_back(token);
    rows.insert(rows.end(), vals.begin(), vals.end());
  }
  if (line_no == 0) throw Error("empty embedding file: " + path);

  m.data = MatrixXfRM(static_cast<Eigen::Index>(m.vocab.size()), m.dim);
  std::memcpy(m.data.data(), rows.data(), rows.size() * sizeof(float));
  finalize(&m, path);
  return m;
}

void save_word2vec_binary(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << m.rows() << " " << m.dim << "\n";
  for (int r = 0; r < m.rows(); ++r) {
    out << m.vocab[r] << ' ';
    out.write(reinterpret_cast<const char*>(m.data.row(r).data()),
              static_cast<std::streamsize>(sizeof(float) * m.dim));
  }
  if (!out) throw Error("write failed: " + path);
}

void save_glove_text(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  char num[64];
  for (int r = 0; r < m.rows(); ++r) {
    out << m.vocab[r];
    for (int c = 0; c < m.dim; ++c) {
      std::snprintf(num, sizeof(num), " %.9g", m.data(r, c));
      out << num;
    }
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace hiervec
