#include "hiervec/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hiervec/error.hpp"

namespace fs = std::filesystem;

namespace hiervec {

std::vector<std::string> tokenize(const std::string& text,
                                  const TokenizerOptions& opts) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isspace(c) || (opts.strip_punct && std::ispunct(c) && c != '\'')) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
      continue;
    }
    cur.push_back(opts.lowercase ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

namespace {

uint64_t splitmix64(uint64_t* state) {
  uint64_t z = (*state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the header block (everything up to the first blank line) when one
// exists and a body follows it.
std::string strip_header(const std::string& doc) {
  size_t pos = doc.find("\n\n");
  if (pos == std::string::npos) pos = doc.find("\r\n\r\n");
  if (pos == std::string::npos) return doc;
  std::string body = doc.substr(pos);
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return doc;
  return body;
}

std::vector<std::string> sorted_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no documents in " + dir);
  return files;
}

void split_docs(std::vector<LabeledDoc> docs, double train_frac,
                double val_frac, uint64_t seed, LabeledTextDataset* out) {
  auto order = shuffled_indices(docs.size(), seed);
  const size_t n = docs.size();
  const size_t n_train = static_cast<size_t>(train_frac * n);
  const size_t n_val = static_cast<size_t>(val_frac * n);
  for (size_t i = 0; i < n; ++i) {
    LabeledDoc& d = docs[order[i]];
    if (i < n_train) out->train.push_back(std::move(d));
    else if (i < n_train + n_val) out->val.push_back(std::move(d));
    else out->test.push_back(std::move(d));
  }
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void deterministic_shuffle(std::vector<size_t>* idx, uint64_t seed) {
  uint64_t state = seed ^ 0xa5a5a5a5deadbeefULL;
  for (size_t i = idx->size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(splitmix64(&state) % i);
    std::swap((*idx)[i - 1], (*idx)[j]);
  }
}

std::vector<size_t> shuffled_indices(size_t n, uint64_t seed) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  deterministic_shuffle(&idx, seed);
  return idx;
}

LabeledTextDataset load_newsgroups_pair(const std::string& dir_a,
                                        const std::string& dir_b,
                                        double train_frac, double val_frac,
                                        uint64_t seed,
                                        const TokenizerOptions& opts) {
  LabeledTextDataset ds;
  ds.class_names = {fs::path(dir_a).filename().string(),
                    fs::path(dir_b).filename().string()};
  std::vector<LabeledDoc> docs;
  int label = 0;
  for (const auto& dir : {dir_a, dir_b}) {
    for (const auto& f : sorted_files(dir)) {
      LabeledDoc d;
      d.label = label;
      d.tokens = tokenize(strip_header(read_file(f)), opts);
      docs.push_back(std::move(d));
    }
    ++label;
  }
  split_docs(std::move(docs), train_frac, val_frac, seed, &ds);
  return ds;
}

LabeledTextDataset load_trec(const std::string& train_path,
                             const std::string& test_path, double val_frac,
                             uint64_t seed, const TokenizerOptions& opts) {
  LabeledTextDataset ds;
  std::vector<std::string>& names = ds.class_names;
  auto label_of = [&names](const std::string& coarse) {
    auto it = std::find(names.begin(), names.end(), coarse);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    names.push_back(coarse);
    return static_cast<int>(names.size()) - 1;
  };
  auto parse = [&](const std::string& path, std::vector<LabeledDoc>* out) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const size_t colon = line.find(':');
      const size_t space = line.find(' ');
      if (colon == std::string::npos || space == std::string::npos ||
          colon > space)
        throw Error("malformed TREC line " + std::to_string(line_no) + " in " +
                    path);
      LabeledDoc d;
      d.label = label_of(line.substr(0, colon));
      d.tokens = tokenize(line.substr(space + 1), opts);
      out->push_back(std::move(d));
    }
  };
  std::vector<LabeledDoc> train_all;
  parse(train_path, &train_all);
  parse(test_path, &ds.test);
  // carve the validation slice out of the shuffled training file
  auto order = shuffled_indices(train_all.size(), seed);
  const size_t n_val = static_cast<size_t>(val_frac * train_all.size());
  for (size_t i = 0; i < train_all.size(); ++i) {
    LabeledDoc& d = train_all[order[i]];
    if (i < n_val) ds.val.push_back(std::move(d));
    else ds.train.push_back(std::move(d));
  }
  return ds;
}

namespace {

void parse_label_tsv(const std::string& path, const std::string& neutral_label,
                     const TokenizerOptions& opts,
                     std::vector<std::string>* names,
                     std::vector<LabeledDoc>* out) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("expected label<TAB>text on line " + std::to_string(line_no) +
                  " in " + path);
    const std::string label = line.substr(0, tab);
    if (label == neutral_label) continue;
    auto it = std::find(names->begin(), names->end(), label);
    int id;
    if (it != names->end()) {
      id = static_cast<int>(it - names->begin());
    } else {
      names->push_back(label);
      id = static_cast<int>(names->size()) - 1;
    }
    LabeledDoc d;
    d.label = id;
    d.tokens = tokenize(line.substr(tab + 1), opts);
    out->push_back(std::move(d));
  }
}

}  // namespace

LabeledTextDataset load_sst(const std::string& train_path,
                            const std::string& dev_path,
                            const std::string& test_path,
                            const std::string& neutral_label,
                            const TokenizerOptions& opts) {
  LabeledTextDataset ds;
  parse_label_tsv(train_path, neutral_label, opts, &ds.class_names, &ds.train);
  parse_label_tsv(dev_path, neutral_label, opts, &ds.class_names, &ds.val);
  parse_label_tsv(test_path, neutral_label, opts, &ds.class_names, &ds.test);
  return ds;
}

LabeledTextDataset load_np_bracketing(const std::string& path,
                                      double train_frac, double val_frac,
                                      uint64_t seed,
                                      const TokenizerOptions& opts) {
  LabeledTextDataset ds;
  std::vector<LabeledDoc> docs;
  parse_label_tsv(path, "", opts, &ds.class_names, &docs);
  split_docs(std::move(docs), train_frac, val_frac, seed, &ds);
  return ds;
}

std::vector<Triplet> load_semeval_triplets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<Triplet> out;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_fields(line, ',');
    if (f.size() != 4)
      throw Error("expected concept1,concept2,attribute,label on line " +
                  std::to_string(line_no) + " in " + path);
    Triplet t;
    t.concept1 = f[0];
    t.concept2 = f[1];
    t.attribute = f[2];
    t.label = std::stoi(f[3]);
    out.push_back(std::move(t));
  }
  if (out.empty()) throw Error("no triplets in " + path);
  return out;
}

SimilarityDataset load_similarity(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  SimilarityDataset ds;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',' || c == '\t' || c == ';') c = ' ';
    std::istringstream ss(line);
    std::string w1, w2, score_str;
    if (!(ss >> w1 >> w2 >> score_str))
      throw Error("expected word1,word2,score on line " +
                  std::to_string(line_no) + " in " + path);
    char* end = nullptr;
    const double score = std::strtod(score_str.c_str(), &end);
    if (end == score_str.c_str() || *end != '\0') {
      if (line_no == 1) continue;  // header row
      throw Error("bad score on line " + std::to_string(line_no) + " in " +
                  path);
    }
    ds.pairs.emplace_back(w1, w2, score);
  }
  if (ds.pairs.empty()) throw Error("no pairs in " + path);
  return ds;
}

}  // namespace hiervec
