#include "hiervec/syntax.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "hiervec/error.hpp"
#include "hiervec/linalg.hpp"

namespace hiervec {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Absolute: return "absolute";
    case Variant::Interpretable: return "interpretable";
    case Variant::L2: return "l2";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "absolute") return Variant::Absolute;
  if (s == "interpretable") return Variant::Interpretable;
  if (s == "l2") return Variant::L2;
  throw Error("unknown variant '" + s +
              "' (expected absolute|interpretable|l2)");
}

TransitionMatrix build_transition_matrix(const EmbeddingMatrix& m,
                                         const PosLexicon& lex,
                                         RowScaling scaling) {
  TransitionMatrix C;
  C.rows = Eigen::MatrixXd::Zero(kNumPos, m.dim);
  for (int c = 0; c < kNumPos; ++c) {
    const auto& words = lex.classes[c];
    if (words.empty())
      throw Error("transition matrix: class '" + pos_name(c) + "' is empty");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(m.dim);
    for (const auto& w : words) {
      auto r = m.row_of(w);
      if (!r)
        throw Error("transition matrix: word '" + w +
                    "' not in vocabulary (intersect the lexicon first)");
      sum += m.row_as_double(*r);
    }
    const double denom = scaling == RowScaling::ClassMean
                             ? static_cast<double>(words.size())
                             : static_cast<double>(m.rows());
    C.rows.row(c) = (sum / denom).transpose();
    C.source_counts[c] = static_cast<int>(words.size());
    if (C.rows.row(c).norm() == 0.0)
      throw Error("transition matrix: class '" + pos_name(c) +
                  "' averaged to the zero vector");
  }
  C.pinv_t = pseudoinverse(C.rows.transpose());
  return C;
}

SyntacticRepr project(const Eigen::VectorXd& word_vec,
                      const TransitionMatrix& C) {
  if (word_vec.size() != C.rows.cols())
    throw Error("project: vector length " + std::to_string(word_vec.size()) +
                " does not match embedding dimension " +
                std::to_string(C.rows.cols()));
  SyntacticRepr s;
  s.coords = C.pinv_t * word_vec;
  s.variant = Variant::Absolute;
  return s;
}

SyntacticRepr normalize_interpretable(const SyntacticRepr& s) {
  SyntacticRepr out;
  out.variant = Variant::Interpretable;
  const double lo = s.coords.minCoeff();
  const double hi = s.coords.maxCoeff();
  if (hi == lo) {
    out.coords.setOnes();
    return out;
  }
  for (int i = 0; i < kNumPos; ++i) {
    const double intermediate = (s.coords(i) - lo) / (hi - lo);
    out.coords(i) = (intermediate + 1.0) / 2.0;
  }
  return out;
}

SyntacticRepr normalize_l2(const SyntacticRepr& s) {
  const double n = s.coords.norm();
  if (n == 0.0) throw Error("normalize_l2: zero vector");
  SyntacticRepr out;
  out.coords = s.coords / n;
  out.variant = Variant::L2;
  return out;
}

std::optional<SyntacticRepr> SyntacticTable::lookup(
    const std::string& word) const {
  auto it = index.find(word);
  if (it == index.end()) return std::nullopt;
  SyntacticRepr s;
  s.coords = coords.row(it->second).transpose();
  s.variant = variant;
  return s;
}

void SyntacticTable::rebuild_index() {
  index.clear();
  index.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i)
    index.emplace(words[i], static_cast<int>(i));
}

SyntacticTable project_all(const EmbeddingMatrix& m, const TransitionMatrix& C,
                           Variant variant,
                           const std::unordered_set<std::string>* word_set) {
  SyntacticTable t;
  t.variant = variant;
  for (int r = 0; r < m.rows(); ++r) {
    if (word_set && !word_set->count(m.vocab[r])) continue;
    t.words.push_back(m.vocab[r]);
  }
  t.coords = Eigen::MatrixXd(static_cast<Eigen::Index>(t.words.size()),
                             kNumPos);
  for (size_t i = 0; i < t.words.size(); ++i) {
    SyntacticRepr s = project(*m.lookup(t.words[i]), C);
    if (variant == Variant::Interpretable) s = normalize_interpretable(s);
    else if (variant == Variant::L2) s = normalize_l2(s);
    t.coords.row(static_cast<Eigen::Index>(i)) = s.coords.transpose();
  }
  t.rebuild_index();
  return t;
}

void save_syntactic_text(const SyntacticTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  char num[64];
  for (int r = 0; r < t.rows(); ++r) {
    out << t.words[r] << '\t';
    for (int c = 0; c < kNumPos; ++c) {
      std::snprintf(num, sizeof(num), c ? " %.17g" : "%.17g", t.coords(r, c));
      out << num;
    }
    out << '\t' << variant_name(t.variant) << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

SyntacticTable load_syntactic_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  SyntacticTable t;
  std::vector<double> vals;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = line.rfind('\t');
    if (t1 == std::string::npos || t2 == t1)
      throw Error("malformed syntactic table line " + std::to_string(line_no) +
                  " in " + path);
    t.words.push_back(line.substr(0, t1));
    t.variant = parse_variant(line.substr(t2 + 1));
    const char* p = line.c_str() + t1 + 1;
    char* end = nullptr;
    for (int c = 0; c < kNumPos; ++c) {
      vals.push_back(std::strtod(p, &end));
      if (end == p)
        throw Error("bad coordinate on line " + std::to_string(line_no) +
                    " in " + path);
      p = end;
    }
  }
  t.coords = Eigen::MatrixXd(static_cast<Eigen::Index>(t.words.size()),
                             kNumPos);
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < kNumPos; ++c)
      t.coords(r, c) = vals[static_cast<size_t>(r) * kNumPos + c];
  t.rebuild_index();
  return t;
}

namespace {
constexpr char kMagic[8] = {'H', 'V', 'S', 'Y', 'N', '0', '1', '\n'};
}

void save_syntactic_binary(const SyntacticTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  const uint32_t variant = static_cast<uint32_t>(t.variant);
  const uint64_t n = static_cast<uint64_t>(t.rows());
  out.write(reinterpret_cast<const char*>(&variant), sizeof(variant));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (int r = 0; r < t.rows(); ++r) {
    const uint32_t len = static_cast<uint32_t>(t.words[r].size());
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(t.words[r].data(), len);
    Eigen::Matrix<double, kNumPos, 1> row = t.coords.row(r).transpose();
    out.write(reinterpret_cast<const char*>(row.data()),
              sizeof(double) * kNumPos);
  }
  if (!out) throw Error("write failed: " + path);
}

SyntacticTable load_syntactic_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (in.gcount() != sizeof(magic) || std::memcmp(magic, kMagic, sizeof(magic)))
    throw Error("bad syntactic cache header in " + path);
  uint32_t variant = 0;
  uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&variant), sizeof(variant));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!in || variant > 2) throw Error("corrupt syntactic cache " + path);
  SyntacticTable t;
  t.variant = static_cast<Variant>(variant);
  t.coords = Eigen::MatrixXd(static_cast<Eigen::Index>(n), kNumPos);
  for (uint64_t r = 0; r < n; ++r) {
    uint32_t len = 0;
    in.read(reinterpret_cast<char*>(&len), sizeof(len));
    std::string w(len, '\0');
    in.read(w.data(), len);
    Eigen::Matrix<double, kNumPos, 1> row;
    in.read(reinterpret_cast<char*>(row.data()), sizeof(double) * kNumPos);
    if (!in) throw Error("truncated syntactic cache " + path);
    t.words.push_back(std::move(w));
    t.coords.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  t.rebuild_index();
  return t;
}

}  // namespace hiervec
