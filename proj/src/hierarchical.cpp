#include "hiervec/hierarchical.hpp"

#include <cstdio>
#include <fstream>

#include "hiervec/error.hpp"

namespace hiervec {

const char* kind_name(HierKind k) {
  return k == HierKind::Overcomplete ? "overcomplete" : "weighted";
}

HierKind parse_kind(const std::string& s) {
  if (s == "overcomplete") return HierKind::Overcomplete;
  if (s == "weighted") return HierKind::Weighted;
  throw Error("unknown kind '" + s + "' (expected overcomplete|weighted)");
}

std::optional<int> VectorTable::row_of(const std::string& word) const {
  auto it = index.find(word);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<Eigen::VectorXd> VectorTable::lookup(
    const std::string& word) const {
  auto r = row_of(word);
  if (!r) return std::nullopt;
  return Eigen::VectorXd(data.row(*r).transpose());
}

void VectorTable::rebuild_index() {
  index.clear();
  index.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i)
    index.emplace(words[i], static_cast<int>(i));
}

VectorTable to_table(const EmbeddingMatrix& m) {
  VectorTable t;
  t.words = m.vocab;
  t.data = m.data.cast<double>();
  t.index = m.index;
  return t;
}

Eigen::VectorXd overcomplete(const SyntacticRepr& s, const Eigen::VectorXd& r) {
  if (r.size() == 0) throw Error("overcomplete: empty base vector");
  const Eigen::Index L = r.size();
  Eigen::VectorXd out(kNumPos * L);
  for (int i = 0; i < kNumPos; ++i) out.segment(i * L, L) = s.coords(i) * r;
  return out;
}

Eigen::VectorXd weighted(const SyntacticRepr& s, const Eigen::VectorXd& r) {
  if (r.size() == 0) throw Error("weighted: empty base vector");
  return s.coords.mean() * r;
}

VectorTable compose_all(const SyntacticTable& reps, const EmbeddingMatrix& m,
                        HierKind kind, ComposeStats* stats) {
  VectorTable out;
  int missing = 0;
  for (int i = 0; i < reps.rows(); ++i) {
    if (m.row_of(reps.words[i]))
      out.words.push_back(reps.words[i]);
    else
      ++missing;
  }
  if (out.words.empty())
    throw Error("compose_all: no overlap between representations and vocabulary");
  const Eigen::Index L = m.dim;
  const Eigen::Index D = kind == HierKind::Overcomplete ? kNumPos * L : L;
  out.data = Eigen::MatrixXd(static_cast<Eigen::Index>(out.words.size()), D);
  for (size_t i = 0; i < out.words.size(); ++i) {
    const SyntacticRepr s = *reps.lookup(out.words[i]);
    const Eigen::VectorXd r = *m.lookup(out.words[i]);
    out.data.row(static_cast<Eigen::Index>(i)) =
        (kind == HierKind::Overcomplete ? overcomplete(s, r) : weighted(s, r))
            .transpose();
  }
  if (stats) stats->missing = missing;
  out.rebuild_index();
  return out;
}

void save_vector_table(const VectorTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  char num[64];
  for (int r = 0; r < t.rows(); ++r) {
    out << t.words[r];
    for (int c = 0; c < t.dim(); ++c) {
      std::snprintf(num, sizeof(num), "\t%.17g", t.data(r, c));
      out << num;
    }
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

VectorTable load_vector_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  VectorTable t;
  std::vector<double> vals;
  int dim = 0;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("malformed vector table line " + std::to_string(line_no) +
                  " in " + path);
    t.words.push_back(line.substr(0, tab));
    const char* p = line.c_str() + tab;
    char* end = nullptr;
    int count = 0;
    while (*p) {
      double v = std::strtod(p, &end);
      if (end == p) break;
      vals.push_back(v);
      ++count;
      p = end;
    }
    if (dim == 0) dim = count;
    else if (count != dim)
      throw Error("dimension mismatch on line " + std::to_string(line_no) +
                  " in " + path);
  }
  if (t.words.empty()) throw Error("empty vector table " + path);
  t.data = Eigen::MatrixXd(static_cast<Eigen::Index>(t.words.size()), dim);
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < dim; ++c)
      t.data(r, c) = vals[static_cast<size_t>(r) * dim + c];
  t.rebuild_index();
  return t;
}

}  // namespace hiervec
