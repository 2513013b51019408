#include "hiervec/interpret.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hiervec/error.hpp"
#include "hiervec/linalg.hpp"

namespace hiervec {

namespace {

int class_index(const std::string& name) {
  for (int i = 0; i < kNumPos; ++i)
    if (pos_name(i) == name) return i;
  throw Error("unknown class label '" + name + "'");
}

std::vector<int> sorted_universe(
    const std::unordered_map<std::string, std::vector<int>>& entries) {
  std::vector<int> universe;
  for (const auto& [word, labels] : entries)
    for (int l : labels)
      if (std::find(universe.begin(), universe.end(), l) == universe.end())
        universe.push_back(l);
  std::sort(universe.begin(), universe.end());
  return universe;
}

}  // namespace

PosOracle load_oracle_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open oracle file " + path);
  PosOracle oracle;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("expected word<TAB>labels on line " +
                  std::to_string(line_no) + " in " + path);
    const std::string word = line.substr(0, tab);
    std::vector<int> labels;
    std::string cur;
    for (size_t i = tab + 1; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (!cur.empty()) labels.push_back(class_index(cur));
        cur.clear();
      } else {
        cur.push_back(line[i]);
      }
    }
    if (labels.empty())
      throw Error("no labels for word '" + word + "' on line " +
                  std::to_string(line_no) + " in " + path);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    oracle.entries[word] = std::move(labels);
  }
  if (oracle.entries.empty()) throw Error("empty oracle file " + path);
  oracle.label_universe = sorted_universe(oracle.entries);
  return oracle;
}

int predict_label(const SyntacticRepr& s) {
  if (s.variant != Variant::Interpretable)
    throw Error("predict_label requires the interpretable variant");
  const double hi = s.coords.maxCoeff();
  for (int i = 0; i < kNumPos; ++i)
    if (s.coords(i) == hi) return i;
  return 0;
}

int ConfusionMatrix::trace() const {
  int t = 0;
  const int k = static_cast<int>(
      std::min(counts.rows(), counts.cols()));
  for (int i = 0; i < k; ++i) t += counts(i, i);
  return t;
}

double ConfusionMatrix::accuracy() const {
  const int n = total();
  return n == 0 ? 0.0 : static_cast<double>(trace()) / n;
}

double ConfusionMatrix::precision(int c) const {
  const int col = counts.col(c).sum();
  return col == 0 ? 0.0 : static_cast<double>(counts(c, c)) / col;
}

double ConfusionMatrix::recall(int c) const {
  const int row = counts.row(c).sum();
  return row == 0 ? 0.0 : static_cast<double>(counts(c, c)) / row;
}

double ConfusionMatrix::f1(int c) const {
  const double p = precision(c);
  const double r = recall(c);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

ConfusionMatrix word_classification(const SyntacticTable& reps,
                                    const PosOracle& oracle,
                                    ClassificationMode mode) {
  const auto& universe = oracle.label_universe;
  ConfusionMatrix cm;
  for (int l : universe) cm.row_names.push_back(pos_name(l));
  cm.col_names = cm.row_names;
  cm.col_names.push_back("other");
  cm.counts = Eigen::MatrixXi::Zero(static_cast<int>(universe.size()),
                                    static_cast<int>(universe.size()) + 1);
  auto universe_pos = [&universe](int label) {
    auto it = std::find(universe.begin(), universe.end(), label);
    return it == universe.end() ? -1 : static_cast<int>(it - universe.begin());
  };

  int evaluated = 0;
  for (int i = 0; i < reps.rows(); ++i) {
    auto it = oracle.entries.find(reps.words[i]);
    if (it == oracle.entries.end()) continue;
    const std::vector<int>& gold = it->second;
    if (mode == ClassificationMode::Partial && gold.size() != 1) continue;
    const int pred = predict_label(*reps.lookup(reps.words[i]));
    const int pred_pos = universe_pos(pred);
    const int other_col = static_cast<int>(universe.size());
    const bool correct =
        std::find(gold.begin(), gold.end(), pred) != gold.end();
    // gold row: the matched label when correct, else the first gold label
    // in canonical order
    const int gold_row = universe_pos(correct ? pred : gold.front());
    cm.counts(gold_row, pred_pos >= 0 ? pred_pos : other_col) += 1;
    ++evaluated;
  }
  if (evaluated == 0)
    throw Error("word_classification: no words shared by table and oracle");
  return cm;
}

std::unordered_map<std::string, int> load_tag_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tag map " + path);
  std::unordered_map<std::string, int> map;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("expected tag<TAB>class on line " + std::to_string(line_no) +
                  " in " + path);
    map[line.substr(0, tab)] = class_index(line.substr(tab + 1));
  }
  if (map.empty()) throw Error("empty tag map " + path);
  return map;
}

std::vector<std::pair<std::string, std::string>> load_tagged_tsv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tagged corpus " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("expected word<TAB>tag on line " + std::to_string(line_no) +
                  " in " + path);
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

PosOracle conflate_tags(
    const std::vector<std::pair<std::string, std::string>>& tagged,
    const std::unordered_map<std::string, int>& mapping) {
  PosOracle oracle;
  for (const auto& [word, tag] : tagged) {
    auto it = mapping.find(tag);
    if (it == mapping.end())
      throw Error("unmapped tag '" + tag + "' for word '" + word + "'");
    auto& labels = oracle.entries[word];
    if (std::find(labels.begin(), labels.end(), it->second) == labels.end())
      labels.push_back(it->second);
  }
  for (auto& [word, labels] : oracle.entries)
    std::sort(labels.begin(), labels.end());
  oracle.label_universe = sorted_universe(oracle.entries);
  return oracle;
}

std::array<std::vector<std::pair<std::string, double>>, kNumPos>
top_k_per_dimension(const SyntacticTable& reps, int k) {
  if (reps.rows() == 0) throw Error("top_k_per_dimension: empty table");
  if (k > reps.rows()) k = reps.rows();  // truncate, noted by caller
  std::array<std::vector<std::pair<std::string, double>>, kNumPos> out;
  if (k <= 0) return out;
  for (int dim = 0; dim < kNumPos; ++dim) {
    std::vector<int> order(reps.rows());
    for (int i = 0; i < reps.rows(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return reps.coords(a, dim) > reps.coords(b, dim);
    });
    for (int i = 0; i < k; ++i)
      out[dim].emplace_back(reps.words[order[i]],
                            reps.coords(order[i], dim));
  }
  return out;
}

double centroid_separation_ratio(const Eigen::MatrixXd& points,
                                 const std::vector<int>& labels) {
  if (points.rows() != static_cast<Eigen::Index>(labels.size()))
    throw Error("centroid_separation_ratio: size mismatch");
  std::vector<int> classes;
  for (int l : labels)
    if (std::find(classes.begin(), classes.end(), l) == classes.end())
      classes.push_back(l);
  if (classes.size() < 2)
    throw Error("centroid_separation_ratio: need at least 2 classes");
  std::sort(classes.begin(), classes.end());

  std::vector<Eigen::VectorXd> centroids;
  double intra = 0.0;
  int intra_count = 0;
  for (int c : classes) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(points.cols());
    int n = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != c) continue;
      centroid += points.row(static_cast<Eigen::Index>(i)).transpose();
      ++n;
    }
    centroid /= static_cast<double>(n);
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != c) continue;
      intra += (points.row(static_cast<Eigen::Index>(i)).transpose() -
                centroid).norm();
      ++intra_count;
    }
    centroids.push_back(std::move(centroid));
  }
  intra /= static_cast<double>(intra_count);

  double inter = 0.0;
  int inter_count = 0;
  for (size_t i = 0; i < centroids.size(); ++i)
    for (size_t j = i + 1; j < centroids.size(); ++j) {
      inter += (centroids[i] - centroids[j]).norm();
      ++inter_count;
    }
  inter /= static_cast<double>(inter_count);
  if (intra == 0.0) return std::numeric_limits<double>::infinity();
  return inter / intra;
}

namespace {

const char* kClassColors[kNumPos] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                     "#d62728", "#9467bd", "#8c564b",
                                     "#e377c2", "#7f7f7f"};

}  // namespace

void export_space_2d(const VectorTable& vecs,
                     const std::vector<std::pair<std::string, int>>& sample,
                     const std::string& csv_path,
                     const std::string& svg_path) {
  if (sample.size() < 2) throw Error("export_space_2d: sample too small");
  std::vector<std::string> words;
  std::vector<int> labels;
  std::vector<int> rows;
  for (const auto& [word, label] : sample) {
    auto r = vecs.row_of(word);
    if (!r) continue;
    words.push_back(word);
    labels.push_back(label);
    rows.push_back(*r);
  }
  if (words.size() < 2)
    throw Error("export_space_2d: fewer than 2 sampled words in vocabulary");
  Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), vecs.dim());
  for (size_t i = 0; i < rows.size(); ++i)
    X.row(static_cast<Eigen::Index>(i)) = vecs.data.row(rows[i]);
  Eigen::MatrixXd P = pca_2d(X);

  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot write " + csv_path);
  csv << "word,x,y,label\n";
  char num[64];
  for (size_t i = 0; i < words.size(); ++i) {
    csv << words[i];
    std::snprintf(num, sizeof(num), ",%.17g,%.17g,", P(i, 0), P(i, 1));
    csv << num << pos_name(labels[i]) << "\n";
  }

  const double x_min = P.col(0).minCoeff(), x_max = P.col(0).maxCoeff();
  const double y_min = P.col(1).minCoeff(), y_max = P.col(1).maxCoeff();
  const double w = 640, h = 640, pad = 40;
  auto sx = [&](double x) {
    return x_max == x_min ? w / 2
                          : pad + (x - x_min) / (x_max - x_min) * (w - 2 * pad);
  };
  auto sy = [&](double y) {
    return y_max == y_min ? h / 2
                          : h - pad - (y - y_min) / (y_max - y_min) * (h - 2 * pad);
  };
  std::ofstream svg(svg_path);
  if (!svg) throw Error("cannot write " + svg_path);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t i = 0; i < words.size(); ++i) {
    std::snprintf(num, sizeof(num), "%.2f", sx(P(i, 0)));
    svg << "<circle cx=\"" << num;
    std::snprintf(num, sizeof(num), "%.2f", sy(P(i, 1)));
    svg << "\" cy=\"" << num << "\" r=\"4\" fill=\""
        << kClassColors[labels[i] % kNumPos] << "\"><title>" << words[i]
        << " (" << pos_name(labels[i]) << ")</title></circle>\n";
  }
  // legend
  for (int c = 0; c < kNumPos; ++c) {
    svg << "<circle cx=\"" << (pad / 2) << "\" cy=\"" << (pad / 2 + 16 * c)
        << "\" r=\"5\" fill=\"" << kClassColors[c] << "\"/>"
        << "<text x=\"" << (pad / 2 + 10) << "\" y=\"" << (pad / 2 + 16 * c + 4)
        << "\" font-size=\"11\">" << pos_name(c) << "</text>\n";
  }
  svg << "</svg>\n";
  if (!svg) throw Error("write failed: " + svg_path);
}

}  // namespace hiervec
