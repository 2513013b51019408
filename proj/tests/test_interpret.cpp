#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hiervec/error.hpp"
#include "hiervec/interpret.hpp"
#include "test_util.hpp"

using namespace hiervec;

namespace {

SyntacticRepr interp(std::initializer_list<double> vals) {
  SyntacticRepr s;
  s.variant = Variant::Interpretable;
  int i = 0;
  for (double x : vals) s.coords(i++) = x;
  for (; i < kNumPos; ++i) s.coords(i) = 0.5;
  return s;
}

// one word per class, coordinates peaking at its own class
SyntacticTable labeled_table(const std::vector<int>& gold) {
  SyntacticTable t;
  t.variant = Variant::Interpretable;
  t.coords.resize(static_cast<Eigen::Index>(gold.size()), kNumPos);
  for (size_t i = 0; i < gold.size(); ++i) {
    t.words.push_back("w" + std::to_string(i));
    t.coords.row(static_cast<Eigen::Index>(i)).setConstant(0.5);
    t.coords(static_cast<Eigen::Index>(i), gold[i]) = 1.0;
  }
  t.rebuild_index();
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("predict_label takes the peak coordinate") {
  CHECK(predict_label(interp({0.5, 1.0, 0.6})) == 1);
  CHECK(predict_label(interp({1.0, 0.9})) == 0);
  // ties resolve to the lowest canonical index
  SyntacticRepr tie = interp({0.5});
  tie.coords.setConstant(1.0);
  CHECK(predict_label(tie) == 0);

  SyntacticRepr abs = tie;
  abs.variant = Variant::Absolute;
  CHECK_THROWS_AS(predict_label(abs), Error);
}

TEST_CASE("oracle tsv parses single and multi labels") {
  testutil::TempDir dir("oracle");
  testutil::write_file(dir.file("o.tsv"),
                       "run\tverb,noun\ncat\tnoun\nquickly\tadverb\n");
  PosOracle o = load_oracle_tsv(dir.file("o.tsv"));
  CHECK(o.entries.at("run") == std::vector<int>{0, 1});  // sorted ascending
  CHECK(o.entries.at("cat") == std::vector<int>{0});
  CHECK(o.entries.at("quickly") == std::vector<int>{3});
  CHECK(o.label_universe == std::vector<int>{0, 1, 3});
  CHECK_THROWS_AS(load_oracle_tsv(dir.file("missing.tsv")), Error);
}

TEST_CASE("partial classification uses only single-label words") {
  std::vector<int> gold = {0, 1, 2, 1};
  SyntacticTable t = labeled_table(gold);
  PosOracle o;
  o.entries = {{"w0", {0}}, {"w1", {1}}, {"w2", {2}}, {"w3", {1, 2}}};
  o.label_universe = {0, 1, 2};
  ConfusionMatrix cm = word_classification(t, o, ClassificationMode::Partial);
  CHECK(cm.total() == 3);  // w3 is multi-label, excluded
  CHECK(cm.trace() == 3);
  CHECK(cm.accuracy() == doctest::Approx(1.0));
  CHECK(cm.precision(0) == doctest::Approx(1.0));
  CHECK(cm.recall(1) == doctest::Approx(1.0));
  CHECK(cm.f1(2) == doctest::Approx(1.0));
}

TEST_CASE("complete classification accepts any gold label") {
  SyntacticTable t = labeled_table({2, 2});
  PosOracle o;
  o.entries = {{"w0", {1, 2}},   // predicted 2 is in the gold set -> correct
               {"w1", {0, 1}}};  // predicted 2 is wrong, row = first gold (0)
  o.label_universe = {0, 1, 2};
  ConfusionMatrix cm = word_classification(t, o, ClassificationMode::Complete);
  CHECK(cm.total() == 2);
  CHECK(cm.trace() == 1);
  CHECK(cm.accuracy() == doctest::Approx(0.5));
}

TEST_CASE("predictions outside the universe land in the other column") {
  SyntacticTable t = labeled_table({7});  // predicts interjection
  PosOracle o;
  o.entries = {{"w0", {0}}};
  o.label_universe = {0, 1};
  ConfusionMatrix cm = word_classification(t, o, ClassificationMode::Partial);
  CHECK(cm.col_names.back() == "other");
  CHECK(cm.counts(0, static_cast<int>(cm.col_names.size()) - 1) == 1);
  CHECK(cm.trace() == 0);
}

TEST_CASE("empty evaluation set is an error") {
  SyntacticTable t = labeled_table({0});
  PosOracle o;
  o.entries = {{"unrelated", {0}}};
  o.label_universe = {0};
  CHECK_THROWS_AS(word_classification(t, o, ClassificationMode::Partial),
                  Error);
}

TEST_CASE("confusion totals are consistent") {
  uint64_t state = 4;
  std::vector<int> gold;
  for (int i = 0; i < 40; ++i)
    gold.push_back(static_cast<int>(testutil::rng_next(&state) % kNumPos));
  SyntacticTable t = labeled_table(gold);
  PosOracle o;
  for (size_t i = 0; i < gold.size(); ++i) {
    // half the words get a deliberately wrong single gold label
    const int g = (i % 2) ? gold[i] : (gold[i] + 1) % kNumPos;
    o.entries["w" + std::to_string(i)] = {g};
  }
  for (int c = 0; c < kNumPos; ++c) o.label_universe.push_back(c);
  ConfusionMatrix cm = word_classification(t, o, ClassificationMode::Partial);
  CHECK(cm.total() == 40);
  CHECK(cm.accuracy() == doctest::Approx(cm.trace() / 40.0));
  CHECK(cm.trace() == 20);
}

TEST_CASE("tag conflation maps fine tags and rejects unknown ones") {
  testutil::TempDir dir("tags");
  testutil::write_file(dir.file("map.tsv"), "NN\tnoun\nVB\tverb\nJJ\tadjective\n");
  auto mapping = load_tag_map(dir.file("map.tsv"));
  CHECK(mapping.at("NN") == 0);
  CHECK(mapping.at("JJ") == 2);

  testutil::write_file(dir.file("corpus.tsv"), "dog\tNN\nrun\tVB\nrun\tNN\n");
  auto tagged = load_tagged_tsv(dir.file("corpus.tsv"));
  REQUIRE(tagged.size() == 3);
  PosOracle o = conflate_tags(tagged, mapping);
  CHECK(o.entries.at("dog") == std::vector<int>{0});
  CHECK(o.entries.at("run") == std::vector<int>{0, 1});  // both tags observed
  CHECK(o.label_universe == std::vector<int>{0, 1});

  std::vector<std::pair<std::string, std::string>> bad = {{"x", "ZZ"}};
  CHECK_THROWS_WITH_AS(conflate_tags(bad, mapping), doctest::Contains("ZZ"),
                       Error);
}

TEST_CASE("top-k words per dimension") {
  SyntacticTable t;
  t.variant = Variant::Absolute;
  t.words = {"low", "mid", "high"};
  t.coords = Eigen::MatrixXd::Zero(3, kNumPos);
  t.coords(0, 0) = 1.0;
  t.coords(1, 0) = 2.0;
  t.coords(2, 0) = 3.0;
  t.coords(1, 5) = 9.0;
  t.rebuild_index();

  auto top = top_k_per_dimension(t, 2);
  REQUIRE(top[0].size() == 2);
  CHECK(top[0][0].first == "high");
  CHECK(top[0][0].second == doctest::Approx(3.0));
  CHECK(top[0][1].first == "mid");
  CHECK(top[5][0].first == "mid");

  auto one = top_k_per_dimension(t, 1);
  CHECK(one[0].size() == 1);
  auto none = top_k_per_dimension(t, 0);
  CHECK(none[0].empty());
  auto big = top_k_per_dimension(t, 100);  // truncates to vocab size
  CHECK(big[0].size() == 3);
}

TEST_CASE("top-k ties keep token order") {
  SyntacticTable t;
  t.variant = Variant::Absolute;
  t.words = {"b_first", "a_second"};
  t.coords = Eigen::MatrixXd::Ones(2, kNumPos);
  t.rebuild_index();
  auto top = top_k_per_dimension(t, 2);
  CHECK(top[0][0].first == "b_first");
  CHECK(top[0][1].first == "a_second");
}

TEST_CASE("centroid separation grows when classes tighten") {
  uint64_t state = 6;
  const int per = 20;
  Eigen::MatrixXd loose(2 * per, 2), tight(2 * per, 2);
  std::vector<int> labels;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < per; ++i) {
      Eigen::RowVector2d center(c * 10.0, 0.0);
      Eigen::RowVector2d noise(testutil::rng_gauss(&state),
                               testutil::rng_gauss(&state));
      loose.row(c * per + i) = center + 3.0 * noise;
      tight.row(c * per + i) = center + 0.3 * noise;
      labels.push_back(c);
    }
  }
  const double r_loose = centroid_separation_ratio(loose, labels);
  const double r_tight = centroid_separation_ratio(tight, labels);
  CHECK(r_tight > r_loose);
  CHECK(r_loose > 0.0);
}

TEST_CASE("2d export is deterministic and well formed") {
  auto world = testutil::make_world(10, 3, 0, 25);
  VectorTable vecs = to_table(world.embedding);
  std::vector<std::pair<std::string, int>> sample;
  for (int c = 0; c < kNumPos; ++c)
    for (const auto& w : world.lexicon.classes[c]) sample.emplace_back(w, c);

  testutil::TempDir dir("viz");
  export_space_2d(vecs, sample, dir.file("a.csv"), dir.file("a.svg"));
  export_space_2d(vecs, sample, dir.file("b.csv"), dir.file("b.svg"));
  const std::string csv = slurp(dir.file("a.csv"));
  CHECK(csv == slurp(dir.file("b.csv")));
  CHECK(slurp(dir.file("a.svg")) == slurp(dir.file("b.svg")));
  CHECK(csv.find("word,x,y,label") != std::string::npos);
  CHECK(csv.find(world.lexicon.classes[0][0]) != std::string::npos);
  const std::string svg = slurp(dir.file("a.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("interjection") != std::string::npos);  // legend entry
}
