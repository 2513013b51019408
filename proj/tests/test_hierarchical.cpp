#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hiervec/error.hpp"
#include "hiervec/hierarchical.hpp"
#include "hiervec/linalg.hpp"
#include "test_util.hpp"

using namespace hiervec;

namespace {

SyntacticRepr repr(std::initializer_list<double> vals,
                   Variant v = Variant::Absolute) {
  SyntacticRepr s;
  s.variant = v;
  int i = 0;
  for (double x : vals) s.coords(i++) = x;
  for (; i < kNumPos; ++i) s.coords(i) = 0.0;
  return s;
}

SyntacticRepr random_repr(uint64_t* state) {
  SyntacticRepr s;
  for (int i = 0; i < kNumPos; ++i) s.coords(i) = testutil::rng_gauss(state);
  return s;
}

Eigen::VectorXd random_vec(int n, uint64_t* state) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = testutil::rng_gauss(state);
  return v;
}

}  // namespace

TEST_CASE("overcomplete places blocks in class order") {
  Eigen::VectorXd r(2);
  r << 5, 6;
  Eigen::VectorXd h = overcomplete(repr({1}), r);
  REQUIRE(h.size() == kNumPos * 2);
  CHECK(h(0) == 5);
  CHECK(h(1) == 6);
  CHECK(h.tail(kNumPos * 2 - 2).norm() == 0.0);

  Eigen::VectorXd h2 = overcomplete(repr({3, 4}), r);
  CHECK(h2(0) == 15);  // 3*5
  CHECK(h2(1) == 18);  // 3*6
  CHECK(h2(2) == 20);  // 4*5
  CHECK(h2(3) == 24);  // 4*6
}

TEST_CASE("overcomplete dimension is eight times the base") {
  uint64_t state = 5;
  Eigen::VectorXd r = random_vec(300, &state);
  CHECK(overcomplete(random_repr(&state), r).size() == 2400);
}

TEST_CASE("overcomplete cosine factorizes") {
  uint64_t state = 42;
  for (int trial = 0; trial < 100; ++trial) {
    SyntacticRepr s1 = random_repr(&state), s2 = random_repr(&state);
    Eigen::VectorXd r1 = random_vec(6, &state), r2 = random_vec(6, &state);
    const double lhs = cosine(overcomplete(s1, r1), overcomplete(s2, r2));
    const double rhs = cosine(Eigen::VectorXd(s1.coords),
                              Eigen::VectorXd(s2.coords)) *
                       cosine(r1, r2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("overcomplete is bilinear") {
  uint64_t state = 17;
  SyntacticRepr s = random_repr(&state), t = random_repr(&state);
  Eigen::VectorXd r = random_vec(5, &state), q = random_vec(5, &state);
  SyntacticRepr sum;
  sum.coords = s.coords + t.coords;
  CHECK((overcomplete(sum, r) - overcomplete(s, r) - overcomplete(t, r))
            .norm() < 1e-12);
  CHECK((overcomplete(s, r + q) - overcomplete(s, r) - overcomplete(s, q))
            .norm() < 1e-12);
}

TEST_CASE("weighted scales the base vector by the coordinate mean") {
  Eigen::VectorXd r(3);
  r << 1, 2, 3;
  SyntacticRepr ones;
  ones.coords.setOnes();
  CHECK((weighted(ones, r) - r).norm() == 0.0);

  SyntacticRepr two;
  two.coords.setConstant(2.0);
  CHECK(weighted(two, r)(2) == doctest::Approx(6.0));

  // mean of {8,0,...,0} is 1
  CHECK((weighted(repr({8}), r) - r).norm() < 1e-12);
}

TEST_CASE("weighted composite is colinear with the base") {
  uint64_t state = 33;
  for (int trial = 0; trial < 50; ++trial) {
    SyntacticRepr s = random_repr(&state);
    s.coords = s.coords.cwiseAbs();  // positive mean
    Eigen::VectorXd r = random_vec(7, &state);
    Eigen::VectorXd q = random_vec(7, &state);
    CHECK(cosine(weighted(s, r), q) == doctest::Approx(cosine(r, q)));
  }
}

TEST_CASE("compose_all pairs representations with embedding rows") {
  auto world = testutil::make_world(10, 2, 2, 3);
  TransitionMatrix C = build_transition_matrix(world.embedding, world.lexicon);
  for (Variant v :
       {Variant::Absolute, Variant::Interpretable, Variant::L2}) {
    SyntacticTable reps = project_all(world.embedding, C, v);
    for (HierKind k : {HierKind::Overcomplete, HierKind::Weighted}) {
      ComposeStats stats;
      VectorTable t = compose_all(reps, world.embedding, k, &stats);
      CHECK(t.rows() == world.embedding.rows());
      CHECK(stats.missing == 0);
      CHECK(t.dim() ==
            (k == HierKind::Overcomplete ? kNumPos * 10 : 10));
      // spot check the first word against the direct composition
      SyntacticRepr s;
      s.coords = reps.coords.row(0).transpose();
      s.variant = v;
      Eigen::VectorXd base = world.embedding.row_as_double(0);
      Eigen::VectorXd direct =
          k == HierKind::Overcomplete ? overcomplete(s, base)
                                      : weighted(s, base);
      CHECK((*t.lookup(reps.words[0]) - direct).norm() < 1e-12);
    }
  }
}

TEST_CASE("compose_all counts words without embedding rows") {
  auto world = testutil::make_world(6, 2, 0, 8);
  TransitionMatrix C = build_transition_matrix(world.embedding, world.lexicon);
  SyntacticTable reps = project_all(world.embedding, C, Variant::Absolute);
  reps.words.push_back("ghost");
  reps.coords.conservativeResize(reps.rows() + 1, Eigen::NoChange);
  reps.coords.row(reps.rows() - 1).setOnes();
  reps.rebuild_index();
  ComposeStats stats;
  VectorTable t = compose_all(reps, world.embedding, HierKind::Weighted, &stats);
  CHECK(t.rows() == world.embedding.rows());
  CHECK(stats.missing == 1);
  CHECK(!t.lookup("ghost").has_value());

  SyntacticTable empty;
  empty.words = {"ghost"};
  empty.coords = Eigen::MatrixXd::Ones(1, kNumPos);
  empty.rebuild_index();
  CHECK_THROWS_AS(
      compose_all(empty, world.embedding, HierKind::Weighted), Error);
}

TEST_CASE("kind names round trip") {
  CHECK(parse_kind("overcomplete") == HierKind::Overcomplete);
  CHECK(parse_kind(kind_name(HierKind::Weighted)) == HierKind::Weighted);
  CHECK_THROWS_AS(parse_kind("nope"), Error);
}

TEST_CASE("vector table round trips through text") {
  auto world = testutil::make_world(9, 2, 1, 14);
  TransitionMatrix C = build_transition_matrix(world.embedding, world.lexicon);
  SyntacticTable reps = project_all(world.embedding, C, Variant::L2);
  VectorTable t =
      compose_all(reps, world.embedding, HierKind::Overcomplete);
  testutil::TempDir dir("vectab");
  save_vector_table(t, dir.file("t.tsv"));
  VectorTable t2 = load_vector_table(dir.file("t.tsv"));
  REQUIRE(t2.words == t.words);
  CHECK((t2.data - t.data).norm() == 0.0);
  CHECK(t2.dim() == t.dim());
}

TEST_CASE("to_table mirrors the embedding") {
  auto world = testutil::make_world(5, 1, 2, 77);
  VectorTable t = to_table(world.embedding);
  CHECK(t.rows() == world.embedding.rows());
  CHECK(t.dim() == 5);
  for (int r = 0; r < t.rows(); ++r)
    CHECK((t.data.row(r).transpose() - world.embedding.row_as_double(r))
              .norm() == 0.0);
}
