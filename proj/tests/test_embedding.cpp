#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "hiervec/embedding.hpp"
#include "hiervec/error.hpp"
#include "test_util.hpp"

using namespace hiervec;

namespace {

std::string w2v_bytes(const std::vector<std::pair<std::string,
                      std::vector<float>>>& records, int dim) {
  std::string out = std::to_string(records.size()) + " " +
                    std::to_string(dim) + "\n";
  for (const auto& [token, vals] : records) {
    out += token + " ";
    out.append(reinterpret_cast<const char*>(vals.data()),
               vals.size() * sizeof(float));
  }
  return out;
}

}  // namespace

TEST_CASE("word2vec binary round trip of a 2x3 file") {
  testutil::TempDir dir("w2v");
  const std::string path = dir.file("vec.bin");
  testutil::write_file(path, w2v_bytes({{"a", {1, 2, 3}}, {"b", {4, 5, 6}}}, 3));
  EmbeddingMatrix m = load_word2vec_binary(path);
  CHECK(m.rows() == 2);
  CHECK(m.dim == 3);
  auto b = m.lookup("b");
  REQUIRE(b.has_value());
  CHECK((*b)(0) == 4);
  CHECK((*b)(1) == 5);
  CHECK((*b)(2) == 6);
  // order preserved
  CHECK(m.vocab[0] == "a");
  CHECK(m.vocab[1] == "b");
}

TEST_CASE("word2vec 1x300 record") {
  testutil::TempDir dir("w2v300");
  std::vector<float> vals(300);
  for (int i = 0; i < 300; ++i) vals[i] = static_cast<float>(i) * 0.5f;
  const std::string path = dir.file("vec.bin");
  testutil::write_file(path, w2v_bytes({{"word", vals}}, 300));
  EmbeddingMatrix m = load_word2vec_binary(path);
  CHECK(m.rows() == 1);
  CHECK(m.dim == 300);
  CHECK((*m.lookup("word"))(299) == doctest::Approx(149.5));
}

TEST_CASE("word2vec truncated file names the offset") {
  testutil::TempDir dir("w2vtrunc");
  std::string bytes = w2v_bytes({{"a", {1, 2, 3}}, {"b", {4, 5, 6}}}, 3);
  bytes.resize(bytes.size() - 5);  // cut mid-record
  const std::string path = dir.file("vec.bin");
  testutil::write_file(path, bytes);
  CHECK_THROWS_WITH_AS(load_word2vec_binary(path),
                       doctest::Contains("byte offset"), Error);
}

TEST_CASE("word2vec header mismatch and duplicates") {
  testutil::TempDir dir("w2vdup");
  const std::string bad = dir.file("bad.bin");
  testutil::write_file(bad, "x y\n");
  CHECK_THROWS_AS(load_word2vec_binary(bad), Error);

  const std::string dup = dir.file("dup.bin");
  testutil::write_file(dup,
      w2v_bytes({{"a", {1, 2}}, {"a", {9, 9}}, {"b", {3, 4}}}, 2));
  EmbeddingMatrix m = load_word2vec_binary(dup);  // first occurrence wins
  CHECK(m.rows() == 2);
  CHECK((*m.lookup("a"))(0) == 1);
}

TEST_CASE("glove text basics") {
  testutil::TempDir dir("glove");
  const std::string path = dir.file("vec.txt");
  testutil::write_file(path, "a 1.0 2.0\nb 3.0 4.0\n");
  EmbeddingMatrix m = load_glove_text(path);
  CHECK(m.rows() == 2);
  CHECK(m.dim == 2);
  CHECK((*m.lookup("b"))(1) == doctest::Approx(4.0));
}

TEST_CASE("glove dimension mismatch reports the line") {
  testutil::TempDir dir("glovebad");
  const std::string path = dir.file("vec.txt");
  testutil::write_file(path, "a 1.0 2.0\nc 1.0\n");
  CHECK_THROWS_WITH_AS(load_glove_text(path), doctest::Contains("line 2"),
                       Error);
  const std::string empty = dir.file("empty.txt");
  testutil::write_file(empty, "");
  CHECK_THROWS_AS(load_glove_text(empty), Error);
}

TEST_CASE("glove numeric token is accepted") {
  testutil::TempDir dir("glovenum");
  const std::string path = dir.file("vec.txt");
  testutil::write_file(path, "42 0.1 0.2\n");
  EmbeddingMatrix m = load_glove_text(path);
  CHECK(m.vocab[0] == "42");
}

TEST_CASE("lookup is exact match, absence is a value") {
  testutil::TempDir dir("lookup");
  const std::string path = dir.file("vec.txt");
  testutil::write_file(path, "a 1.0 2.0\n");
  EmbeddingMatrix m = load_glove_text(path);
  CHECK(m.lookup("a").has_value());
  CHECK(!m.lookup("A").has_value());  // no case folding
  EmbeddingMatrix empty;
  CHECK(!empty.lookup("a").has_value());
}

TEST_CASE("round trip through both formats is bit identical") {
  auto world = testutil::make_world(7, 3, 10, 42);
  const EmbeddingMatrix& m = world.embedding;
  testutil::TempDir dir("roundtrip");

  save_word2vec_binary(m, dir.file("w.bin"));
  EmbeddingMatrix m2 = load_word2vec_binary(dir.file("w.bin"));
  REQUIRE(m2.vocab == m.vocab);
  CHECK(std::memcmp(m.data.data(), m2.data.data(),
                    sizeof(float) * m.rows() * m.dim) == 0);

  save_glove_text(m, dir.file("g.txt"));
  EmbeddingMatrix m3 = load_glove_text(dir.file("g.txt"));
  REQUIRE(m3.vocab == m.vocab);
  CHECK(std::memcmp(m.data.data(), m3.data.data(),
                    sizeof(float) * m.rows() * m.dim) == 0);
}

TEST_CASE("vocabulary restriction filter") {
  testutil::TempDir dir("filter");
  const std::string path = dir.file("vec.txt");
  testutil::write_file(path, "a 1.0 2.0\nb 3.0 4.0\nc 5.0 6.0\n");
  const std::string filter = dir.file("keep.txt");
  testutil::write_file(filter, "a\nc\n");
  auto keep = load_vocab_filter(filter);
  EmbeddingMatrix m = load_glove_text(path, &keep);
  CHECK(m.rows() == 2);
  CHECK(m.lookup("a").has_value());
  CHECK(!m.lookup("b").has_value());
}

TEST_CASE("non-finite entries are rejected") {
  testutil::TempDir dir("nan");
  const std::string path = dir.file("vec.txt");
  testutil::write_file(path, "a 1.0 nan\n");
  CHECK_THROWS_AS(load_glove_text(path), Error);
}
