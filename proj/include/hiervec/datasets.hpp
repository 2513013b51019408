#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace hiervec {

struct TokenizerOptions {
  bool lowercase = true;
  bool strip_punct = true;
};

std::vector<std::string> tokenize(const std::string& text,
                                  const TokenizerOptions& opts = {});

struct LabeledDoc {
  int label = 0;
  std::vector<std::string> tokens;
};

struct LabeledTextDataset {
  std::vector<LabeledDoc> train, val, test;
  std::vector<std::string> class_names;
};

// Platform-independent Fisher-Yates, keyed by seed.
void deterministic_shuffle(std::vector<size_t>* idx, uint64_t seed);
std::vector<size_t> shuffled_indices(size_t n, uint64_t seed);

// Binary news classification from two newsgroup-style directories, one
// file per document. The header block (up to the first blank line) is
// stripped. Documents are shuffled with seed and split by fraction.
LabeledTextDataset load_newsgroups_pair(const std::string& dir_a,
                                        const std::string& dir_b,
                                        double train_frac, double val_frac,
                                        uint64_t seed,
                                        const TokenizerOptions& opts = {});

// "LABEL:fine question" lines; coarse labels. Validation carved out of the
// training file (val_frac), test file kept intact.
LabeledTextDataset load_trec(const std::string& train_path,
                             const std::string& test_path, double val_frac,
                             uint64_t seed, const TokenizerOptions& opts = {});

// label<TAB>text, three fixed files; rows whose label equals neutral_label
// are dropped.
LabeledTextDataset load_sst(const std::string& train_path,
                            const std::string& dev_path,
                            const std::string& test_path,
                            const std::string& neutral_label = "neutral",
                            const TokenizerOptions& opts = {});

// label<TAB>phrase single file, labels left|right, split by fraction.
LabeledTextDataset load_np_bracketing(const std::string& path,
                                      double train_frac, double val_frac,
                                      uint64_t seed,
                                      const TokenizerOptions& opts = {});

struct Triplet {
  std::string concept1, concept2, attribute;
  int label = 0;  // 1 = attribute discriminates concept1 from concept2
};

// concept1,concept2,attribute,label per line.
std::vector<Triplet> load_semeval_triplets(const std::string& path);

struct SimilarityDataset {
  std::vector<std::tuple<std::string, std::string, double>> pairs;
};

// word1,word2,score per line (comma, tab or space separated).
SimilarityDataset load_similarity(const std::string& path);

}  // namespace hiervec
