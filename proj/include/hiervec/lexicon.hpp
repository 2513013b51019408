#pragma once

#include <array>
#include <string>
#include <vector>

#include "hiervec/embedding.hpp"

namespace hiervec {

inline constexpr int kNumPos = 8;

// Canonical class order; this fixes the coordinate index of every
// syntactic representation (index 0 is always noun).
enum class Pos {
  Noun = 0,
  Verb,
  Adjective,
  Adverb,
  Pronoun,
  Conjunction,
  Preposition,
  Interjection
};

const std::array<std::string, kNumPos>& pos_names();
const std::string& pos_name(int i);

// Eight word lists, one per class, in canonical order. Duplicate entries
// are permitted and meaningful (they weight the class average and are the
// mechanism behind oversized word lists).
struct PosLexicon {
  std::array<std::vector<std::string>, kNumPos> classes;
};

// Reads noun.txt .. interjection.txt from dir, one token per line.
PosLexicon load_pos_lexicon(const std::string& dir);

struct IntersectStats {
  std::array<int, kNumPos> dropped{};
};

// Filters every class to tokens present in the embedding vocabulary.
PosLexicon intersect(const PosLexicon& lex, const EmbeddingMatrix& m,
                     IntersectStats* stats = nullptr);

// Every class resized to exactly n entries: first min(n, size) words in
// list order, then cyclic repetition.
PosLexicon sized_word_list(const PosLexicon& lex, int n);

}  // namespace hiervec
