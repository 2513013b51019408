#include "hiervec/lexicon.hpp"

#include <fstream>

#include "hiervec/error.hpp"

namespace hiervec {

const std::array<std::string, kNumPos>& pos_names() {
  static const std::array<std::string, kNumPos> names = {
      "noun",        "verb",        "adjective",   "adverb",
      "pronoun",     "conjunction", "preposition", "interjection"};
  return names;
}

const std::string& pos_name(int i) { return pos_names().at(static_cast<size_t>(i)); }

PosLexicon load_pos_lexicon(const std::string& dir) {
  PosLexicon lex;
  for (int c = 0; c < kNumPos; ++c) {
    const std::string path = dir + "/" + pos_name(c) + ".txt";
    std::ifstream in(path);
    if (!in) throw Error("missing class: " + pos_name(c) + " (" + path + ")");
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      lex.classes[c].push_back(line);
    }
    if (lex.classes[c].empty())
      throw Error("empty class file: " + pos_name(c) + " (" + path + ")");
  }
  return lex;
}

PosLexicon intersect(const PosLexicon& lex, const EmbeddingMatrix& m,
                     IntersectStats* stats) {
  PosLexicon out;
  for (int c = 0; c < kNumPos; ++c) {
    int dropped = 0;
    for (const auto& w : lex.classes[c]) {
      if (m.row_of(w))
        out.classes[c].push_back(w);
      else
        ++dropped;
    }
    if (stats) stats->dropped[c] = dropped;
    if (out.classes[c].empty())
      throw Error("class '" + pos_name(c) +
                  "' has no words in the embedding vocabulary");
  }
  return out;
}

PosLexicon sized_word_list(const PosLexicon& lex, int n) {
  if (n <= 0) throw Error("sized_word_list: n must be positive");
  PosLexicon out;
  for (int c = 0; c < kNumPos; ++c) {
    const auto& src = lex.classes[c];
    if (src.empty())
      throw Error("sized_word_list: class '" + pos_name(c) + "' is empty");
    auto& dst = out.classes[c];
    dst.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      dst.push_back(src[static_cast<size_t>(i) % src.size()]);
  }
  return out;
}

}  // namespace hiervec
