#include "gramflow/config_space.hpp"

#include <algorithm>
#include <string>

#include "gramflow/text.hpp"

namespace gramflow {

int tree_distance(const Word& a, const Word& b) {
  std::size_t lcp = 0;
  while (lcp < a.size() && lcp < b.size() && a[lcp] == b[lcp]) ++lcp;
  return static_cast<int>(std::max(a.size(), b.size()) - lcp);
}

int hamming_distance(const Word& a, const Word& b) {
  if (a.size() != b.size())
    throw Error("hamming distance needs equal lengths (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                ")");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++d;
  return d;
}

std::size_t BasisEnumeration::index(const Word& w) const {
  auto it = index_of.find(w);
  if (it == index_of.end())
    throw Error("word '" + word_to_string(w) + "' is outside the basis");
  return it->second;
}

BasisEnumeration enumerate_basis(std::vector<Symbol> alphabet, int max_len,
                                 std::size_t dim_cap) {
  if (alphabet.empty()) throw Error("basis alphabet is empty");
  if (max_len < 0) throw Error("basis max_len must be >= 0");

  std::size_t dim = 1, level = 1;
  for (int n = 1; n <= max_len; ++n) {
    level *= alphabet.size();
    dim += level;
    if (dim > dim_cap)
      throw Error("basis dimension exceeds cap " + std::to_string(dim_cap) +
                  "; use a smaller max length");
  }

  BasisEnumeration b;
  b.alphabet = std::move(alphabet);
  b.max_len = max_len;
  b.words.reserve(dim);
  b.words.push_back({});  // the empty word is index 0
  std::size_t level_begin = 0;
  for (int n = 1; n <= max_len; ++n) {
    std::size_t level_end = b.words.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const Symbol& s : b.alphabet) {
        Word w = b.words[i];
        w.push_back(s);
        b.words.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  for (std::size_t i = 0; i < b.words.size(); ++i) b.index_of[b.words[i]] = i;
  return b;
}

}  // namespace gramflow
