#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "gramflow/symbols.hpp"

namespace gramflow {

// Number of generations separating the deeper word from the common
// prefix: max(|a|,|b|) - |lcp(a,b)|.
int tree_distance(const Word& a, const Word& b);

// Sitewise mismatch count; defined only for equal lengths.
int hamming_distance(const Word& a, const Word& b);

inline constexpr std::size_t kDefaultDimCap = 16384;

// All words of length <= max_len over an ordered alphabet, enumerated in
// length-then-lexicographic order (lexicographic in alphabet declaration
// order). The enumeration for a smaller max_len is a prefix of the one
// for a larger max_len over the same alphabet.
struct BasisEnumeration {
  std::vector<Symbol> alphabet;
  int max_len = 0;
  std::vector<Word> words;
  std::map<Word, std::size_t> index_of;

  std::size_t dim() const { return words.size(); }
  const Word& word_at(std::size_t i) const { return words.at(i); }
  std::size_t index(const Word& w) const;
  bool contains(const Word& w) const { return index_of.count(w) != 0; }

  bool same_space(const BasisEnumeration& other) const {
    return alphabet == other.alphabet && max_len == other.max_len;
  }
};

BasisEnumeration enumerate_basis(std::vector<Symbol> alphabet, int max_len,
                                 std::size_t dim_cap = kDefaultDimCap);

}  // namespace gramflow
