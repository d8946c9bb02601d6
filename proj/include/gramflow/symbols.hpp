#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gramflow {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SymbolKind : std::uint8_t { terminal, nonterminal };

// A named symbol of the working alphabet. Kind is fixed by which of the
// two disjoint alphabets declared it.
struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::terminal;

  auto operator<=>(const Symbol&) const = default;
};

inline Symbol terminal(std::string name) {
  return Symbol{std::move(name), SymbolKind::terminal};
}
inline Symbol nonterminal(std::string name) {
  return Symbol{std::move(name), SymbolKind::nonterminal};
}

// A finite sequence of symbols; the empty vector is the empty word.
using Word = std::vector<Symbol>;

inline bool is_terminal_word(const Word& w) {
  for (const Symbol& s : w)
    if (s.kind != SymbolKind::terminal) return false;
  return true;
}

// Single-character symbol names are concatenated, anything else is
// space-separated. The empty word renders as "eps".
std::string word_to_string(const Word& w);

}  // namespace gramflow
