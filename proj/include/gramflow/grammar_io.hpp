#pragma once

#include <string>
#include <string_view>

#include "gramflow/grammar.hpp"

namespace gramflow {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Grammar file format, line oriented, '#' starts a comment:
//
//   nonterminals: S0 S1
//   terminals: a b
//   axiom: S0
//   mode: strict
//   rule S0 -> a S1 b   @ p=0.5 u=0.5,0.0 rate=1.0
//   rule S1 -> eps
//
// Alphabets must be declared before the first rule. The token `eps`
// stands for the empty word and is reserved.
Grammar parse_grammar(std::string_view text);

Grammar load_grammar(const std::string& path);

// Deterministic serialisation in the same format; weights keep full
// precision so parse(serialize(g)) == g.
std::string serialize_grammar(const Grammar& g);

// Resolves a word over the symbols of `g`: "eps" is the empty word,
// whitespace-separated tokens are looked up by name, and a compact string
// is split per character when every character names a declared symbol.
Word parse_word(const Grammar& g, std::string_view text);

}  // namespace gramflow
