#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pf/error.hpp"

namespace pf {

// Itinerary symbols. PlusMinus marks a point on the critical locus and
// compares strictly between Minus and Plus at its own coordinate.
enum class Symbol : std::uint8_t { Minus = 0, PlusMinus = 1, Plus = 2 };

using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

char symbol_char(Symbol s);
Symbol symbol_from_char(char c);

std::string format_word(WordView w);
Word parse_word(const std::string& text);

// Three-valued comparison result. depth is the number of leading coordinates
// certified equal when kind == EqualUpToDepth.
struct Ordering3 {
  enum class Kind { Less, Greater, EqualUpToDepth };
  Kind kind = Kind::EqualUpToDepth;
  int depth = 0;

  static Ordering3 less() { return {Kind::Less, 0}; }
  static Ordering3 greater() { return {Kind::Greater, 0}; }
  static Ordering3 equal_up_to(int d) { return {Kind::EqualUpToDepth, d}; }
  bool is_less() const { return kind == Kind::Less; }
  bool is_greater() const { return kind == Kind::Greater; }
  bool is_equal() const { return kind == Kind::EqualUpToDepth; }
  friend bool operator==(const Ordering3&, const Ordering3&) = default;
};

// Parity-lexicographical comparison of the first depth coordinates. At the
// first differing coordinate the natural order Minus < PlusMinus < Plus is
// used when the count of Plus symbols in the common prefix is even, and is
// reversed when it is odd. Exhausting depth or either word yields
// EqualUpToDepth with the certified coordinate count. When both words carry
// PlusMinus at the same coordinate the comparison also stops there: the Plus
// count beyond a shared locus symbol is not defined, so deeper coordinates
// cannot be ordered.
Ordering3 plex_compare(WordView u, WordView v, int depth);

// A finite window of a bi-infinite itinerary. left stores coordinates
// -|left|..-1 with left.front() the leftmost stored symbol; right stores
// coordinates 0..|right|-1. When left_tail_all_plus is set every coordinate
// before the stored left part reads Plus; a nonempty stored left part must
// then start with Minus (leading stored Plus runs fold into the tail, see
// normalize()).
struct Window {
  Word left;
  bool left_tail_all_plus = false;
  Word right;

  int known_depth() const { return static_cast<int>(right.size()); }
  int left_extent() const { return static_cast<int>(left.size()); }
  bool has(int coord) const;
  Symbol at(int coord) const;
  void normalize();
  friend bool operator==(const Window&, const Window&) = default;
};

// Textual form: optional "..." prefix (all-Plus left tail), then symbol
// characters with a single '.' separating coordinate -1 from coordinate 0,
// e.g. "...-+.+--". The dot is required even when one side is empty.
std::string format_window(const Window& w);
Window parse_window(const std::string& text);

// Generalized parity-lexicographical order on windows whose left tails are
// all Plus. Pick n large enough that both stored left parts lie within
// coordinates -n+1..; compare the two sequences read from coordinate -n+1
// onward by plex, and reverse the outcome when n is even. The result does not
// depend on the choice of valid n. EqualUpToDepth reports certified depth in
// right-window coordinates (coordinates 0..depth-1 plus all stored left
// coordinates agree).
Ordering3 gplex_compare(const Window& p, const Window& q);

// The definitional case split at one chosen n (n must expose both stored
// left parts). Used to check independence from n.
Ordering3 gplex_compare_at(const Window& p, const Window& q, int n);

// sigma^k: coordinate c of the result reads coordinate c+k of the input.
// Stored data is re-indexed, nothing is invented: for k > 0 the known right
// depth shrinks by k.
Window shift(const Window& w, int k);

}  // namespace pf
