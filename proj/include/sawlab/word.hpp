#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sawlab {

// One letter of a group word: generator `index`, or its inverse when
// `sign` is -1.
struct GeneratorSymbol {
  int index = 0;
  int sign = +1;

  GeneratorSymbol inverse() const { return {index, -sign}; }

  // Canonical enumeration order: a < a^-1 < b < b^-1 < ...
  int rank() const { return 2 * index + (sign < 0 ? 1 : 0); }
  static GeneratorSymbol from_rank(int r) { return {r / 2, (r % 2) ? -1 : +1}; }

  friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
};

using Word = std::vector<GeneratorSymbol>;

Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
bool is_freely_reduced(const Word& w);

// Signed exponent sum of generator `index` in `w`.
long long signed_exponent(const Word& w, int index);

// Orders first by length, then by symbol rank sequence.
bool word_less(const Word& a, const Word& b);

// Run-length text form in the spec grammar: "a b a^-1 b^-1", "b^6", "" for
// the empty word.
std::string render_word(const Word& w, std::span<const std::string> names);

// Inverse of render_word; accepts any word of the grammar
//   word := (NAME ["^" ["-"] INT])+  (or empty/blank text for the identity).
Word parse_word(std::string_view text, std::span<const std::string> names);

namespace detail {
template <typename Push, typename Pop>
void walk_reduced_words(int p, int cutoff, Word& w, Push& push, Pop& pop) {
  if (static_cast<int>(w.size()) == cutoff) return;
  for (int r = 0; r < 2 * p; ++r) {
    GeneratorSymbol s = GeneratorSymbol::from_rank(r);
    if (!w.empty() && w.back() == s.inverse()) continue;
    w.push_back(s);
    push(const_cast<const Word&>(w));
    walk_reduced_words(p, cutoff, w, push, pop);
    w.pop_back();
    pop();
  }
}
}  // namespace detail

// Depth-first enumeration of all nonempty freely reduced words of length
// <= cutoff over p generators, in lexicographic symbol-rank order.
// `push(w)` fires when a word is extended by its last symbol, `pop()` when
// that symbol is retracted; callers keep their own parallel stacks.
template <typename Push, typename Pop>
void for_each_reduced_word(int p, int cutoff, Push&& push, Pop&& pop) {
  Word w;
  w.reserve(static_cast<std::size_t>(cutoff > 0 ? cutoff : 0));
  detail::walk_reduced_words(p, cutoff, w, push, pop);
}

}  // namespace sawlab
