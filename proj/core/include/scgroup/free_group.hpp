#pragma once

#include <optional>
#include <vector>

#include "scgroup/word.hpp"

namespace scg {

Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

// w = c · core · c^-1 with core cyclically reduced.
struct CyclicCore {
  Word core;
  Word conjugator;
};
CyclicCore cyclic_core(const Word& w);
Word cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

// For a free base the ShortLex normal form is the freely reduced word.
Word shortlex_normal_form_free(const Word& w, const Alphabet& alpha);

// Closure under cyclic shifts and inverses, duplicates removed, ShortLex-sorted.
std::vector<Word> symmetrize(const std::vector<Word>& rs, const Alphabet& alpha);

// ShortLex-least rotation of w or w^-1.
Word canonical_relator(const Word& w, const Alphabet& alpha);

// Offset k with rotate(a, k) == b, if any. Linear time.
std::optional<std::size_t> cyclic_shift_offset(const Word& a, const Word& b);
inline bool is_cyclic_shift(const Word& a, const Word& b) { return cyclic_shift_offset(a, b).has_value(); }

// Start of the first occurrence of pattern in text (KMP), or npos.
std::size_t find_subword(const Word& text, const Word& pattern, std::size_t from = 0);

struct FreeRootReport {
  Word root;
  long exponent = 1;
};
// Primitive root of the cyclically reduced core.
FreeRootReport free_root(const Word& w);

// Root element of w in the free group: c r c^-1 where w = c r^k c^-1.
Word free_root_element(const Word& w);

bool in_same_elementary_free(const Word& u, const Word& v);

// Conjugacy in the free group: cyclic cores are cyclic shifts of each other.
bool free_conjugate(const Word& u, const Word& v);

}  // namespace scg
