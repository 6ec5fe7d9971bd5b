#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scgroup/certificate.hpp"
#include "scgroup/word.hpp"

namespace scg {

// t^-1 u t = v over a free base. `alphabet` holds the base generators and the stable letter(s).
struct HNNSpec {
  Alphabet alphabet;
  Letter t = 0;  // positive letter
  Word u, v;

  // Empty when valid; otherwise the first violated precondition.
  std::string validate() const;
};

// g_0 t^{e_1} g_1 ... t^{e_n} g_n. `stable` holds the signed stable letters.
struct TDecomposition {
  std::vector<Word> segments;
  std::vector<Letter> stable;
  Word conjugator;  // cyclic variants only: output = conjugator^-1 * input * conjugator
  std::vector<RewriteStep> log;

  std::size_t theta() const { return stable.size(); }
  Word word() const;
};

// l with w = u^l in the free group, if any. w need not be reduced.
std::optional<long> cyclic_subgroup_power(const Word& w, const Word& u);

// Pinch removal over a tower of stable letters sharing one free base. Pinches are
// t^-1 u^l t -> v^l and t v^l t^-1 -> u^l; base segments stay freely reduced.
TDecomposition britton_reduce(const Word& w, const std::vector<HNNSpec>& tower, bool record = false);
inline TDecomposition britton_reduce(const Word& w, const HNNSpec& spec, bool record = false) {
  return britton_reduce(w, std::vector<HNNSpec>{spec}, record);
}

TDecomposition cyclically_t_reduce(const Word& w, const std::vector<HNNSpec>& tower, bool record = false);
inline TDecomposition cyclically_t_reduce(const Word& w, const HNNSpec& spec, bool record = false) {
  return cyclically_t_reduce(w, std::vector<HNNSpec>{spec}, record);
}

// Word problem in the tower by Britton's lemma.
bool hnn_is_trivial(const Word& w, const std::vector<HNNSpec>& tower);

// Checks a Pinch step against the tower.
bool valid_pinch(const RewriteStep& s, const std::vector<HNNSpec>& tower);

enum class Tri { Yes, No, Unknown };
std::string to_string(Tri t);

struct ConjugacyAnswer {
  Tri verdict = Tri::Unknown;
  Word witness;  // witness^-1 x witness = y
  std::string reason;
};

struct HNNBudget {
  long exponent = -1;  // -1: max(|x|,|y|) + 8
};

ConjugacyAnswer hnn_conjugate(const Word& x, const Word& y, const HNNSpec& spec, HNNBudget budget = {});

// T with T^-1 a T == b in the free group, if a and b are conjugate.
std::optional<Word> free_conjugator(const Word& a, const Word& b);

}  // namespace scg
