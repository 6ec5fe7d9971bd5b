#pragma once

#include <random>

#include "scgroup/free_group.hpp"
#include "scgroup/smallcancel.hpp"

namespace scg::testing {

// The two-relator reference family over a, b with tails z, z2.
inline RelatorFamilySpec reference_family(int k = 2) {
  RelatorFamilySpec s;
  s.alphabet = Alphabet({"a", "b", "z", "z2"});
  s.Z = {s.alphabet.parse("z")};
  if (k == 2) s.Z.push_back(s.alphabet.parse("z2"));
  s.U = s.alphabet.parse("a");
  s.V = s.alphabet.parse("b");
  s.m11 = 4;
  s.k = k;
  return s;
}

inline SCParams family_params() {
  SCParams p;
  p.mu = Rational(1, 500);
  p.rho = 18;
  return p;
}

inline Word random_word(std::size_t gens, std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> g(0, static_cast<int>(gens) - 1);
  std::bernoulli_distribution inv(0.5);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(gen_letter(g(rng), inv(rng)));
  return w;
}

inline Word random_reduced(std::size_t gens, std::size_t len, std::mt19937_64& rng) {
  Word w;
  while (w.size() < len) {
    Word x = random_word(gens, 1, rng);
    if (!w.empty() && w.back() == -x[0]) continue;
    w.push_back(x[0]);
  }
  return w;
}

}  // namespace scg::testing
