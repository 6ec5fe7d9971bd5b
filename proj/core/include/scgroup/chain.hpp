#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "scgroup/hnn.hpp"
#include "scgroup/rational.hpp"
#include "scgroup/reduction.hpp"
#include "scgroup/smallcancel.hpp"

namespace scg {

// What the level generator emits for level i: H_i = G_{i-1} or one cyclic HNN step,
// then the quotient by `relators`.
struct LevelSpec {
  std::optional<HNNSpec> hnn;
  std::vector<Word> relators;
  SCParams params;
  std::int64_t delta = 0, delta_prime = 0;
  Rational rho_bar{1};
  std::uint64_t phi = 0;  // generator cost of this level
  std::string descriptor;
  std::vector<Violation> warnings;
};

// May add generators (stable letters) to the alphabet. nullopt ends the chain.
using LevelGenerator = std::function<std::optional<LevelSpec>(int i, Alphabet& alpha)>;

struct LevelData {
  int index = 0;
  LevelSpec spec;
  std::uint64_t Phi = 0;
  Rational xi_bar;
  Rational zeta;
  std::int64_t rho = 0;  // shortest relator of the level
  std::vector<Violation> validation;
};

bool operator==(const LevelData& a, const LevelData& b);

// xi_bar = ((1 - 23 mu) rho_bar - c) / lambda - 2 eps ; zeta = ((1 - 121 lambda mu) rho - 2c) / lambda - 4 eps
Rational xi(const SCParams& p, const Rational& rho_bar);
Rational zeta(const SCParams& p, const Rational& rho);

class GroupChain {
 public:
  GroupChain(Alphabet base, std::vector<Word> base_relators, SCParams base_params, LevelGenerator gen);

  const Alphabet& alphabet() const { return alpha_; }
  const Alphabet& base_alphabet() const { return base_alpha_; }
  const std::vector<Word>& base_relators() const { return base_relators_; }
  const SCParams& base_params() const { return base_params_; }

  // nullptr once the chain has ended before level i. Level 0 is the base.
  const LevelData* level(int i);
  LevelData regenerate(int i) const;
  int generated() const { return static_cast<int>(levels_.size()); }
  bool ended() const { return ended_; }

  std::uint64_t Phi(int i);  // UINT64_MAX past the end
  int index_I(std::int64_t n);

  // Relators of levels <= r, stable letters of levels <= h. G_i = (i, i), H_i = (i-1, i).
  QuotientSolver& solver(int relator_levels, int hnn_levels, bool conjugacy = false);
  std::vector<HNNSpec> tower(int hnn_levels);
  // Generators present once level i exists (base letters first, then stable letters in level order).
  std::size_t alphabet_size(int i);

 private:
  Alphabet base_alpha_;
  Alphabet alpha_;
  std::vector<Word> base_relators_;
  SCParams base_params_;
  LevelGenerator gen_;
  std::deque<LevelData> levels_;  // stable addresses for level()
  std::vector<std::size_t> alpha_sizes_;
  bool ended_ = false;
  std::map<std::tuple<int, int, bool>, std::unique_ptr<QuotientSolver>> solvers_;
};

struct LimitWPAnswer {
  bool trivial = false;
  int level = 0;
  WPAnswer detail;
};

LimitWPAnswer limit_word_problem(GroupChain& chain, const Word& w, bool certify = false);

using SupradiusFn = std::function<int(std::int64_t)>;
// max{i : xi_bar(i) <= n}, normalised to be non-decreasing.
SupradiusFn honest_supradius(GroupChain& chain);
LimitWPAnswer limit_word_problem_supradius(GroupChain& chain, const SupradiusFn& upsilon, const Word& w,
                                           bool certify = false);

struct GConjBudget {
  long tau = -1;                    // H_i conjugator radius; -1: 2(8 delta' + 1) + |x| + |y|
  std::size_t max_conjugators = 20000;
  long hnn_exponent = -1;
};

struct GConjAnswer {
  Tri verdict = Tri::No;
  Word witness;  // witness^-1 x witness = y in G_level
  int level = -1;
  std::string reason;
};

GConjAnswer g_conjugacy(GroupChain& chain, const Word& x, const Word& y, const GConjBudget& budget = {});

}  // namespace scg
