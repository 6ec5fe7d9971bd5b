#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "scgroup/chain.hpp"
#include "scgroup/hnn.hpp"
#include "scgroup/smallcancel.hpp"

namespace scg {

// Uniform over freely reduced words of exactly `len` letters on `gens` generators.
Word random_reduced_word(std::size_t gens, std::size_t len, std::mt19937_64& rng);

struct NormalClosureBudget {
  std::size_t samples = 0;
  int max_factors = 1;    // conjugates per product, drawn from [1, max_factors]
  int max_conjugator = 0;
  bool inverses = true;   // allow r^-1 factors
  std::uint64_t seed = 1;
};

// Products of u r^{+-1} u^-1 over rs.base, freely reduced; trivial in the quotient by construction.
std::vector<Word> oracle_normal_closure_sample(const RelatorSystem& rs, const NormalClosureBudget& budget);

struct OracleBudget {
  std::size_t max_word_length = 24;
  std::size_t max_frontier = 200000;
};

// Breadth-first search over relator insertions (deletions are insertions of inverses that
// cancel) with intermediate words capped in length. Yes: reached 1. No: the capped space was
// exhausted without reaching 1. Unknown: the frontier cap stopped the search.
Tri oracle_exhaustive_wp(const RelatorSystem& rs, const Word& w, const OracleBudget& budget = {});

// Exact word problem when every relator eliminates its own generator: R ~ g Q^-1 with g
// occurring once in R and in no other relator, so the group is free on the rest.
class TietzeOracle {
 public:
  TietzeOracle(std::size_t gens, const std::vector<Word>& relators);
  bool trivial(const Word& w) const;
  Word image(const Word& w) const;  // freely reduced image in the free group on the survivors

 private:
  std::vector<Word> subst_;  // per generator: image of the positive letter
};

// Visits every freely reduced word of length 0..max_len in ShortLex order of letter codes.
void for_each_reduced_word(std::size_t gens, std::size_t max_len, const std::function<void(const Word&)>& visit);

struct BenchRecord {
  std::size_t size = 0;
  std::uint64_t steps = 0;
  bool trivial = false;
  bool planted = false;
  int level = 0;
};

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t samples_per_size = 4;
  std::uint64_t seed = 1;
  bool planted = true;  // every other sample embeds conjugated relators
};

struct BenchReport {
  std::vector<BenchRecord> records;
  double slope = 0, slope_lo = 0, slope_hi = 0, intercept = 0;
  std::uint64_t seed = 0;
};

// Throws unless there are >= 5 distinct sizes spanning >= 3 doublings.
BenchReport bench_wp(GroupChain& chain, const BenchConfig& cfg);

struct SlopeFit {
  double slope = 0, intercept = 0, lo = 0, hi = 0;
};
// Least squares on (log2 x, log2 y) with a 95% Student-t interval for the slope.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace scg
