#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "scgroup/aho_corasick.hpp"
#include "scgroup/certificate.hpp"
#include "scgroup/cyclic_word.hpp"
#include "scgroup/hnn.hpp"
#include "scgroup/rational.hpp"
#include "scgroup/smallcancel.hpp"
#include "scgroup/suffix_automaton.hpp"

namespace scg {

struct ReductionParams {
  SCParams sc;
  Rational eta;
  int delta = 0;

  Rational eta_prime() const { return SCParams::eta_prime(eta); }
  std::int64_t local_constant() const { return 8 * delta + 1; }
  // Empty when 0 < eta < 1 and 2*eta - 3/2 > 3*lambda*(1 - eta).
  std::string validate() const;

  static ReductionParams for_word_problem(const SCParams& sc) { return {sc, sc.eta_wp(), 0}; }
  static ReductionParams for_conjugacy(const SCParams& sc) { return {sc, sc.eta_conj_reduction(), 0}; }
};

// Widths of U^1..U^s for a relator of length n. w = max(1, floor((1-eta) n)),
// s = min(ceil(1/(1-eta)), floor(n/w)), the last block absorbs the remainder.
struct BlockPartition {
  std::vector<std::int64_t> widths;
  bool paper_bounds_ok = true;  // s range and the two length windows, boundary admitted
  std::int64_t blocks() const { return static_cast<std::int64_t>(widths.size()); }
};
BlockPartition block_partition(std::int64_t n, const Rational& eta);

// Û^j read cyclically from the end of U^j, and the pair U^{j-1} U^j (U^0 = U^s). j is 1-based.
Word deleted_block_word(const Word& r, const BlockPartition& p, std::int64_t j);
Word block_pair_word(const Word& r, const BlockPartition& p, std::int64_t j);

// One search pattern: the core Û[k1 : |Û|-k2] and its shorter equal in the quotient
// pre^-1 (U^{j-1}U^j)^-1 suf^-1 with pre = Û[0:k1], suf = last k2 letters of Û.
struct DictEntry {
  int relator = 0;  // index into PatternSets::system.relators
  int block = 0;    // 1-based j
  int k1 = 0, k2 = 0;
  Word pattern;
  Word replacement;
};

// A base relator (or its inverse) matched through an automaton over its cyclic subwords,
// for systems whose dictionary or closure would be too large.
struct IndexedRelator {
  int base = 0;
  bool inverted = false;
  Word word;
  BlockPartition partition;
  std::vector<std::int64_t> lengths;  // admitted core lengths, ascending
  std::shared_ptr<const SuffixAutomaton> reversed;  // over the reverse of word word[0 : |word|-1]
};

struct PatternSets {
  std::int64_t n = 0;
  Rational bound;  // admitted relator length
  RelatorSystem system;
  std::int64_t L_n = 0, l_n = 0, Ltilde = 0;
  std::vector<BlockPartition> partitions;  // per system.relators (closed systems only)
  std::vector<DictEntry> entries;
  AhoCorasick automaton;
  int trim = 0;           // 3 * eps
  BigInt e0_letters = 0;  // letters in the full E0 (all T1, T2), for the budget check
  bool use_index = false;  // dictionary skipped; matches go through `indexed`
  std::vector<IndexedRelator> indexed;
  bool partitions_ok = true;
};

struct PatternBudget {
  BigInt max_e0_letters = BigInt(1) << 34;
  std::size_t max_dictionary_letters = 60'000'000;
  bool allow_index = true;
};

// _nR is {R : |R| <= (lambda(n + 2 eps) + c) / (1 - 23 mu)}.
Rational truncation_bound(const SCParams& sc, std::int64_t n);
PatternSets build_pattern_sets(const RelatorSystem& rs, std::int64_t n, const ReductionParams& rp,
                               const PatternBudget& budget = {});
// Same, with an explicit admitted length instead of the n-derived bound.
PatternSets build_pattern_sets_bounded(const RelatorSystem& rs, const Rational& bound, const ReductionParams& rp,
                                       const PatternBudget& budget = {});

// Every E0 word T1^-1 Û T2 (free reduction), for small systems and tests.
std::vector<Word> enumerate_e0_full(const PatternSets& ps);

struct EtaMatch {
  std::int64_t start = 0;
  std::int64_t length = 0;
  int entry = -1;  // dictionary index (pipeline) or -1 (direct, indexed)
  int relator = -1, block = 0, k1 = 0, k2 = 0;
  int indexed = -1;         // into PatternSets::indexed
  std::int64_t offset = 0;  // rotation of the indexed word the core was cut from
};

// Leftmost-longest dictionary hit in a linear (or, with cyclic, circular) word.
std::optional<EtaMatch> find_eta_subword(const Word& w, const PatternSets& ps, bool cyclic = false);

// Direct scan without the automaton: same partitions, trims up to eps0 on each side.
std::optional<EtaMatch> detect_eta_arc_direct(const Word& w, const RelatorSystem& rs, int eps0, const Rational& eta,
                                              bool cyclic = false);

// Free base, or a tower of cyclic HNN extensions whose pinches are part of smoothing.
struct BaseGroup {
  std::vector<HNNSpec> tower;
  bool free() const { return tower.empty(); }
};

// Cascading cancellation at the given points; with every point listed this is cyclic reduction.
CyclicWord smoothing(const CyclicWord& s, std::vector<std::int64_t> breakpoints, const BaseGroup& base = {});

struct ReductionOptions {
  bool record = false;
};

struct ReductionReport {
  Word input;
  Word output;
  Certificate certificate;
  bool recorded = false;
  std::vector<double> ratios;
  double lambda0 = 0;
  std::size_t replacements = 0;
  std::size_t guard_violations = 0;
  std::size_t windows = 0;
  std::uint64_t steps = 0;
};

ReductionReport cyclic_reduce_lceh(const Word& w, const PatternSets& ps, const BaseGroup& base = {},
                                   const ReductionOptions& opt = {});
inline ReductionReport cyclic_reduce_lceh(const CyclicWord& s, const PatternSets& ps, const BaseGroup& base = {},
                                          const ReductionOptions& opt = {}) {
  return cyclic_reduce_lceh(s.linear(), ps, base, opt);
}

// Replay rules for certificates produced against `rs` (and pinches of `base`).
ReplayRules replay_rules(const RelatorSystem& rs, const BaseGroup& base = {});

struct WPAnswer {
  bool trivial = false;
  Word witness;  // irreducible cyclic word when nontrivial
  ReductionReport report;
};

// Caches pattern sets by admitted relator length.
class QuotientSolver {
 public:
  QuotientSolver(RelatorSystem rs, ReductionParams rp, BaseGroup base = {}, PatternBudget budget = {});

  WPAnswer solve(const Word& w, bool certify = false);
  ReductionReport reduce(const Word& w, std::int64_t n, bool certify = false);
  const PatternSets& patterns_for(std::int64_t n);
  const RelatorSystem& system() const { return rs_; }
  const BaseGroup& base() const { return base_; }
  const ReductionParams& params() const { return rp_; }

 private:
  RelatorSystem rs_;
  ReductionParams rp_;
  BaseGroup base_;
  PatternBudget budget_;
  std::vector<std::int64_t> lengths_;  // sorted distinct relator lengths
  std::unordered_map<std::int64_t, std::int64_t> key_of_n_;  // n -> longest admitted length
  std::map<std::int64_t, std::unique_ptr<PatternSets>> cache_;
};

WPAnswer word_problem_quotient(const Word& w, const RelatorSystem& rs, const ReductionParams& rp,
                               bool certify = true, const BaseGroup& base = {});

}  // namespace scg
