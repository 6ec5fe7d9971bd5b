// One line per acceptance criterion. Tolerances, sample sizes and seeds are fixed here.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "common.hpp"
#include "oracles.hpp"
#include "scgroup/chain.hpp"
#include "scgroup/free_group.hpp"
#include "scgroup/glang.hpp"
#include "scgroup/harness.hpp"
#include "scgroup/hnn.hpp"
#include "scgroup/io.hpp"
#include "scgroup/reduction.hpp"
#include "scgroup/smallcancel.hpp"

using namespace scg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  double time_limit_s;  // exceeding it fails the criterion
  std::function<Outcome()> run;
};

std::string data(const char* f) { return std::string(SCGROUP_DATA_DIR) + "/" + f; }

template <class... T>
std::string cat(const T&... xs) {
  std::ostringstream o;
  (o << ... << xs);
  return o.str();
}

// ---- C1: family output and eps = 0 pieces against the all-pairs oracle.

constexpr int kRandomSystems = 200;
constexpr std::size_t kMaxTotalLength = 500;

Outcome c1() {
  const auto spec = testing::reference_family(2);
  const auto fam = generate_relator_family(spec, testing::family_params());
  const Alphabet& A = spec.alphabet;
  const bool exact = fam.relators.size() == 2 && fam.relators[0] == A.parse("z a^4 b a^5 b a^6") &&
                     fam.relators[1] == A.parse("z2 a^8 b a^9 b a^10 b a^11 b a^12 b a^13 b a^14");
  const bool fam_pieces = find_pieces(fam.system, 0, PieceKind::Epsilon) == testing::naive_eps0(fam.system);

  std::mt19937_64 rng(101);
  int mismatches = 0;
  std::size_t letters = 0;
  for (int t = 0; t < kRandomSystems; ++t) {
    const std::size_t gens = 2 + rng() % 2;
    const std::size_t total = 4 + rng() % (kMaxTotalLength - 3);
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<Word> ws;
    std::size_t used = 0;
    for (int i = 0; i < k && used < total; ++i) {
      const std::size_t len = i + 1 == k ? total - used : 2 + rng() % (total - used);
      Word w = cyclic_reduce(testing::random_reduced(gens, len, rng));
      used += len;
      if (!w.empty()) ws.push_back(std::move(w));
    }
    std::vector<std::string> names;
    for (std::size_t g = 0; g < gens; ++g) names.push_back(std::string(1, static_cast<char>('a' + g)));
    const auto rs = RelatorSystem::from_words(Alphabet(names), ws, {});
    for (const Word& w : rs.base) letters += w.size();
    mismatches += find_pieces(rs, 0, PieceKind::Epsilon) != testing::naive_eps0(rs);
  }
  return {exact && fam_pieces && mismatches == 0,
          cat("R1,R2 exact=", exact, " family pieces=oracle:", fam_pieces, " random systems ", kRandomSystems,
              " (", letters, " base letters) mismatches=", mismatches)};
}

// ---- C2: verdicts on symmetrize({a b a^2 b a^3}).

Outcome c2() {
  const Alphabet AB({"a", "b"});
  const std::vector<Word> rel{AB.parse("a b a^2 b a^3")};
  SCParams p;
  p.rho = 8;
  p.mu = Rational(1, 2);
  const auto at_half = check_condition(RelatorSystem::from_words(AB, rel, p), Variant::C);
  p.mu = Rational(3, 5);
  const auto at_06 = check_condition(RelatorSystem::from_words(AB, rel, p), Variant::C);

  // Witnesses are compared as words, identifying a piece with its inverse.
  auto canon = [](const Word& w) { return std::min(w, inverse(w)); };
  std::set<Word> witnesses;
  for (const auto& v : at_half.violations) witnesses.insert(canon(v.witness));
  const std::set<Word> expected{canon(AB.parse("a b a a"))};
  const bool fail_half = !at_half.pass, wit = witnesses == expected, pass_06 = at_06.pass;
  std::string ws;
  for (const auto& w : witnesses) ws += (ws.empty() ? "" : ", ") + AB.format(w);
  std::string w06;
  for (const auto& v : at_06.violations) w06 += (w06.empty() ? "" : ", ") + AB.format(v.witness);
  return {fail_half && wit && pass_06, cat("mu=1/2 fails=", fail_half, " witnesses {", ws, "} expected {a b a a}; mu=3/5 passes=",
                                           pass_06, pass_06 ? "" : " (violations: " + w06 + ")")};
}

// ---- C3: exhaustive and sampled word problem against exact oracles.

constexpr std::size_t kExhaustiveLength = 12;
constexpr std::size_t kClosureSamples = 10000;
constexpr std::size_t kBfsSample = 200;

Outcome c3() {
  const auto fam = generate_relator_family(testing::reference_family(2), testing::family_params());
  const RelatorSystem& rs = fam.system;
  const ReductionParams rp = ReductionParams::for_word_problem(rs.params);
  if (std::string e = rp.validate(); !e.empty()) return {false, "parameters invalid: " + e};
  QuotientSolver solver(rs, rp);
  const ReplayRules rules = replay_rules(rs);
  const TietzeOracle tietze(rs.alphabet.size(), rs.base);

  std::uint64_t visited = 0, trues = 0, contradictions = 0, replay_ok = 0, bfs_no_on_true = 0;
  std::vector<Word> falses_sample;
  std::mt19937_64 pick(303);

  // Depth-first over reduced words on a, b, z, keeping the Tietze image as a reduced stack.
  std::vector<Word> image(7);
  for (int g = 0; g < 3; ++g)
    for (bool inv : {false, true}) image[static_cast<std::size_t>(gen_letter(g, inv) + 3)] = tietze.image(Word{gen_letter(g, inv)});
  Word w, stack;
  struct Undo {
    std::size_t pushed;
    Word popped;
  };
  std::vector<Undo> undo;
  std::function<void()> visit = [&]() {
    ++visited;
    const WPAnswer a = solver.solve(w);
    const bool exact = stack.empty();
    if (a.trivial != exact) ++contradictions;
    if (a.trivial) {
      ++trues;
      const WPAnswer c = solver.solve(w, true);
      const auto r = replay(c.report.certificate, rules);
      replay_ok += r.ok && r.output.empty();
      bfs_no_on_true += oracle_exhaustive_wp(rs, w) == Tri::No;
    } else if (pick() % 1000000 < 2000 && falses_sample.size() < kBfsSample) {
      falses_sample.push_back(w);
    }
    if (w.size() == kExhaustiveLength) return;
    for (int g = 0; g < 3; ++g)
      for (bool inv : {false, true}) {
        const Letter l = gen_letter(g, inv);
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
        Undo u{0, {}};
        for (Letter x : image[static_cast<std::size_t>(l + 3)]) {
          if (!stack.empty() && stack.back() == -x) {
            u.popped.push_back(stack.back());
            stack.pop_back();
          } else {
            stack.push_back(x);
            ++u.pushed;
          }
        }
        undo.push_back(std::move(u));
        visit();
        Undo& b = undo.back();
        stack.resize(stack.size() - b.pushed);
        for (auto it = b.popped.rbegin(); it != b.popped.rend(); ++it) stack.push_back(*it);
        undo.pop_back();
        w.pop_back();
      }
  };
  visit();

  // The breadth-first oracle on sampled "false" words must never answer yes.
  OracleBudget ob;
  ob.max_word_length = 18;
  ob.max_frontier = 20000;
  std::size_t bfs_yes_on_false = 0, bfs_decided = 0;
  for (const Word& x : falses_sample) {
    const Tri t = oracle_exhaustive_wp(rs, x, ob);
    bfs_yes_on_false += t == Tri::Yes;
    bfs_decided += t != Tri::Unknown;
  }

  NormalClosureBudget nb;
  nb.samples = kClosureSamples;
  nb.max_factors = 3;
  nb.max_conjugator = 4;
  nb.inverses = true;
  nb.seed = 7;
  std::size_t missed = 0, sample_trues = 0, sample_replays = 0;
  Word first_miss;
  for (const Word& x : oracle_normal_closure_sample(rs, nb)) {
    const WPAnswer a = solver.solve(x, true);
    if (!a.trivial) {
      if (missed++ == 0) first_miss = x;
      continue;
    }
    ++sample_trues;
    const auto r = replay(a.report.certificate, rules);
    sample_replays += r.ok && r.output.empty();
  }
  const std::uint64_t all_trues = trues + sample_trues, all_replays = replay_ok + sample_replays;
  const bool pass = visited > 0 && contradictions == 0 && bfs_no_on_true == 0 && bfs_yes_on_false == 0 && missed == 0 &&
                    all_replays == all_trues;
  return {pass, cat("exhaustive ", visited, " words: trues=", trues, " contradictions vs Tietze=", contradictions,
                    " bfs no-on-true=", bfs_no_on_true, " bfs yes-on-false=", bfs_yes_on_false, "/", falses_sample.size(),
                    " (decided ", bfs_decided, "); closure samples ", kClosureSamples, ": missed=", missed,
                    missed ? " first=" + rs.alphabet.format(first_miss) : "", "; replay ", all_replays, "/", all_trues)};
}

// ---- C4: engine invariants on planted inputs.

constexpr int kEngineInputs = 1000;

Word planted_word(const RelatorSystem& rs, std::mt19937_64& rng, std::size_t len) {
  Word w;
  while (w.size() < len) {
    if (rng() % 3 == 0) {
      const Word& r = rs.relators[rng() % rs.relators.size()];
      const std::size_t take = r.size() / 2 + rng() % (r.size() / 2 + 1);
      const Word s = subword_cyclic(r, rng() % r.size(), take);
      w.insert(w.end(), s.begin(), s.end());
    } else {
      const Word s = testing::random_word(rs.alphabet.size(), 1 + rng() % 4, rng);
      w.insert(w.end(), s.begin(), s.end());
    }
  }
  return free_reduce(w);
}

Outcome c4() {
  struct Config {
    const char* name;
    SCParams sc;
    bool conj;
  };
  SCParams base = testing::family_params();
  SCParams eps1 = base;
  eps1.eps = 1;
  // The conjugacy eta 1 - 122 lambda mu needs mu < 1/1220 for the engine's precondition.
  SCParams conj = base;
  conj.mu = Rational(1, 2000);
  const Config configs[] = {{"wp", base, false}, {"conj", conj, true}, {"wp-eps1", eps1, false}};
  std::string detail;
  bool pass = true;
  std::uint64_t seed = 404;
  for (const Config& cfg : configs) {
    const auto fam = generate_relator_family(testing::reference_family(2), cfg.sc);
    const ReductionParams rp = cfg.conj ? ReductionParams::for_conjugacy(cfg.sc) : ReductionParams::for_word_problem(cfg.sc);
    if (std::string e = rp.validate(); !e.empty()) return {false, cat(cfg.name, ": parameters invalid: ", e)};
    QuotientSolver solver(fam.system, rp);
    std::mt19937_64 rng(seed++);
    std::size_t arcs_left = 0, not_shorter = 0, verdicts = 0, replacements = 0;
    for (int i = 0; i < kEngineInputs; ++i) {
      const Word w = planted_word(fam.system, rng, 20 + rng() % 200);
      const PatternSets& ps = solver.patterns_for(static_cast<std::int64_t>(w.size()));
      const auto rep = cyclic_reduce_lceh(w, ps);
      replacements += rep.replacements;
      arcs_left += detect_eta_arc_direct(rep.output, ps.system, ps.trim, rp.eta, true).has_value();
      not_shorter += rep.guard_violations;
      for (double x : rep.ratios) not_shorter += !(x < 1.0);
      for (bool cyc : {false, true})
        verdicts += find_eta_subword(w, ps, cyc).has_value() != detect_eta_arc_direct(w, ps.system, ps.trim, rp.eta, cyc).has_value();
    }
    pass = pass && arcs_left == 0 && not_shorter == 0 && verdicts == 0;
    detail += cat(detail.empty() ? "" : "; ", cfg.name, " eta=", format_rational(rp.eta), ": arcs left=", arcs_left,
                  " non-shortening=", not_shorter, " verdict mismatches=", verdicts, " (", replacements, " replacements)");
  }
  return {pass, detail};
}

// ---- C5: G_L end to end on every omega of length <= 8.

constexpr std::size_t kOmegaLength = 8;

std::vector<Omega> all_binary(std::size_t max_len) {
  std::vector<Omega> out{{}};
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      Omega o(len);
      for (std::size_t i = 0; i < len; ++i) o[i] = static_cast<int>((bits >> (len - 1 - i)) & 1u);
      out.push_back(o);
    }
  return out;
}

std::string omega_text(const Omega& o) {
  std::string s;
  for (int x : o) s += static_cast<char>('0' + x);
  return s;
}

LanguageSpec finite_language(const std::vector<std::string>& words) {
  LanguageSpec s;
  s.alphabet = {"0", "1"};
  s.words = words;
  return s;
}

// `size` distinct words of length <= 8 drawn with a fixed seed.
std::vector<std::string> sample_language(std::size_t size, std::uint64_t seed) {
  std::vector<Omega> pool = all_binary(kOmegaLength);
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(omega_text(pool[i]));
  return out;
}

Outcome c5() {
  const std::vector<Omega> omegas = all_binary(kOmegaLength);
  std::string detail = cat(omegas.size(), " words");
  bool pass = omegas.size() == 511;
  for (std::size_t size : {1u, 10u, 50u}) {
    GLChain gl = build_gl_chain(finite_language(sample_language(size, 500 + size)));
    std::size_t mismatches = 0, audit = 0, exclusivity = 0, members = 0;
    for (const Omega& o : omegas) {
      const auto [u, v] = lambda_encode(o, 2);
      audit += u.size() + v.size() > 2 * o.size() + 2;
      const GLAnswer a = gl_conjugacy(gl, u, v);
      const bool in = gl.language->member(o);
      members += in;
      mismatches += a.conjugate != in;
      exclusivity += a.exclusivity_violated;
    }
    pass = pass && mismatches == 0 && audit == 0 && exclusivity == 0 && members == size;
    detail += cat("; |L|=", size, ": members seen=", members, " mismatches=", mismatches, " length audit failures=", audit,
                  " exclusivity=", exclusivity);
  }
  return {pass, detail};
}

// ---- C6: HNN layer.

constexpr int kBrittonWords = 1000;
constexpr int kConjPairs = 500;

Outcome c6() {
  HNNSpec S;
  S.alphabet = Alphabet({"a", "b", "t"});
  S.t = S.alphabet.parse("t")[0];
  S.u = S.alphabet.parse("a");
  S.v = S.alphabet.parse("b");
  auto w = [&](const char* x) { return S.alphabet.parse(x); };
  auto replays = [&](const Word& x, const Word& y, const Word& W) {
    const Word Wi = inverse(W), yi = inverse(y);
    return britton_reduce(concat({&Wi, &x, &W, &yi}), S).word().empty();
  };

  std::mt19937_64 rng(606);
  int tested = 0, judged_trivial = 0;
  while (tested < kBrittonWords) {
    // Segments between t^e and t^-e are kept outside the pinched subgroup.
    const int theta = 1 + static_cast<int>(rng() % 4);
    Word x;
    Letter prev = 0;
    for (int i = 0; i <= theta; ++i) {
      const Letter next = i < theta ? ((rng() & 1) ? S.t : -S.t) : 0;
      Word g;
      do g = free_reduce(testing::random_word(2, rng() % 5, rng));
      while (prev != 0 && next == -prev && cyclic_subgroup_power(g, prev == -S.t ? S.u : S.v).has_value());
      x.insert(x.end(), g.begin(), g.end());
      if (next != 0) x.push_back(next);
      prev = next;
    }
    x = free_reduce(x);
    if (britton_reduce(x, S).theta() == 0) continue;
    ++tested;
    judged_trivial += hnn_is_trivial(x, {S});
  }

  auto e1 = hnn_conjugate(w("a"), w("b"), S);
  auto e2 = hnn_conjugate(w("a^2"), w("b^2"), S);
  HNNBudget b8;
  b8.exponent = 8;
  auto e3 = hnn_conjugate(w("a"), w("b^2"), S, b8);
  const bool ex1 = e1.verdict == Tri::Yes && e1.witness == w("t") && replays(w("a"), w("b"), e1.witness);
  const bool ex2 = e2.verdict == Tri::Yes && e2.witness == w("t") && replays(w("a^2"), w("b^2"), e2.witness);
  const bool ex3 = e3.verdict == Tri::No;

  int asym = 0, irreflexive = 0, planted_missed = 0, bad_witness = 0, no_vs_free = 0, pairs = 0;
  while (pairs < kConjPairs) {
    const Word x = free_reduce(testing::random_word(3, 1 + rng() % 8, rng));
    if (x.empty()) continue;
    const bool planted = pairs % 2 == 0;
    const Word g = free_reduce(testing::random_word(3, rng() % 5, rng)), gi = inverse(g);
    const Word y = planted ? free_reduce(concat({&gi, &x, &g})) : free_reduce(testing::random_word(3, 1 + rng() % 8, rng));
    if (y.empty()) continue;
    ++pairs;
    const auto xx = hnn_conjugate(x, x, S);
    irreflexive += xx.verdict != Tri::Yes;
    const auto xy = hnn_conjugate(x, y, S), yx = hnn_conjugate(y, x, S);
    asym += xy.verdict != yx.verdict;
    planted_missed += planted && xy.verdict != Tri::Yes;
    for (const auto* r : {&xx, &xy, &yx}) {
      if (r->verdict != Tri::Yes) continue;
      const Word& p = r == &yx ? y : x;
      const Word& q = r == &xx ? x : (r == &xy ? y : x);
      bad_witness += !replays(p, q, r->witness);
    }
    const bool base_pair = britton_reduce(x, S).theta() == 0 && britton_reduce(y, S).theta() == 0;
    no_vs_free += base_pair && xy.verdict == Tri::No && free_conjugate(x, y);
  }
  const bool pass = tested == kBrittonWords && judged_trivial == 0 && ex1 && ex2 && ex3 && asym == 0 && irreflexive == 0 &&
                    planted_missed == 0 && bad_witness == 0 && no_vs_free == 0;
  return {pass, cat("Britton ", tested, " words judged trivial=", judged_trivial, "; examples ", ex1, ex2, ex3, "; ", pairs,
                    " pairs: asymmetric=", asym, " irreflexive=", irreflexive, " planted missed=", planted_missed,
                    " witnesses failing replay=", bad_witness, " no-vs-free=", no_vs_free)};
}

// ---- C7: chain bookkeeping.

constexpr std::int64_t kIndexRange = 10000;
constexpr int kLimitWords = 500;

Outcome c7() {
  SCParams p;
  p.lambda = 2;
  p.c = 3;
  p.eps = 1;
  p.mu = Rational(1, 100);
  const bool xi_ok = xi(p, 1000) == Rational(763, 2);
  p.mu = Rational(1, 1000);
  const bool zeta_ok = zeta(p, 1000) == 372;

  GLChain synthetic = io::load_chain(data("synthetic_chain.txt"));
  GLChain gl = build_gl_chain(finite_language({"0", "1", "01", "110", "0101"}));
  std::string detail = cat("xi=763/2:", xi_ok, " zeta=372:", zeta_ok);
  bool pass = xi_ok && zeta_ok;
  std::uint64_t seed = 707;
  for (auto* c : {&synthetic, &gl}) {
    GroupChain& g = *c->chain;
    std::size_t bracket = 0;
    for (std::int64_t n = 0; n <= kIndexRange; ++n) {
      const int i = g.index_I(n);
      bracket += !(g.Phi(i) <= static_cast<std::uint64_t>(n) && static_cast<std::uint64_t>(n) < g.Phi(i + 1));
    }
    const int top = g.index_I(kIndexRange);
    const std::size_t gens = g.alphabet_size(top);
    std::vector<Word> plant;
    for (int i = 1; i <= top; ++i)
      for (const Word& r : g.level(i)->spec.relators)
        if (r.size() <= 400) plant.push_back(r);
    for (const Word& r : g.base_relators()) plant.push_back(r);
    const auto ups = honest_supradius(g);
    std::mt19937_64 rng(seed++);
    std::size_t disagree = 0, trivial = 0;
    for (int k = 0; k < kLimitWords; ++k) {
      Word w = testing::random_reduced(gens, 1 + rng() % 80, rng);
      if (k % 3 == 0) {
        // Conjugated relator, or an unreduced product w w^-1 when the chain has none.
        const Word u = testing::random_reduced(gens, rng() % 4, rng), ui = inverse(u);
        const Word r = plant.empty() ? concat(w, inverse(w)) : plant[rng() % plant.size()];
        w = concat({&u, &r, &ui});
      }
      const auto a = limit_word_problem(g, w), b = limit_word_problem_supradius(g, ups, w);
      disagree += a.trivial != b.trivial;
      trivial += a.trivial;
    }
    pass = pass && bracket == 0 && disagree == 0;
    detail += cat("; chain levels<=", top, ": bracket failures=", bracket, " limit/supradius disagreements=", disagree,
                  " (", trivial, " trivial of ", kLimitWords, ")");
  }
  return {pass, detail};
}

// ---- C8: scaling on a single-relator-per-level G_L chain.

constexpr double kSlopeLimit = 1.35;

Outcome c8() {
  const std::vector<std::string> words{"0", "01", "110", "1", "0110", "10", "111", "0001", "101", "00"};
  BenchConfig cfg;
  for (std::size_t n = 1024; n <= 65536; n *= 2) cfg.sizes.push_back(n);
  cfg.samples_per_size = 4;
  cfg.seed = 1;
  GLChain a = build_gl_chain(finite_language(words));
  const BenchReport r1 = bench_wp(*a.chain, cfg);
  GLChain b = build_gl_chain(finite_language(words));
  const BenchReport r2 = bench_wp(*b.chain, cfg);
  bool same = r1.records.size() == r2.records.size();
  for (std::size_t i = 0; same && i < r1.records.size(); ++i)
    same = r1.records[i].steps == r2.records[i].steps && r1.records[i].trivial == r2.records[i].trivial;
  int top = 0;
  for (const auto& rec : r1.records) top = std::max(top, rec.level);
  return {r1.slope <= kSlopeLimit && same,
          cat("slope=", r1.slope, " CI [", r1.slope_lo, ", ", r1.slope_hi, "] limit ", kSlopeLimit, " deterministic=", same,
              " records=", r1.records.size(), " deepest level=", top)};
}

std::set<std::string> split_ids(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string x;
  while (std::getline(ss, x, ','))
    if (!x.empty()) out.insert(x);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria C1-C8"};
  std::string only, expect_fail;
  app.add_option("--only", only, "Comma list of criteria to run");
  app.add_option("--expect-fail", expect_fail, "Comma list of criteria known to fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{{"C1", 10, c1},  {"C2", 10, c2},  {"C3", 900, c3}, {"C4", 300, c4},
                                   {"C5", 300, c5}, {"C6", 60, c6}, {"C7", 300, c7}, {"C8", 900, c8}};
  const std::set<std::string> selected = split_ids(only), expected = split_ids(expect_fail);
  std::set<std::string> failed, ran;
  for (const Criterion& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    ran.insert(c.id);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      o.pass = false;
      o.detail += cat(" [over time limit ", c.time_limit_s, " s]");
    }
    if (!o.pass) failed.insert(c.id);
    std::printf("%s %s %s (%.2f s)\n", c.id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::set<std::string> expected_ran;
  for (const auto& id : expected)
    if (ran.count(id)) expected_ran.insert(id);
  if (failed != expected_ran) {
    std::printf("failing set differs from the expected set\n");
    return 1;
  }
  return 0;
}
