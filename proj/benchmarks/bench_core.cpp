#include <benchmark/benchmark.h>

#include <random>

#include "scgroup/aho_corasick.hpp"
#include "scgroup/chain.hpp"
#include "scgroup/free_group.hpp"
#include "scgroup/glang.hpp"
#include "scgroup/harness.hpp"
#include "scgroup/reduction.hpp"
#include "scgroup/smallcancel.hpp"

using namespace scg;

namespace {

RelatorFamilySpec family_spec() {
  RelatorFamilySpec s;
  s.alphabet = Alphabet({"a", "b", "z", "z2"});
  s.Z = {s.alphabet.parse("z"), s.alphabet.parse("z2")};
  s.U = s.alphabet.parse("a");
  s.V = s.alphabet.parse("b");
  s.m11 = 4;
  s.k = 2;
  return s;
}

SCParams family_params() {
  SCParams p;
  p.mu = Rational(1, 500);
  p.rho = 18;
  return p;
}

// Conjugated relators separated by random letters.
Word planted(const RelatorSystem& rs, std::size_t n, std::mt19937_64& rng) {
  Word w;
  while (w.size() < n) {
    const Word& r = rs.base[rng() % rs.base.size()];
    const Word u = random_reduced_word(rs.alphabet.size(), 1 + rng() % 6, rng), ui = inverse(u);
    w = free_reduce(concat({&w, &u, &r, &ui}));
  }
  return w;
}

void BM_FreeReduce(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> g(0, 3);
  Word w;
  for (std::int64_t i = 0; i < st.range(0); ++i) w.push_back(gen_letter(g(rng), rng() & 1));
  for (auto _ : st) benchmark::DoNotOptimize(free_reduce(w));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_FreeReduce)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_AhoCorasickScan(benchmark::State& st) {
  std::mt19937_64 rng(2);
  AhoCorasick ac;
  for (int i = 0; i < 200; ++i) ac.add(random_reduced_word(3, 6 + rng() % 20, rng), i);
  ac.build();
  const Word text = random_reduced_word(3, static_cast<std::size_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(ac.find_best(text.data(), st.range(0), st.range(0), st.range(0)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_AhoCorasickScan)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_FindPiecesEps0(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const Alphabet ab({"a", "b"});
  std::vector<Word> ws;
  for (std::int64_t total = 0; total < st.range(0);) {
    Word w = cyclic_reduce(random_reduced_word(2, 20 + rng() % 40, rng));
    total += static_cast<std::int64_t>(w.size());
    ws.push_back(std::move(w));
  }
  const auto rs = RelatorSystem::from_words(ab, ws, {});
  for (auto _ : st) benchmark::DoNotOptimize(find_pieces(rs, 0, PieceKind::Epsilon));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_FindPiecesEps0)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_FamilyWordProblem(benchmark::State& st) {
  const auto fam = generate_relator_family(family_spec(), family_params());
  QuotientSolver solver(fam.system, ReductionParams::for_word_problem(fam.system.params));
  std::mt19937_64 rng(4);
  const Word w = planted(fam.system, static_cast<std::size_t>(st.range(0)), rng);
  solver.patterns_for(static_cast<std::int64_t>(w.size()));
  for (auto _ : st) benchmark::DoNotOptimize(solver.solve(w));
  st.SetComplexityN(static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_FamilyWordProblem)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

void BM_GLLimitWordProblem(benchmark::State& st) {
  static GLChain gl = [] {
    LanguageSpec s;
    s.alphabet = {"0", "1"};
    s.words = {"0", "01", "110", "1", "0110", "10"};
    return build_gl_chain(s);
  }();
  std::mt19937_64 rng(5);
  const Word w = random_reduced_word(gl.chain->base_alphabet().size(), static_cast<std::size_t>(st.range(0)), rng);
  limit_word_problem(*gl.chain, w);
  for (auto _ : st) benchmark::DoNotOptimize(limit_word_problem(*gl.chain, w));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_GLLimitWordProblem)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

}  // namespace
BENCHMARK_MAIN();
