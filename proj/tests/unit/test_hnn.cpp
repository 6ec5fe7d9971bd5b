#include <random>

#include "common.hpp"
#include "doctest.h"
#include "scgroup/free_group.hpp"
#include "scgroup/hnn.hpp"

using namespace scg;

namespace {

HNNSpec spec_ab() {
  HNNSpec s;
  s.alphabet = Alphabet({"a", "b", "t"});
  s.t = s.alphabet.parse("t")[0];
  s.u = s.alphabet.parse("a");
  s.v = s.alphabet.parse("b");
  return s;
}

const HNNSpec S = spec_ab();
Word w(const char* x) { return S.alphabet.parse(x); }

ReplayRules pinch_rules(const std::vector<HNNSpec>& tower) {
  ReplayRules r;
  r.pinch = [tower](const RewriteStep& s) { return valid_pinch(s, tower); };
  return r;
}

bool in_power_subgroup(const Word& g, const Word& u) { return cyclic_subgroup_power(g, u).has_value(); }

// Random word with every t^-1 g t segment outside <a> and every t g t^-1 outside <b>.
Word random_t_reduced(std::mt19937_64& rng, int theta) {
  Word out;
  Letter prev = 0;
  for (int i = 0; i <= theta; ++i) {
    Word g;
    const Letter next = i < theta ? ((rng() & 1) ? S.t : -S.t) : 0;
    for (int tries = 0;; ++tries) {
      g = free_reduce(testing::random_word(2, rng() % 5, rng));
      if (prev == 0 || next == 0 || next != -prev) break;
      if (prev == -S.t && !in_power_subgroup(g, S.u)) break;
      if (prev == S.t && !in_power_subgroup(g, S.v)) break;
    }
    out.insert(out.end(), g.begin(), g.end());
    if (next != 0) out.push_back(next);
    prev = next;
  }
  return free_reduce(out);
}

bool witness_replays(const Word& x, const Word& y, const Word& W) {
  const Word Wi = inverse(W), yi = inverse(y);
  return hnn_is_trivial(concat({&Wi, &x, &W, &yi}), {S});
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK(S.validate().empty());
  HNNSpec bad = S;
  bad.u.clear();
  CHECK_FALSE(bad.validate().empty());
  bad = S;
  bad.u = w("t");
  CHECK_FALSE(bad.validate().empty());
}

TEST_CASE("cyclic_subgroup_power") {
  CHECK(cyclic_subgroup_power(w("a"), w("a")) == 1);
  CHECK(cyclic_subgroup_power(w("a^-3"), w("a")) == -3);
  CHECK_FALSE(cyclic_subgroup_power(w("a b"), w("a")).has_value());
  CHECK(cyclic_subgroup_power(Word{}, w("a b")) == 0);
  CHECK(cyclic_subgroup_power(w("a b a b"), w("a b")) == 2);
}

TEST_CASE("britton_reduce examples") {
  auto d = britton_reduce(w("t^-1 a^2 t"), S);
  CHECK(d.word() == w("b^2"));
  CHECK(d.theta() == 0);

  d = britton_reduce(w("t^-1 b t"), S);
  CHECK(d.theta() == 2);
  REQUIRE(d.segments.size() == 3);
  CHECK(d.segments[0].empty());
  CHECK(d.segments[1] == w("b"));
  CHECK(d.segments[2].empty());
  CHECK(d.word() == w("t^-1 b t"));

  d = britton_reduce(w("t^-1 a t t^-1 a t"), S);
  CHECK(d.word() == w("b^2"));

  d = britton_reduce(w("t b^-3 t^-1"), S);
  CHECK(d.word() == w("a^-3"));
}

TEST_CASE("britton certificates replay to the reduced word") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Word x = testing::random_word(3, static_cast<std::size_t>(rng() % 16), rng);
    const auto d = britton_reduce(x, S, true);
    const auto r = replay({x, d.log}, pinch_rules({S}));
    CHECK(r.ok);
    CHECK(r.output == d.word());
  }
}

TEST_CASE("cyclically_t_reduce examples") {
  auto d = cyclically_t_reduce(w("t a t^-1"), S);
  // Cyclically t and t^-1 are adjacent, so this is a conjugate of a.
  CHECK(d.word() == w("a"));
  d = cyclically_t_reduce(w("t b t^-1"), S);
  CHECK(d.word() == w("a"));
  d = cyclically_t_reduce(w("a b"), S);
  CHECK(d.word() == w("a b"));
  d = cyclically_t_reduce(w("t^-1 a b t"), S);
  CHECK(d.word() == w("a b"));
  d = cyclically_t_reduce(w("t^-1 a b t a"), S);
  CHECK(d.theta() == 2);
  CHECK(is_cyclic_shift(d.word(), w("t^-1 a b t a")));
}

TEST_CASE("cyclic reduction conjugator and certificate") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const Word x = testing::random_word(3, static_cast<std::size_t>(rng() % 14), rng);
    const auto d = cyclically_t_reduce(x, S, true);
    const auto r = replay({x, d.log}, pinch_rules({S}));
    CHECK(r.ok);
    CHECK(r.output == d.word());
    // output = C^-1 x C
    const Word Ci = inverse(d.conjugator), o = inverse(d.word());
    CHECK(hnn_is_trivial(concat({&Ci, &x, &d.conjugator, &o}), {S}));
  }
}

TEST_CASE("Britton: t-reduced words with theta > 0 are nontrivial") {
  std::mt19937_64 rng(29);
  int tested = 0;
  for (int i = 0; i < 1000; ++i) {
    const Word x = random_t_reduced(rng, 1 + static_cast<int>(rng() % 4));
    const auto d = britton_reduce(x, S);
    if (d.theta() == 0) continue;
    ++tested;
    CHECK_FALSE(hnn_is_trivial(x, {S}));
  }
  CHECK(tested > 900);
}

TEST_CASE("hnn_conjugate examples") {
  auto a = hnn_conjugate(w("a"), w("b"), S);
  CHECK(a.verdict == Tri::Yes);
  CHECK(a.witness == w("t"));
  a = hnn_conjugate(w("a^2"), w("b^2"), S);
  CHECK(a.verdict == Tri::Yes);
  CHECK(witness_replays(w("a^2"), w("b^2"), a.witness));
  HNNBudget b;
  b.exponent = 8;
  a = hnn_conjugate(w("a"), w("b^2"), S, b);
  CHECK(a.verdict == Tri::No);
  a = hnn_conjugate(w("t a"), w("a"), S);
  CHECK(a.verdict == Tri::No);
}

TEST_CASE("hnn_conjugate is reflexive and symmetric; planted conjugates are found") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const Word x = free_reduce(testing::random_word(3, 1 + rng() % 8, rng));
    if (x.empty()) continue;
    const Word g = free_reduce(testing::random_word(3, rng() % 5, rng));
    const Word gi = inverse(g);
    const Word y = (i % 2 == 0) ? free_reduce(concat({&gi, &x, &g})) : free_reduce(testing::random_word(3, 1 + rng() % 8, rng));
    if (y.empty()) continue;

    const auto xx = hnn_conjugate(x, x, S);
    CHECK(xx.verdict == Tri::Yes);
    if (xx.verdict == Tri::Yes) CHECK(witness_replays(x, x, xx.witness));

    const auto xy = hnn_conjugate(x, y, S);
    const auto yx = hnn_conjugate(y, x, S);
    if (xy.verdict != Tri::Unknown && yx.verdict != Tri::Unknown) CHECK(xy.verdict == yx.verdict);
    if (i % 2 == 0) CHECK(xy.verdict == Tri::Yes);
    if (xy.verdict == Tri::Yes) CHECK(witness_replays(x, y, xy.witness));
    if (yx.verdict == Tri::Yes) CHECK(witness_replays(y, x, yx.witness));
  }
}

TEST_CASE("free_conjugator") {
  const Alphabet ab({"a", "b"});
  const Word x = ab.parse("a b b"), y = ab.parse("b a b");
  const auto T = free_conjugator(x, y);
  REQUIRE(T.has_value());
  const Word Ti = inverse(*T);
  CHECK(free_reduce(concat({&Ti, &x, &*T})) == y);
  CHECK_FALSE(free_conjugator(ab.parse("a"), ab.parse("b")).has_value());
}
