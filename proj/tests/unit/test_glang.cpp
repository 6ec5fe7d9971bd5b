#include <random>

#include "doctest.h"
#include "scgroup/free_group.hpp"
#include "scgroup/glang.hpp"
#include "scgroup/harness.hpp"

using namespace scg;

namespace {

const Alphabet G = gl_base_alphabet();
Word w(const char* s) { return G.parse(s); }

LanguageSpec finite(std::vector<std::string> words) {
  LanguageSpec s;
  s.alphabet = {"0", "1"};
  s.words = std::move(words);
  return s;
}

std::vector<Omega> all_binary(std::size_t max_len) {
  std::vector<Omega> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < max_len)
      for (int b : {0, 1}) {
        Omega o = out[i];
        o.push_back(b);
        out.push_back(o);
      }
  return out;
}

}  // namespace

TEST_CASE("base alphabet") {
  CHECK(G.names() == std::vector<std::string>{"x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2"});
}

TEST_CASE("lambda0 encoding") {
  CHECK(lambda0_width(2) == 1);
  CHECK(lambda0_width(3) == 2);
  CHECK(lambda0_width(1) == 1);
  CHECK(lambda0_encode({0, 1}, 2) == w("x1 x2"));
  CHECK(lambda0_encode({}, 2).empty());
  CHECK(lambda0_encode({2}, 3) == w("x2 x1"));
  CHECK(lambda0_encode({0}, 3) == w("x1 x1"));
  CHECK(lambda0_encode({1}, 3) == w("x1 x2"));
  CHECK(varsigma(w("x1 x2 x3^-1")) == w("y1 y2 y3^-1"));
  const auto [u, v] = lambda_encode({0, 1}, 2);
  CHECK(u == w("x1 x2 x3"));
  CHECK(v == w("y1 y2 y3"));
  const auto [u0, v0] = lambda_encode({}, 2);
  CHECK(u0 == w("x3"));
  CHECK(v0 == w("y3"));
  CHECK_THROWS_AS(lambda0_decode(w("x1^-1"), 2), Error);
  CHECK_THROWS_AS(lambda0_decode(w("x2 x2"), 3), Error);  // 11 is not a symbol of {p,q,r}
  CHECK_THROWS_AS(lambda0_decode(w("x1"), 3), Error);
}

TEST_CASE("lambda0 round trip to length 10") {
  std::size_t n = 0;
  for (const Omega& o : all_binary(10)) {
    const Word e = lambda0_encode(o, 2);
    CHECK(lambda0_decode(e, 2) == o);
    const auto [u, v] = lambda_encode(o, 2);
    CHECK(u.size() == o.size() + 1);
    CHECK(v.size() == o.size() + 1);
    ++n;
  }
  CHECK(n == 2047);
}

TEST_CASE("language backends") {
  Language f(finite({"0", "01", "110"}));
  CHECK(f.member(f.parse("01")));
  CHECK_FALSE(f.member(f.parse("1")));
  CHECK(f.nth_member(0) == f.parse("0"));
  CHECK(f.nth_member(1) == f.parse("01"));
  CHECK(f.nth_member(2) == f.parse("110"));
  CHECK_FALSE(f.nth_member(3).has_value());
  CHECK(f.format(f.parse("110")) == "110");

  LanguageSpec r;
  r.alphabet = {"0", "1"};
  r.backend = LanguageSpec::Backend::Regex;
  r.pattern = "(01)*";
  r.max_enum_length = 6;
  Language rl(r);
  CHECK(rl.member({}));
  CHECK(rl.member({0, 1, 0, 1}));
  CHECK_FALSE(rl.member({1, 0}));
  CHECK(rl.nth_member(0) == Omega{});
  CHECK(rl.nth_member(3) == Omega{0, 1, 0, 1, 0, 1});
  CHECK_FALSE(rl.nth_member(4).has_value());

  LanguageSpec c;
  c.alphabet = {"0", "1"};
  c.backend = LanguageSpec::Backend::Cmd;
  c.command = "grep -q '^1*$'";
  c.max_enum_length = 3;
  Language cl(c);
  CHECK(cl.member({1, 1}));
  CHECK_FALSE(cl.member({1, 0}));
  CHECK(cl.nth_member(2) == Omega{1, 1});

  LanguageSpec p = finite({"0", "01"});
  p.members = {"01"};
  Language pl(p);
  CHECK(pl.nth_member(0) == Omega{0, 1});
  CHECK_FALSE(pl.nth_member(1).has_value());
}

TEST_CASE("is_lambda_pair") {
  Language l(finite({"01"}));
  auto v = is_lambda_pair(w("x1 x2 x3"), w("y1 y2 y3"), l);
  CHECK(v.kind == LambdaVerdict::Kind::LambdaPair);
  CHECK(v.omega == Omega{0, 1});
  CHECK(v.exponent == 1);
  CHECK(l.queries() == 1);

  v = is_lambda_pair(w("x1 x2 x1 x2"), w("x2 x1 x2 x1"), l);
  CHECK(v.kind == LambdaVerdict::Kind::CyclicShift);
  CHECK(l.queries() == 1);

  v = is_lambda_pair(w("x1 x3"), w("y2 y3"), l);
  CHECK(v.kind == LambdaVerdict::Kind::NotAPair);
  CHECK(l.queries() == 1);

  // Shape is right but "0" is not in L.
  v = is_lambda_pair(w("x1 x3"), w("y1 y3"), l);
  CHECK(v.kind == LambdaVerdict::Kind::NotAPair);
  CHECK(v.queried);
  CHECK(l.queries() == 2);

  // Powers and cyclic shifts of the pair.
  v = is_lambda_pair(w("x2 x3 x1 x2 x3 x1"), w("y1 y2 y3 y1 y2 y3"), l);
  CHECK(v.kind == LambdaVerdict::Kind::LambdaPair);
  CHECK(v.exponent == 2);
}

TEST_CASE("build_gl_chain") {
  GLChain c = build_gl_chain(finite(std::vector<std::string>{}));
  CHECK(c.chain->level(1) == nullptr);
  CHECK(c.chain->Phi(1) == UINT64_MAX);

  c = build_gl_chain(finite({"0", "01"}));
  REQUIRE(c.chain->level(2) != nullptr);
  CHECK(c.chain->level(3) == nullptr);
  const LevelData& L2 = *c.chain->level(2);
  const auto [u, v] = lambda_encode({0, 1}, 2);
  CHECK(L2.spec.hnn->u == v);
  CHECK(L2.spec.hnn->v == u);
  CHECK(L2.rho == static_cast<std::int64_t>(family_relator_length(
                      RelatorFamilySpec{c.chain->alphabet(), {Word{L2.spec.hnn->t}}, w("z1"), w("z2"), 16, 1}, 1)));
}

TEST_CASE("G_L conjugacy decides membership on all short words") {
  for (const std::vector<std::string>& words :
       {std::vector<std::string>{"0"}, std::vector<std::string>{"", "1", "01", "110", "0101"}}) {
    GLChain c = build_gl_chain(finite(words));
    std::size_t mismatches = 0, violations = 0;
    for (const Omega& o : all_binary(6)) {
      const auto [u, v] = lambda_encode(o, 2);
      const GLAnswer a = gl_conjugacy(c, u, v);
      const bool in = c.language->member(o);
      mismatches += a.conjugate != in;
      violations += a.exclusivity_violated;
      CHECK(a.membership_queries <= 1);
    }
    CHECK(mismatches == 0);
    CHECK(violations == 0);
  }
}

TEST_CASE("gl_conjugacy examples") {
  GLChain c = build_gl_chain(finite({"01"}));
  auto a = gl_conjugacy(c, w("x1 x2 x3"), w("y1 y2 y3"));
  CHECK(a.conjugate);
  CHECK(a.kind == "lambda-pair");
  a = gl_conjugacy(c, w("x1 x3"), w("y1 y3"));
  CHECK_FALSE(a.conjugate);
  CHECK(a.kind == "none");
  a = gl_conjugacy(c, w("x1 z1 y2"), w("y2 x1 z1"));
  CHECK(a.conjugate);
  CHECK(a.kind == "g-conjugate");
  CHECK(a.membership_queries == 0);
  CHECK(gl_g_conjugacy_banded(c, w("x1 z2"), w("x1 z2")));
}

TEST_CASE("membership and conjugacy reductions") {
  GLChain c = build_gl_chain(finite({"01"}));
  const auto [u, v] = reduce_membership_to_conjugacy({0, 1}, 2);
  CHECK(u == w("x1 x2 x3"));
  CHECK(v == w("y1 y2 y3"));
  const std::uint64_t q0 = c.language->queries();
  auto m = reduce_conjugacy_to_membership(c, w("x1 x2 z1"), w("z1 x1 x2"));
  CHECK(m.cyclic_shift);
  CHECK_FALSE(m.query.has_value());
  CHECK(combine(m, false));
  m = reduce_conjugacy_to_membership(c, u, v);
  REQUIRE(m.query.has_value());
  CHECK(*m.query == Omega{0, 1});
  CHECK(combine(m, true));
  CHECK_FALSE(combine(m, false));
  CHECK(c.language->queries() == q0);
}
