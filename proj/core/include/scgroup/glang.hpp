#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scgroup/chain.hpp"

namespace scg {

// A word over the language alphabet, as symbol indices.
using Omega = std::vector<int>;

struct LanguageSpec {
  enum class Backend { Finite, Regex, Cmd };
  std::vector<std::string> alphabet;
  Backend backend = Backend::Finite;
  std::vector<std::string> words;  // finite
  std::string pattern;             // regex, over single-character symbols
  std::string command;             // cmd: word on stdin, exit status 0 means member
  std::size_t max_enum_length = 12;
  std::vector<std::string> members;  // persisted enumeration; used verbatim when non-empty
};

class Language {
 public:
  explicit Language(LanguageSpec spec);

  const LanguageSpec& spec() const { return spec_; }
  std::size_t alphabet_size() const { return spec_.alphabet.size(); }

  bool member(const Omega& w);
  // i-th member (0-based) in (length, lex) order, or the persisted order.
  std::optional<Omega> nth_member(std::size_t i);

  Omega parse(const std::string& text) const;
  std::string format(const Omega& w) const;

  std::uint64_t queries() const { return queries_; }
  std::uint64_t enumeration_queries() const { return enum_queries_; }

 private:
  bool decide(const Omega& w);
  bool advance();  // finds the next member of the lazy enumeration

  LanguageSpec spec_;
  std::vector<Omega> finite_;
  std::vector<Omega> listed_;
  Omega cursor_;
  bool cursor_started_ = false, exhausted_ = false;
  std::uint64_t queries_ = 0, enum_queries_ = 0;
  bool single_char_ = true;
};

// Fixed generator layout of G_L: x1 x2 x3 y1 y2 y3 z1 z2, then t1 t2 ... as levels appear.
Alphabet gl_base_alphabet();

// Block code: width max(1, ceil(log2 |A|)), symbol index in binary, bit 0 -> x1, bit 1 -> x2.
int lambda0_width(std::size_t alphabet_size);
Word lambda0_encode(const Omega& w, std::size_t alphabet_size);
Omega lambda0_decode(const Word& w, std::size_t alphabet_size);  // throws Error outside the image
Word varsigma(const Word& w);                                       // x_j -> y_j
std::pair<Word, Word> lambda_encode(const Omega& w, std::size_t alphabet_size);

struct GLSchedule {
  std::int64_t m0 = 8;
  Rational rho0{64};
  Rational rho_ratio{4};
  Rational lambda{1};
  Rational c{0};
  int eps = 0;
  Rational mu{1, 2000};
};

struct GLChain {
  std::shared_ptr<Language> language;
  GLSchedule schedule;
  std::unique_ptr<GroupChain> chain;
};

GLChain build_gl_chain(LanguageSpec spec, const GLSchedule& schedule = {});

struct LambdaVerdict {
  enum class Kind { CyclicShift, LambdaPair, NotAPair, Unknown };
  Kind kind = Kind::NotAPair;
  Omega omega;
  long exponent = 0;
  bool queried = false;  // membership was (or would be) asked
  std::string reason;
};
std::string to_string(LambdaVerdict::Kind k);

// Shape only: queried == true means a membership question for `omega` would settle it.
LambdaVerdict lambda_shape(const Word& x, const Word& y, std::size_t alphabet_size);
LambdaVerdict is_lambda_pair(const Word& x, const Word& y, Language& lang);

struct GLAnswer {
  bool conjugate = false;
  std::string kind;  // "g-conjugate", "lambda-pair", "none", "unknown"
  GConjAnswer g;
  LambdaVerdict lambda;
  Word x_reduced, y_reduced;
  bool exclusivity_violated = false;
  std::uint64_t membership_queries = 0;
};

GLAnswer gl_conjugacy(GLChain& gl, const Word& x, const Word& y, const GConjBudget& budget = {});

// Delegates to g_conjugacy; no separate ladder search.
bool gl_g_conjugacy_banded(GLChain& gl, const Word& x, const Word& y);

// omega in L  <=>  Lambda(omega) components conjugate in G_L.
std::pair<Word, Word> reduce_membership_to_conjugacy(const Omega& w, std::size_t alphabet_size);

struct MembershipReduction {
  bool cyclic_shift = false;
  bool g_conjugate = false;
  std::optional<Omega> query;  // at most one membership question
};
// Decoded Lambda shape is read without asking the language.
MembershipReduction reduce_conjugacy_to_membership(GLChain& gl, const Word& x, const Word& y);
bool combine(const MembershipReduction& r, bool member_answer);

}  // namespace scg
