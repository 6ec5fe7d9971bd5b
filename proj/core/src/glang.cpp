#include "scgroup/glang.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include "scgroup/free_group.hpp"
#include "scgroup/steps.hpp"

namespace scg {

namespace {

constexpr int kX1 = 0, kX2 = 1, kX3 = 2, kY1 = 3, kY3 = 5, kZ1 = 6, kZ2 = 7;

bool shortlex_omega(const Omega& a, const Omega& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Language::Language(LanguageSpec spec) : spec_(std::move(spec)) {
  if (spec_.alphabet.empty()) throw Error("language: empty alphabet");
  for (const std::string& s : spec_.alphabet) {
    if (s.empty()) throw Error("language: empty symbol");
    if (s.size() != 1) single_char_ = false;
  }
  if (std::set<std::string>(spec_.alphabet.begin(), spec_.alphabet.end()).size() != spec_.alphabet.size())
    throw Error("language: duplicate symbol");
  if (spec_.backend == LanguageSpec::Backend::Regex && !single_char_)
    throw Error("language: regex backend needs single-character symbols");
  if (spec_.backend == LanguageSpec::Backend::Finite) {
    for (const std::string& w : spec_.words) finite_.push_back(parse(w));
    std::sort(finite_.begin(), finite_.end(), shortlex_omega);
    finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
    listed_ = finite_;
    exhausted_ = true;
  }
  if (!spec_.members.empty()) {
    listed_.clear();
    for (const std::string& w : spec_.members) listed_.push_back(parse(w));
    exhausted_ = true;
  }
}

Omega Language::parse(const std::string& text) const {
  Omega out;
  auto index = [&](const std::string& sym) {
    auto it = std::find(spec_.alphabet.begin(), spec_.alphabet.end(), sym);
    if (it == spec_.alphabet.end()) throw Error("language: unknown symbol '" + sym + "'");
    return static_cast<int>(it - spec_.alphabet.begin());
  };
  if (single_char_) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(index(std::string(1, ch)));
  } else {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) out.push_back(index(tok));
  }
  return out;
}

std::string Language::format(const Omega& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i) s += ' ';
    s += spec_.alphabet.at(static_cast<std::size_t>(w[i]));
  }
  return s;
}

bool Language::decide(const Omega& w) {
  steps::add(w.size() + 1);
  switch (spec_.backend) {
    case LanguageSpec::Backend::Finite:
      return std::binary_search(finite_.begin(), finite_.end(), w, shortlex_omega);
    case LanguageSpec::Backend::Regex: {
      static thread_local std::string cached_pattern;
      static thread_local std::regex re;
      if (cached_pattern != spec_.pattern) {
        re = std::regex(spec_.pattern, std::regex::ECMAScript);
        cached_pattern = spec_.pattern;
      }
      return std::regex_match(format(w), re);
    }
    case LanguageSpec::Backend::Cmd: {
      auto old = std::signal(SIGPIPE, SIG_IGN);
      FILE* p = popen(spec_.command.c_str(), "w");
      if (!p) {
        std::signal(SIGPIPE, old);
        throw Error("language: cannot run '" + spec_.command + "'");
      }
      const std::string line = format(w) + "\n";
      std::fwrite(line.data(), 1, line.size(), p);
      const int status = pclose(p);
      std::signal(SIGPIPE, old);
      if (status == -1) throw Error("language: decider failed");
      return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    }
  }
  return false;
}

bool Language::member(const Omega& w) {
  for (int s : w)
    if (s < 0 || s >= static_cast<int>(alphabet_size())) throw Error("language: symbol out of range");
  ++queries_;
  return decide(w);
}

bool Language::advance() {
  const auto k = static_cast<int>(alphabet_size());
  while (true) {
    if (!cursor_started_) {
      cursor_started_ = true;
    } else {
      // Next word in (length, lex) order.
      int i = static_cast<int>(cursor_.size()) - 1;
      while (i >= 0 && cursor_[static_cast<std::size_t>(i)] == k - 1) cursor_[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) {
        if (cursor_.size() >= spec_.max_enum_length) {
          exhausted_ = true;
          return false;
        }
        cursor_.assign(cursor_.size() + 1, 0);
      } else {
        ++cursor_[static_cast<std::size_t>(i)];
      }
    }
    ++enum_queries_;
    if (decide(cursor_)) {
      listed_.push_back(cursor_);
      return true;
    }
  }
}

std::optional<Omega> Language::nth_member(std::size_t i) {
  while (listed_.size() <= i && !exhausted_)
    if (!advance()) break;
  if (i < listed_.size()) return listed_[i];
  return std::nullopt;
}

Alphabet gl_base_alphabet() { return Alphabet({"x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2"}); }

int lambda0_width(std::size_t alphabet_size) {
  int w = 0;
  while ((std::size_t{1} << w) < alphabet_size) ++w;
  return std::max(1, w);
}

Word lambda0_encode(const Omega& w, std::size_t alphabet_size) {
  const int width = lambda0_width(alphabet_size);
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(width));
  for (int s : w) {
    if (s < 0 || static_cast<std::size_t>(s) >= alphabet_size) throw Error("lambda0: symbol out of range");
    for (int b = width - 1; b >= 0; --b) out.push_back(gen_letter((s >> b) & 1 ? kX2 : kX1));
  }
  return out;
}

Omega lambda0_decode(const Word& w, std::size_t alphabet_size) {
  const int width = lambda0_width(alphabet_size);
  if (w.size() % static_cast<std::size_t>(width) != 0) throw Error("lambda0: length is not a multiple of the width");
  Omega out;
  for (std::size_t i = 0; i < w.size(); i += static_cast<std::size_t>(width)) {
    int s = 0;
    for (int b = 0; b < width; ++b) {
      const Letter l = w[i + static_cast<std::size_t>(b)];
      if (l == gen_letter(kX1)) s = 2 * s;
      else if (l == gen_letter(kX2)) s = 2 * s + 1;
      else throw Error("lambda0: not in the image (letter outside x1, x2)");
    }
    if (static_cast<std::size_t>(s) >= alphabet_size) throw Error("lambda0: not in the image (unused block)");
    out.push_back(s);
  }
  return out;
}

Word varsigma(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    const int g = letter_gen(l);
    if (g < kX1 || g > kX3) throw Error("varsigma: letter outside x1, x2, x3");
    out.push_back(gen_letter(g + 3, letter_inv(l)));
  }
  return out;
}

std::pair<Word, Word> lambda_encode(const Omega& w, std::size_t alphabet_size) {
  Word u = lambda0_encode(w, alphabet_size);
  Word v = varsigma(u);
  u.push_back(gen_letter(kX3));
  v.push_back(gen_letter(kY3));
  return {u, v};
}

namespace {

std::size_t bitlength(std::uint64_t x) {
  std::size_t b = 0;
  while (x) {
    ++b;
    x >>= 1;
  }
  return b;
}

}  // namespace

GLChain build_gl_chain(LanguageSpec spec, const GLSchedule& sch) {
  GLChain gl;
  gl.language = std::make_shared<Language>(std::move(spec));
  gl.schedule = sch;
  if (sch.m0 < 2) throw Error("schedule: m0 must be >= 2");
  std::shared_ptr<Language> lang = gl.language;
  LevelGenerator gen = [lang, sch](int i, Alphabet& alpha) -> std::optional<LevelSpec> {
    std::optional<Omega> omega = lang->nth_member(static_cast<std::size_t>(i - 1));
    if (!omega) return std::nullopt;
    if (i > 62 || sch.m0 > (std::int64_t{1} << (62 - i))) throw Error("level " + std::to_string(i) + ": m overflows");
    const std::string tname = "t" + std::to_string(i);
    const int tg = alpha.find(tname) ? *alpha.find(tname) : alpha.add(tname);
    auto [u, v] = lambda_encode(*omega, lang->alphabet_size());
    LevelSpec s;
    // u_i = t_i^-1 v_i t_i, i.e. t^-1 (Y-word) t = (X-word).
    s.hnn = HNNSpec{alpha, gen_letter(tg), v, u};
    RelatorFamilySpec fam;
    fam.alphabet = alpha;
    fam.Z = {Word{gen_letter(tg)}};
    fam.U = Word{gen_letter(kZ1)};
    fam.V = Word{gen_letter(kZ2)};
    fam.m11 = sch.m0 << (i - 1);
    fam.k = 1;
    s.relators = {family_relator(fam, 1)};
    s.params.lambda = sch.lambda;
    s.params.c = sch.c;
    s.params.eps = sch.eps;
    s.params.mu = sch.mu;
    s.params.rho = static_cast<std::int64_t>(s.relators[0].size());
    s.rho_bar = sch.rho0;
    for (int j = 1; j < i; ++j) s.rho_bar *= sch.rho_ratio;
    s.phi = omega->size() + u.size() + v.size() + bitlength(static_cast<std::uint64_t>(fam.m11)) + 1;
    s.descriptor = "omega=" + lang->format(*omega) + " m=" + std::to_string(fam.m11);
    steps::add(s.phi);
    return s;
  };
  SCParams base;
  base.lambda = sch.lambda;
  base.c = sch.c;
  base.eps = sch.eps;
  base.mu = sch.mu;
  gl.chain = std::make_unique<GroupChain>(gl_base_alphabet(), std::vector<Word>{}, base, std::move(gen));
  return gl;
}

std::string to_string(LambdaVerdict::Kind k) {
  switch (k) {
    case LambdaVerdict::Kind::CyclicShift: return "cyclic-shift";
    case LambdaVerdict::Kind::LambdaPair: return "lambda-pair";
    case LambdaVerdict::Kind::NotAPair: return "not-a-pair";
    case LambdaVerdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// 0: all letters in x1..x3, 1: all in y1..y3, -1 otherwise.
int factor_of(const Word& w) {
  int f = -2;
  for (Letter l : w) {
    const int g = letter_gen(l);
    const int h = g <= kX3 ? 0 : (g >= kY1 && g <= kY3 ? 1 : -1);
    if (h < 0 || (f != -2 && f != h)) return -1;
    f = h;
  }
  return f == -2 ? -1 : f;
}

}  // namespace

LambdaVerdict lambda_shape(const Word& x0, const Word& y0, std::size_t alphabet_size) {
  LambdaVerdict v;
  Word x = cyclic_reduce(x0), y = cyclic_reduce(y0);
  if (is_cyclic_shift(x, y)) {
    v.kind = LambdaVerdict::Kind::CyclicShift;
    return v;
  }
  int fx = factor_of(x), fy = factor_of(y);
  if (fx == 1 && fy == 0) {
    std::swap(x, y);
    std::swap(fx, fy);
  }
  if (fx != 0 || fy != 1) {
    v.reason = "not an X0/Y0 pair";
    return v;
  }
  if (std::all_of(x.begin(), x.end(), [](Letter l) { return l < 0; })) {
    x = inverse(x);
    y = inverse(y);
  }
  if (!std::all_of(x.begin(), x.end(), [](Letter l) { return l > 0; })) {
    v.reason = "mixed signs";
    return v;
  }
  const FreeRootReport root = free_root(x);
  Word r = root.root;
  if (std::count(r.begin(), r.end(), gen_letter(kX3)) != 1) {
    v.reason = "root does not contain exactly one x3";
    return v;
  }
  const auto p = static_cast<std::size_t>(std::find(r.begin(), r.end(), gen_letter(kX3)) - r.begin());
  r = rotate(r, p + 1);
  const Word prefix(r.begin(), r.end() - 1);
  try {
    v.omega = lambda0_decode(prefix, alphabet_size);
  } catch (const Error& e) {
    v.reason = e.what();
    return v;
  }
  Word vw = varsigma(prefix);
  vw.push_back(gen_letter(kY3));
  if (!is_cyclic_shift(y, power(vw, root.exponent))) {
    v.reason = "second word is not the matching power";
    return v;
  }
  v.exponent = root.exponent;
  v.queried = true;  // shape matches; membership decides
  return v;
}

LambdaVerdict is_lambda_pair(const Word& x, const Word& y, Language& lang) {
  LambdaVerdict v = lambda_shape(x, y, lang.alphabet_size());
  if (!v.queried) return v;
  if (lang.member(v.omega)) {
    v.kind = LambdaVerdict::Kind::LambdaPair;
  } else {
    v.reason = "decoded word not in the language";
  }
  return v;
}

GLAnswer gl_conjugacy(GLChain& gl, const Word& x, const Word& y, const GConjBudget& budget) {
  GLAnswer a;
  GroupChain& ch = *gl.chain;
  const std::uint64_t q0 = gl.language->queries();
  const auto n = static_cast<std::int64_t>(x.size() + y.size());
  const int i = ch.index_I(n);
  QuotientSolver& s = ch.solver(i, i, true);
  a.x_reduced = s.reduce(x, n).output;
  a.y_reduced = s.reduce(y, n).output;
  a.g = g_conjugacy(ch, x, y, budget);
  a.lambda = is_lambda_pair(a.x_reduced, a.y_reduced, *gl.language);
  const bool g_yes = a.g.verdict == Tri::Yes;
  const bool l_yes = a.lambda.kind == LambdaVerdict::Kind::LambdaPair;
  a.exclusivity_violated = g_yes && l_yes;
  a.conjugate = g_yes || l_yes;
  if (g_yes) a.kind = "g-conjugate";
  else if (l_yes) a.kind = "lambda-pair";
  else if (a.g.verdict == Tri::Unknown) a.kind = "unknown";
  else a.kind = "none";
  a.membership_queries = gl.language->queries() - q0;
  return a;
}

bool gl_g_conjugacy_banded(GLChain& gl, const Word& x, const Word& y) {
  return g_conjugacy(*gl.chain, x, y).verdict == Tri::Yes;
}

std::pair<Word, Word> reduce_membership_to_conjugacy(const Omega& w, std::size_t alphabet_size) {
  return lambda_encode(w, alphabet_size);
}

MembershipReduction reduce_conjugacy_to_membership(GLChain& gl, const Word& x, const Word& y) {
  MembershipReduction m;
  GroupChain& ch = *gl.chain;
  const auto n = static_cast<std::int64_t>(x.size() + y.size());
  const int i = ch.index_I(n);
  QuotientSolver& s = ch.solver(i, i, true);
  const Word xr = s.reduce(x, n).output, yr = s.reduce(y, n).output;
  if (is_cyclic_shift(xr, yr)) {
    m.cyclic_shift = true;
    return m;
  }
  m.g_conjugate = g_conjugacy(ch, x, y).verdict == Tri::Yes;
  LambdaVerdict v = lambda_shape(xr, yr, gl.language->alphabet_size());
  if (v.queried) m.query = v.omega;
  return m;
}

bool combine(const MembershipReduction& r, bool member_answer) {
  return r.cyclic_shift || r.g_conjugate || (r.query.has_value() && member_answer);
}

}  // namespace scg
