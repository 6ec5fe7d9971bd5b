#include "scgroup/chain.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "scgroup/free_group.hpp"
#include "scgroup/steps.hpp"

namespace scg {

bool operator==(const LevelData& a, const LevelData& b) {
  auto same_hnn = [](const std::optional<HNNSpec>& x, const std::optional<HNNSpec>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->t == y->t && x->u == y->u && x->v == y->v);
  };
  const SCParams& p = a.spec.params;
  const SCParams& q = b.spec.params;
  return a.index == b.index && a.Phi == b.Phi && a.xi_bar == b.xi_bar && a.zeta == b.zeta && a.rho == b.rho &&
         same_hnn(a.spec.hnn, b.spec.hnn) && a.spec.relators == b.spec.relators && p.lambda == q.lambda &&
         p.c == q.c && p.eps == q.eps && p.mu == q.mu && p.rho == q.rho && a.spec.delta == b.spec.delta &&
         a.spec.delta_prime == b.spec.delta_prime && a.spec.rho_bar == b.spec.rho_bar && a.spec.phi == b.spec.phi &&
         a.spec.descriptor == b.spec.descriptor;
}

Rational xi(const SCParams& p, const Rational& rho_bar) {
  return ((1 - 23 * p.mu) * rho_bar - p.c) / p.lambda - 2 * p.eps;
}

Rational zeta(const SCParams& p, const Rational& rho) {
  return ((1 - 121 * p.lambda * p.mu) * rho - 2 * p.c) / p.lambda - 4 * p.eps;
}

GroupChain::GroupChain(Alphabet base, std::vector<Word> base_relators, SCParams base_params, LevelGenerator gen)
    : base_alpha_(base), alpha_(std::move(base)), base_relators_(std::move(base_relators)),
      base_params_(std::move(base_params)), gen_(std::move(gen)) {
  LevelData l0;
  l0.spec.params = base_params_;
  l0.spec.relators = base_relators_;
  l0.spec.descriptor = "base";
  for (const Word& r : base_relators_)
    l0.rho = l0.rho == 0 ? static_cast<std::int64_t>(r.size()) : std::min<std::int64_t>(l0.rho, r.size());
  levels_.push_back(std::move(l0));
  alpha_sizes_.push_back(alpha_.size());
}

namespace {

LevelData finish_level(int i, LevelSpec spec, std::uint64_t prev_phi) {
  LevelData d;
  d.index = i;
  if (std::string e = spec.params.range_error(); !e.empty())
    throw Error("level " + std::to_string(i) + ": " + e);
  if (spec.hnn)
    if (std::string e = spec.hnn->validate(); !e.empty()) throw Error("level " + std::to_string(i) + ": " + e);
  if (spec.phi == 0) throw Error("level " + std::to_string(i) + ": generator cost must be positive");
  for (const Word& r : spec.relators) {
    const auto len = static_cast<std::int64_t>(r.size());
    d.rho = d.rho == 0 ? len : std::min(d.rho, len);
  }
  if (!spec.relators.empty() && Rational(d.rho) < spec.rho_bar)
    throw Error("level " + std::to_string(i) + ": rho_i = " + std::to_string(d.rho) + " < rho_bar_i = " +
                format_rational(spec.rho_bar));
  d.Phi = prev_phi > std::numeric_limits<std::uint64_t>::max() - spec.phi ? std::numeric_limits<std::uint64_t>::max()
                                                                          : prev_phi + spec.phi;
  d.xi_bar = xi(spec.params, spec.rho_bar);
  d.zeta = zeta(spec.params, Rational(d.rho));
  if (d.zeta <= 0) d.validation.push_back({"zeta>0", -1, "zeta(" + std::to_string(i) + ") <= 0", {}});
  if (d.xi_bar < Rational(static_cast<long>(std::min<std::uint64_t>(d.Phi, 1ull << 62))))
    d.validation.push_back({"xi>=Phi", -1, "xi_bar(" + std::to_string(i) + ") < Phi(" + std::to_string(i) + ")", {}});
  d.validation.insert(d.validation.end(), spec.warnings.begin(), spec.warnings.end());
  d.spec = std::move(spec);
  return d;
}

}  // namespace

const LevelData* GroupChain::level(int i) {
  if (i < 0) return nullptr;
  while (static_cast<int>(levels_.size()) <= i && !ended_) {
    const int next = static_cast<int>(levels_.size());
    std::optional<LevelSpec> s = gen_(next, alpha_);
    if (!s) {
      ended_ = true;
      break;
    }
    levels_.push_back(finish_level(next, std::move(*s), levels_.back().Phi));
    alpha_sizes_.push_back(alpha_.size());
  }
  if (i >= static_cast<int>(levels_.size())) return nullptr;
  return &levels_[static_cast<std::size_t>(i)];
}

LevelData GroupChain::regenerate(int i) const {
  if (i == 0) return levels_.front();
  Alphabet a = base_alpha_;
  std::uint64_t phi = 0;
  for (int j = 1; j <= i; ++j) {
    std::optional<LevelSpec> s = gen_(j, a);
    if (!s) throw Error("chain has no level " + std::to_string(i));
    LevelData d = finish_level(j, std::move(*s), phi);
    phi = d.Phi;
    if (j == i) return d;
  }
  throw Error("chain has no level " + std::to_string(i));
}

std::uint64_t GroupChain::Phi(int i) {
  const LevelData* d = level(i);
  return d ? d->Phi : std::numeric_limits<std::uint64_t>::max();
}

int GroupChain::index_I(std::int64_t n) {
  int i = 0;
  while (true) {
    const LevelData* d = level(i + 1);
    if (!d || d->Phi > static_cast<std::uint64_t>(std::max<std::int64_t>(n, 0))) return i;
    ++i;
  }
}

std::vector<HNNSpec> GroupChain::tower(int hnn_levels) {
  std::vector<HNNSpec> out;
  for (int j = 1; j <= hnn_levels; ++j) {
    const LevelData* d = level(j);
    if (!d) break;
    if (d->spec.hnn) out.push_back(*d->spec.hnn);
  }
  return out;
}

std::size_t GroupChain::alphabet_size(int i) {
  level(i);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(i, 0)), alpha_sizes_.size() - 1);
  return alpha_sizes_[k];
}

QuotientSolver& GroupChain::solver(int relator_levels, int hnn_levels, bool conjugacy) {
  const int top = std::max(relator_levels, hnn_levels);
  const LevelData* d = level(top);
  if (!d) throw Error("chain has no level " + std::to_string(top));
  auto key = std::make_tuple(relator_levels, hnn_levels, conjugacy);
  auto it = solvers_.find(key);
  if (it != solvers_.end()) return *it->second;

  std::vector<std::string> names(alpha_.names().begin(),
                                 alpha_.names().begin() + static_cast<std::ptrdiff_t>(alphabet_size(top)));
  Alphabet a(names);
  std::vector<Word> rels = base_relators_;
  for (int j = 1; j <= relator_levels; ++j) {
    const LevelData* lj = level(j);
    rels.insert(rels.end(), lj->spec.relators.begin(), lj->spec.relators.end());
  }
  const SCParams& p = d->spec.params;
  RelatorSystem rs = RelatorSystem::from_words(a, rels, p);
  ReductionParams rp = conjugacy ? ReductionParams::for_conjugacy(p) : ReductionParams::for_word_problem(p);
  rp.delta = static_cast<int>(d->spec.delta);
  BaseGroup base{tower(hnn_levels)};
  for (HNNSpec& h : base.tower) h.alphabet = a;
  auto s = std::make_unique<QuotientSolver>(std::move(rs), std::move(rp), std::move(base));
  return *solvers_.emplace(key, std::move(s)).first->second;
}

namespace {

// First level whose alphabet holds every letter of w.
int required_level(GroupChain& chain, const Word& w) {
  int g = -1;
  for (Letter l : w) g = std::max(g, letter_gen(l));
  for (int i = 0;; ++i) {
    if (!chain.level(i)) throw Error("word uses a generator no level introduces");
    if (static_cast<int>(chain.alphabet_size(i)) > g) return i;
  }
}

}  // namespace

LimitWPAnswer limit_word_problem(GroupChain& chain, const Word& w, bool certify) {
  const auto n = static_cast<std::int64_t>(w.size());
  const int i0 = chain.index_I(n);
  int i1 = required_level(chain, w);
  for (int i = 1; i <= i0; ++i)
    if (chain.level(i)->xi_bar <= Rational(n)) i1 = std::max(i1, i);
  LimitWPAnswer a;
  a.level = i1;
  a.detail = chain.solver(i1, i1).solve(w, certify);
  a.trivial = a.detail.trivial;
  return a;
}

SupradiusFn honest_supradius(GroupChain& chain) {
  return [&chain](std::int64_t n) {
    int best = 0;
    for (int i = 1;; ++i) {
      const LevelData* d = chain.level(i);
      if (!d || d->xi_bar > Rational(n)) break;
      best = i;
    }
    return best;
  };
}

LimitWPAnswer limit_word_problem_supradius(GroupChain& chain, const SupradiusFn& upsilon, const Word& w,
                                           bool certify) {
  int i = std::max(0, upsilon(static_cast<std::int64_t>(w.size())));
  while (i > 0 && !chain.level(i)) --i;
  i = std::max(i, required_level(chain, w));
  LimitWPAnswer a;
  a.level = i;
  a.detail = chain.solver(i, i).solve(w, certify);
  a.trivial = a.detail.trivial;
  return a;
}

namespace {

// x conjugate into <u> in the free group: some rotation of cyclic_reduce(x) is a power of u's cyclic core.
bool free_conjugate_into_cyclic(const Word& x, const Word& u) {
  const Word cx = cyclic_reduce(x);
  const Word cu = cyclic_reduce(u);
  if (cx.empty() || cu.empty() || cx.size() % cu.size() != 0) return false;
  const auto k = static_cast<long>(cx.size() / cu.size());
  return free_conjugate(cx, power(cu, k)) || free_conjugate(cx, power(cu, -k));
}

BigInt ball_size(std::size_t gens, long radius) {
  BigInt total = 1, layer = 2 * static_cast<long>(gens);
  for (long r = 1; r <= radius; ++r) {
    total += layer;
    layer *= 2 * static_cast<long>(gens) - 1;
    if (total > BigInt(1) << 62) break;
  }
  return total;
}

struct LevelTest {
  Tri verdict = Tri::No;
  Word witness;
  std::string reason;
};

}  // namespace

GConjAnswer g_conjugacy(GroupChain& chain, const Word& x, const Word& y, const GConjBudget& budget) {
  GConjAnswer ans;
  const auto n = static_cast<std::int64_t>(x.size() + y.size());

  if (x.empty() || y.empty()) {
    // Conjugate to 1 is the word problem; the conjugator is empty.
    const Word& w = x.empty() ? y : x;
    const LimitWPAnswer a = limit_word_problem(chain, w);
    const bool trivial = a.trivial;
    const int lvl = a.level;
    ans.verdict = trivial ? Tri::Yes : Tri::No;
    ans.level = trivial ? lvl : -1;
    ans.reason = trivial ? "word problem" : "nontrivial against trivial";
    return ans;
  }

  if (chain.base_relators().empty()) {
    if (auto T = free_conjugator(x, y)) {
      ans.verdict = Tri::Yes;
      ans.witness = *T;
      ans.level = 0;
      ans.reason = "conjugate in G0";
      return ans;
    }
  }

  bool unknown = false;
  std::string unknown_reason;
  const int top = chain.index_I(n);
  bool conj_below = false;  // conjugate in some G_j, j < i, already seen
  for (int i = chain.base_relators().empty() ? 1 : 0; i <= top; ++i) {
    const LevelData* d = chain.level(i);
    if (i > 0 && d->zeta > Rational(n)) continue;
    const SCParams& p = d->spec.params;

    QuotientSolver& cs = chain.solver(i, i, true);
    ReductionReport rx = cs.reduce(x, n, true);
    ReductionReport ry = cs.reduce(y, n, true);
    const Word xr = rx.output, yr = ry.output;
    const Word Cx = certificate_conjugator(rx.certificate);
    const Word Cy = certificate_conjugator(ry.certificate);
    QuotientSolver& wp = chain.solver(i, i);

    // Conjugator shapes T1 W T2.
    std::set<Word> Ws{Word{}};
    const PatternSets& ps = wp.patterns_for(n);
    // Cyclic subwords of every rotation are those of R and R^-1.
    std::vector<Word> sides;
    for (const Word& b : ps.system.base) {
      sides.push_back(b);
      sides.push_back(inverse(b));
    }
    for (const Word& r : sides) {
      const std::int64_t lim = floor_i64(p.lambda * p.mu * Rational(static_cast<long>(r.size())));
      for (std::int64_t len = 1; len <= lim; ++len)
        for (std::size_t s = 0; s < r.size() && Ws.size() < budget.max_conjugators; ++s)
          Ws.insert(subword_cyclic(r, s, static_cast<std::size_t>(len)));
    }
    std::vector<Word> Ts = ball(wp.system().alphabet, 2 * p.eps);
    std::optional<Word> found;
    const std::size_t rots = std::max<std::size_t>(1, yr.size());
    for (std::size_t k = 0; k < rots && !found; ++k) {
      const Word ystar = rotate(yr, k);  // ystar = R^-1 yr R with R = prefix of length k
      const Word R(yr.begin(), yr.begin() + static_cast<std::ptrdiff_t>(k));
      for (const Word& T1 : Ts) {
        for (const Word& W : Ws) {
          for (const Word& T2 : Ts) {
            const Word S = free_reduce(concat({&T1, &W, &T2}));
            Word probe = inverse(S);
            probe.insert(probe.end(), xr.begin(), xr.end());
            probe.insert(probe.end(), S.begin(), S.end());
            const Word yinv = inverse(ystar);
            probe.insert(probe.end(), yinv.begin(), yinv.end());
            if (wp.solve(probe).trivial) {
              const Word Rinv = inverse(R), Cyinv = inverse(Cy);
              found = free_reduce(concat({&Cx, &S, &Rinv, &Cyinv}));
              break;
            }
          }
          if (found) break;
        }
        if (found) break;
      }
    }
    if (!found) continue;

    // Conjugate in G_i; G-conjugate at this level unless already conjugate in H_i.
    if (i == 0) {
      ans.verdict = Tri::Yes;
      ans.witness = *found;
      ans.level = 0;
      ans.reason = "conjugate in G0";
      return ans;
    }
    QuotientSolver& hs = chain.solver(i - 1, i);
    auto h_conj = [&](const Word& T) {
      Word probe = inverse(T);
      probe.insert(probe.end(), x.begin(), x.end());
      probe.insert(probe.end(), T.begin(), T.end());
      const Word yinv = inverse(y);
      probe.insert(probe.end(), yinv.begin(), yinv.end());
      return hs.solve(probe).trivial;
    };
    Tri in_h = Tri::Unknown;
    if (conj_below || h_conj(*found)) {
      in_h = Tri::Yes;
    } else {
      bool near_assoc = false;
      if (d->spec.hnn) {
        const HNNSpec& h = *d->spec.hnn;
        near_assoc = free_conjugate_into_cyclic(xr, h.u) || free_conjugate_into_cyclic(xr, h.v) ||
                     free_conjugate_into_cyclic(yr, h.u) || free_conjugate_into_cyclic(yr, h.v);
      }
      if (!near_assoc) {
        // Neither side meets the associated subgroups: H_i-conjugacy is G_{i-1}-conjugacy, ruled out below.
        in_h = Tri::No;
      } else {
        const long tau = budget.tau >= 0 ? budget.tau : 2 * (8 * d->spec.delta_prime + 1) + n;
        const Alphabet& ha = hs.system().alphabet;
        if (ball_size(ha.size(), tau) > BigInt(budget.max_conjugators)) {
          in_h = Tri::Unknown;
        } else {
          in_h = Tri::No;
          for (const Word& T : ball(ha, static_cast<int>(tau)))
            if (h_conj(T)) {
              in_h = Tri::Yes;
              break;
            }
        }
      }
    }
    conj_below = true;
    if (in_h == Tri::No) {
      ans.verdict = Tri::Yes;
      ans.witness = *found;
      ans.level = i;
      ans.reason = "conjugate in G_" + std::to_string(i) + ", not in H_" + std::to_string(i);
      return ans;
    }
    if (in_h == Tri::Unknown) {
      unknown = true;
      unknown_reason = "H_" + std::to_string(i) + " conjugator budget exhausted";
    }
  }
  ans.verdict = unknown ? Tri::Unknown : Tri::No;
  ans.reason = unknown ? unknown_reason : "no level witnesses conjugacy";
  return ans;
}

}  // namespace scg
