#include "scgroup/smallcancel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "scgroup/free_group.hpp"
#include "scgroup/steps.hpp"

namespace scg {

std::string SCParams::range_error() const {
  if (lambda < 1) return "lambda must be >= 1";
  if (c < 0) return "c must be >= 0";
  if (eps < 0) return "eps must be >= 0";
  if (mu <= 0 || mu >= 1) return "mu must lie in (0,1)";
  if (rho <= 0) return "rho must be > 0";
  return {};
}

RelatorSystem RelatorSystem::from_words(Alphabet alpha, const std::vector<Word>& words, SCParams params) {
  RelatorSystem rs;
  rs.alphabet = std::move(alpha);
  rs.params = std::move(params);
  std::set<Word> seen;
  for (const Word& w : words) {
    if (w.empty()) continue;
    if (!is_cyclically_reduced(w))
      throw Error("relator is not freely cyclically reduced: " + rs.alphabet.format(w));
    Word c = canonical_relator(w, rs.alphabet);
    if (seen.insert(c).second) rs.base.push_back(std::move(c));
  }
  std::sort(rs.base.begin(), rs.base.end(),
            [&](const Word& a, const Word& b) { return shortlex_less(a, b, rs.alphabet); });
  rs.closed = closure_letters(rs.base) <= closure_letter_limit;
  if (rs.closed) rs.relators = symmetrize(rs.base, rs.alphabet);
  return rs;
}

std::uint64_t RelatorSystem::closure_letters(const std::vector<Word>& base) {
  std::uint64_t t = 0;
  for (const Word& w : base) t += 2 * static_cast<std::uint64_t>(w.size()) * w.size();
  return t;
}

void RelatorSystem::require_closure(const char* what) const {
  if (!closed) throw Error(std::string(what) + ": relator closure too large to materialize");
}

bool RelatorSystem::is_symmetrized(const Word& w) const {
  if (closed) return std::binary_search(relators.begin(), relators.end(), w,
                                        [&](const Word& a, const Word& b) { return shortlex_less(a, b, alphabet); });
  for (const Word& b : base)
    if (b.size() == w.size() && (is_cyclic_shift(b, w) || is_cyclic_shift(inverse(b), w))) return true;
  return false;
}

std::int64_t RelatorSystem::max_length() const {
  std::int64_t m = 0;
  for (const Word& w : base) m = std::max<std::int64_t>(m, static_cast<std::int64_t>(w.size()));
  return m;
}

std::int64_t RelatorSystem::min_length() const {
  if (base.empty()) return 0;
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (const Word& w : base) m = std::min<std::int64_t>(m, static_cast<std::int64_t>(w.size()));
  return m;
}

std::vector<SymOrigin> symmetrized_origins(const RelatorSystem& rs) {
  rs.require_closure("symmetrized_origins");
  std::map<Word, SymOrigin> where;
  for (int b = static_cast<int>(rs.base.size()) - 1; b >= 0; --b) {
    const Word& r = rs.base[static_cast<std::size_t>(b)];
    const Word ri = inverse(r);
    for (std::int64_t k = static_cast<std::int64_t>(r.size()) - 1; k >= 0; --k) {
      where[rotate(ri, static_cast<std::size_t>(k))] = {b, true, k};
      where[rotate(r, static_cast<std::size_t>(k))] = {b, false, k};
    }
  }
  std::vector<SymOrigin> out;
  out.reserve(rs.relators.size());
  for (const Word& w : rs.relators) out.push_back(where.at(w));
  return out;
}

bool PieceReport::operator==(const PieceReport& o) const {
  return kind == o.kind && rel_a == o.rel_a && rel_b == o.rel_b && off_a == o.off_a && off_b == o.off_b &&
         piece == o.piece && piece_other == o.piece_other && Y == o.Y && Z == o.Z &&
         inverse_occurrence == o.inverse_occurrence;
}

std::vector<Word> ball(const Alphabet& alpha, int radius) {
  std::vector<Letter> letters;
  for (int g = 0; g < static_cast<int>(alpha.size()); ++g) {
    letters.push_back(gen_letter(g, true));
    letters.push_back(gen_letter(g, false));
  }
  std::sort(letters.begin(), letters.end(), [&](Letter a, Letter b) { return alpha.less(a, b); });
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter l : letters) {
        if (!out[i].empty() && out[i].back() == -l) continue;
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

namespace {

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

// Pieces between distinct symmetrized relators for eps = 0: lexicographic sort of the
// relator list, then range minima of adjacent common prefixes.
std::vector<PieceReport> pieces_eps0(const RelatorSystem& rs) {
  const auto& R = rs.relators;
  const std::size_t N = R.size();
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  auto lex = [&](std::size_t a, std::size_t b) {
    const Word& x = R[a];
    const Word& y = R[b];
    const std::size_t m = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < m; ++i)
      if (x[i] != y[i]) return rs.alphabet.less(x[i], y[i]);
    return x.size() < y.size();
  };
  std::sort(order.begin(), order.end(), lex);
  std::vector<std::size_t> adj(N, 0);
  for (std::size_t t = 1; t < N; ++t) {
    const Word& x = R[order[t - 1]];
    const Word& y = R[order[t]];
    std::size_t k = 0;
    while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
    adj[t] = k;
    steps::add(k + 1);
  }
  std::vector<PieceReport> out;
  for (std::size_t a = 0; a < N; ++a) {
    std::size_t run = std::numeric_limits<std::size_t>::max();
    for (std::size_t b = a + 1; b < N; ++b) {
      run = std::min(run, adj[b]);
      if (run == 0) break;
      PieceReport p;
      p.kind = PieceKind::Epsilon;
      const std::size_t i = std::min(order[a], order[b]);
      const std::size_t j = std::max(order[a], order[b]);
      p.rel_a = static_cast<int>(i);
      p.rel_b = static_cast<int>(j);
      p.piece.assign(R[i].begin(), R[i].begin() + static_cast<std::ptrdiff_t>(run));
      p.piece_other = p.piece;
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), [](const PieceReport& x, const PieceReport& y) {
    return std::tie(x.rel_a, x.rel_b) < std::tie(y.rel_a, y.rel_b);
  });
  return out;
}

std::vector<PieceReport> pieces_eps_general(const RelatorSystem& rs, int eps) {
  const auto& R = rs.relators;
  const auto B = ball(rs.alphabet, eps);
  std::vector<PieceReport> out;
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::size_t j = 0; j < R.size(); ++j) {
      PieceReport best;
      bool found = false;
      for (const Word& Y : B) {
        const Word Yi = inverse(Y);
        const Word conj = free_reduce(concat({&Yi, &R[i], &Y}));
        if (conj == R[j]) continue;
        for (const Word& Z : B) {
          for (std::size_t len = R[i].size(); len >= 1; --len) {
            if (found && len <= best.piece.size()) break;
            Word U(R[i].begin(), R[i].begin() + static_cast<std::ptrdiff_t>(len));
            Word Up = free_reduce(concat({&Yi, &U, &Z}));
            steps::add(len);
            if (!Up.empty() && is_prefix(Up, R[j])) {
              best.kind = PieceKind::Epsilon;
              best.rel_a = static_cast<int>(i);
              best.rel_b = static_cast<int>(j);
              best.piece = std::move(U);
              best.piece_other = std::move(Up);
              best.Y = Y;
              best.Z = Z;
              found = true;
              break;
            }
          }
        }
      }
      if (found) out.push_back(std::move(best));
    }
  }
  return out;
}

bool arcs_disjoint(std::int64_t p, std::int64_t lp, std::int64_t q, std::int64_t lq, std::int64_t n) {
  auto wrap = [n](std::int64_t x) { return ((x % n) + n) % n; };
  return wrap(q - p) >= lp && wrap(p - q) >= lq;
}

// Longest disjoint self-repetition starting at each position of each base relator.
std::vector<PieceReport> prime_pieces(const RelatorSystem& rs, int eps) {
  std::vector<PieceReport> out;
  const auto B = ball(rs.alphabet, eps);
  for (std::size_t b = 0; b < rs.base.size(); ++b) {
    const Word& r = rs.base[b];
    const auto n = static_cast<std::int64_t>(r.size());
    auto at = [&](std::int64_t i) { return r[static_cast<std::size_t>(((i % n) + n) % n)]; };
    for (int orient = 0; orient < 2; ++orient) {
      const bool inv = orient == 1;
      for (std::int64_t p = 0; p < n; ++p) {
        PieceReport best;
        bool found = false;
        if (eps == 0) {
          for (std::int64_t q = 0; q < n; ++q) {
            if (q == p) continue;
            std::int64_t k = 0;
            if (!inv) {
              while (k < n && at(p + k) == at(q + k) && arcs_disjoint(p, k + 1, q, k + 1, n)) ++k;
            } else {
              // U = r[p..p+k) and U^-1 = r[e-k+1..e] with e = q read as the last index.
              while (k < n && at(p + k) == -at(q - k) && arcs_disjoint(p, k + 1, q - k, k + 1, n)) ++k;
            }
            steps::add(static_cast<std::uint64_t>(k + 1));
            if (k == 0) continue;
            const std::int64_t start = inv ? q - k + 1 : q;
            const std::int64_t qs = ((start % n) + n) % n;
            if (!found || k > best.length() || (k == best.length() && qs < best.off_b)) {
              best.kind = PieceKind::EpsilonPrime;
              best.rel_a = best.rel_b = static_cast<int>(b);
              best.off_a = p;
              best.off_b = qs;
              best.piece = subword_cyclic(r, static_cast<std::size_t>(p), static_cast<std::size_t>(k));
              best.piece_other = subword_cyclic(r, static_cast<std::size_t>(qs), static_cast<std::size_t>(k));
              best.inverse_occurrence = inv;
              found = true;
            }
          }
        } else {
          for (std::int64_t k = n - 1; k >= 1 && !found; --k) {
            const Word U = subword_cyclic(r, static_cast<std::size_t>(p), static_cast<std::size_t>(k));
            const Word Ux = inv ? inverse(U) : U;
            for (const Word& Y : B) {
              if (found) break;
              const Word Yi = inverse(Y);
              for (const Word& Z : B) {
                const Word Up = free_reduce(concat({&Yi, &Ux, &Z}));
                if (Up.empty() || static_cast<std::int64_t>(Up.size()) >= n) continue;
                for (std::int64_t q = 0; q < n; ++q) {
                  if (!arcs_disjoint(p, k, q, static_cast<std::int64_t>(Up.size()), n)) continue;
                  bool eq = true;
                  for (std::size_t t = 0; t < Up.size() && eq; ++t) eq = at(q + static_cast<std::int64_t>(t)) == Up[t];
                  steps::add(Up.size());
                  if (!eq) continue;
                  best.kind = PieceKind::EpsilonPrime;
                  best.rel_a = best.rel_b = static_cast<int>(b);
                  best.off_a = p;
                  best.off_b = q;
                  best.piece = U;
                  best.piece_other = Up;
                  best.Y = Y;
                  best.Z = Z;
                  best.inverse_occurrence = inv;
                  found = true;
                  break;
                }
                if (found) break;
              }
            }
          }
        }
        if (found) out.push_back(std::move(best));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<PieceReport> find_pieces(const RelatorSystem& rs, int eps, PieceKind kind) {
  rs.require_closure("find_pieces");
  if (eps < 0) throw Error("find_pieces: negative eps");
  if (kind == PieceKind::EpsilonPrime) return prime_pieces(rs, eps);
  return eps == 0 ? pieces_eps0(rs) : pieces_eps_general(rs, eps);
}

bool quasi_geodesic_direct(const Word& r, const Rational& lambda, const Rational& c) {
  const std::size_t n = r.size();
  for (std::size_t p = 0; p < n; ++p) {
    Word stack;
    for (std::size_t len = 1; len <= n; ++len) {
      const Letter l = r[(p + len - 1) % n];
      if (!stack.empty() && stack.back() == -l)
        stack.pop_back();
      else
        stack.push_back(l);
      if (Rational(static_cast<long>(len)) > lambda * static_cast<long>(stack.size()) + c) return false;
    }
    steps::add(n);
  }
  return true;
}

ConditionReport check_condition(const RelatorSystem& rs, Variant variant) {
  rs.require_closure("check_condition");
  ConditionReport rep;
  const SCParams& P = rs.params;
  auto add = [&](Violation v) {
    rep.pass = false;
    rep.violations.push_back(std::move(v));
  };
  for (std::size_t b = 0; b < rs.base.size(); ++b) {
    const Word& r = rs.base[b];
    const auto n = static_cast<std::int64_t>(r.size());
    if (n < P.rho)
      add({"1.1", static_cast<int>(b), "length " + std::to_string(n) + " < rho " + std::to_string(P.rho), r});
    // Subwords of a cyclically reduced word of length <= |R| are freely reduced, so the
    // worst case over all subwords is the full length; small relators are also checked directly.
    bool qg = (P.lambda >= 1) || (Rational(n) * (1 - P.lambda) <= P.c);
    if (n <= 512) qg = quasi_geodesic_direct(r, P.lambda, P.c);
    if (!qg) add({"1.2", static_cast<int>(b), "not (lambda,c)-quasi-geodesic", r});
  }
  for (const auto& p : find_pieces(rs, P.eps, PieceKind::Epsilon)) {
    const auto la = static_cast<long>(rs.relators[static_cast<std::size_t>(p.rel_a)].size());
    const auto lb = static_cast<long>(rs.relators[static_cast<std::size_t>(p.rel_b)].size());
    if (Rational(p.length()) >= P.mu * la || Rational(static_cast<long>(p.piece_other.size())) >= P.mu * lb) {
      add({"1.3", p.rel_a,
           "piece of length " + std::to_string(p.length()) + " between relators " + std::to_string(p.rel_a) +
               " and " + std::to_string(p.rel_b) + " not < mu*|R|",
           p.piece});
    }
  }
  if (variant == Variant::CPrime) {
    for (const auto& p : find_pieces(rs, P.eps, PieceKind::EpsilonPrime)) {
      const auto n = static_cast<long>(rs.base[static_cast<std::size_t>(p.rel_a)].size());
      if (Rational(p.length()) >= P.mu * n)
        add({"2.2", p.rel_a,
             "self-piece of length " + std::to_string(p.length()) + " at offsets " + std::to_string(p.off_a) +
                 "," + std::to_string(p.off_b) + " not < mu*|R|",
             p.piece});
    }
  }
  return rep;
}

std::int64_t family_first_exponent(std::int64_t m11, int i) {
  if (i < 1) throw Error("family index starts at 1");
  if (i - 1 >= 62 || m11 > (std::numeric_limits<std::int64_t>::max() >> (i - 1)))
    return std::numeric_limits<std::int64_t>::max();
  return m11 << (i - 1);
}

std::int64_t family_block_count(std::int64_t m11, int i) {
  const std::int64_t m = family_first_exponent(m11, i);
  return m == std::numeric_limits<std::int64_t>::max() ? m : m - 1;
}

std::uint64_t family_relator_length(const RelatorFamilySpec& spec, int i) {
  const std::int64_t m = family_first_exponent(spec.m11, i);
  const std::int64_t j = family_block_count(spec.m11, i);
  if (m == std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  // sum_{t=1..j} (m + t - 1) = j*m + j(j-1)/2
  const BigInt J(j), M(m);
  const BigInt sum = J * M + J * (J - 1) / 2;
  const BigInt len = BigInt(spec.Z.at(static_cast<std::size_t>(i - 1)).size()) + sum * spec.U.size() +
                     BigInt(j > 0 ? j - 1 : 0) * spec.V.size();
  if (len > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(len);
}

Word family_relator(const RelatorFamilySpec& spec, int i) {
  const std::int64_t m = family_first_exponent(spec.m11, i);
  const std::int64_t j = family_block_count(spec.m11, i);
  if (family_relator_length(spec, i) > (1ull << 32)) throw Error("family relator too long to expand");
  Word r = spec.Z.at(static_cast<std::size_t>(i - 1));
  for (std::int64_t t = 1; t <= j; ++t) {
    if (t > 1) r.insert(r.end(), spec.V.begin(), spec.V.end());
    const Word blk = power(spec.U, static_cast<long>(m + t - 1));
    r.insert(r.end(), blk.begin(), blk.end());
  }
  steps::add(r.size());
  return r;
}

FamilyResult generate_relator_family(const RelatorFamilySpec& spec, const SCParams& params) {
  FamilyResult res;
  if (spec.Z.empty() || spec.k == 0) {
    res.system = RelatorSystem::from_words(spec.alphabet, {}, params);
    return res;
  }
  if (spec.k != static_cast<int>(spec.Z.size()))
    throw Error("family: k = " + std::to_string(spec.k) + " but |Z| = " + std::to_string(spec.Z.size()));
  if (spec.m11 < 2) throw Error("family: m11 must be >= 2");
  if (spec.U.empty() || !is_freely_reduced(spec.U) || !is_freely_reduced(spec.V))
    throw Error("family: U and V must be freely reduced and U nontrivial");
  for (const Word& z : spec.Z)
    if (z.empty() || !is_freely_reduced(z)) throw Error("family: each z_i must be freely reduced and nontrivial");
  const Word* others[] = {&spec.V};
  for (const Word* w : others)
    if (!w->empty() && in_same_elementary_free(spec.U, *w))
      throw Error("family: V lies in the elementary subgroup of U: " + spec.alphabet.format(*w));
  for (const Word& z : spec.Z)
    if (in_same_elementary_free(spec.U, z))
      throw Error("family: z lies in the elementary subgroup of U: " + spec.alphabet.format(z));

  std::set<std::int64_t> exps;
  std::int64_t L = static_cast<std::int64_t>(std::max(spec.U.size(), spec.V.size()));
  for (const Word& z : spec.Z) L = std::max<std::int64_t>(L, static_cast<std::int64_t>(z.size()));
  for (int i = 1; i <= spec.k; ++i) {
    const std::int64_t m = family_first_exponent(spec.m11, i);
    const std::int64_t j = family_block_count(spec.m11, i);
    for (std::int64_t t = 1; t <= j; ++t)
      if (!exps.insert(m + t - 1).second)
        throw Error("family: repeated exponent " + std::to_string(m + t - 1));
    Word r = family_relator(spec, i);
    Word core = cyclic_reduce(r);
    if (core.size() != r.size())
      res.validation.push_back({"cyclic", i - 1, "R_" + std::to_string(i) + " not cyclically reduced; core used", r});
    const auto len = static_cast<long>(core.size());
    const std::int64_t mbar = m + j - 1;
    if (params.mu * len < Rational(6 * L * (mbar + 1)))
      res.validation.push_back({"mu|R_i|>=6L(mbar+1)", i - 1,
                                "mu*|R_" + std::to_string(i) + "| = " + format_rational(params.mu * len) + " < " +
                                    std::to_string(6 * L * (mbar + 1)),
                                core});
    if (len < params.rho)
      res.validation.push_back({"1.1", i - 1, "|R_" + std::to_string(i) + "| = " + std::to_string(len) + " < rho", core});
    res.relators.push_back(std::move(core));
  }
  res.system = RelatorSystem::from_words(spec.alphabet, res.relators, params);
  return res;
}

RelatorSystem truncate_to_length(const RelatorSystem& rs, const Rational& bound) {
  RelatorSystem out;
  out.alphabet = rs.alphabet;
  out.params = rs.params;
  for (const Word& w : rs.base)
    if (Rational(static_cast<long>(w.size())) <= bound) out.base.push_back(w);
  out.closed = rs.closed || RelatorSystem::closure_letters(out.base) <= RelatorSystem::closure_letter_limit;
  if (rs.closed) {
    for (const Word& w : rs.relators)
      if (Rational(static_cast<long>(w.size())) <= bound) out.relators.push_back(w);
  } else if (out.closed) {
    out.relators = symmetrize(out.base, out.alphabet);
  }
  steps::add(rs.base.size());
  return out;
}

RelatorSystem truncate_family(const RelatorSystem& rs, std::int64_t n,
                              const std::function<Rational(std::int64_t)>& bound) {
  return truncate_to_length(rs, bound(n));
}

PowerQGConstants power_qg_constants(const Word& w, std::int64_t delta, std::int64_t alphabet_size,
                                    bool cyclically_minimal) {
  if (free_reduce(w).empty()) throw Error("power_qg_constants: trivial word");
  PowerQGConstants out;
  out.alpha = 180 * delta;
  const auto len = static_cast<long>(w.size());
  if (cyclically_minimal && len >= 180 * delta) {
    out.lambda_w = 4;
    out.c_w = 2520 * delta;
    return out;
  }
  const BigInt xa = boost::multiprecision::pow(BigInt(alphabet_size), static_cast<unsigned>(out.alpha));
  out.lambda_w = 4 * xa * len;
  out.c_w = 5 * xa * xa * len * len;
  return out;
}

Rational upsilon(const Word& u, const Rational& lambda_tilde) {
  return Rational(static_cast<long>(u.size())) / (12 * lambda_tilde);
}

}  // namespace scg
