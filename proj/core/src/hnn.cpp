#include "scgroup/hnn.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "scgroup/free_group.hpp"
#include "scgroup/steps.hpp"

namespace scg {

std::string HNNSpec::validate() const {
  if (t <= 0 || !alphabet.contains(t)) return "stable letter not in alphabet";
  for (const Word* w : {&u, &v}) {
    if (w->empty()) return "associated generator is trivial";
    if (!is_cyclically_reduced(*w)) return "associated generator is not cyclically reduced";
    for (Letter l : *w)
      if (letter_gen(l) == letter_gen(t)) return "associated generator contains the stable letter";
    if (free_root(*w).exponent != 1) return "associated generator is a proper power";
  }
  return {};
}

Word TDecomposition::word() const {
  Word w;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) w.push_back(stable[i - 1]);
    w.insert(w.end(), segments[i].begin(), segments[i].end());
  }
  return w;
}

std::optional<long> cyclic_subgroup_power(const Word& w, const Word& u) {
  const Word wr = free_reduce(w);
  if (wr.empty()) return 0L;
  const CyclicCore cu = cyclic_core(free_reduce(u));
  if (cu.core.empty()) return std::nullopt;
  const std::size_t c = cu.conjugator.size();
  const std::size_t k = cu.core.size();
  if (wr.size() < 2 * c + k || (wr.size() - 2 * c) % k != 0) return std::nullopt;
  steps::add(wr.size());
  for (std::size_t i = 0; i < c; ++i)
    if (wr[i] != cu.conjugator[i] || wr[wr.size() - 1 - i] != -cu.conjugator[i]) return std::nullopt;
  const long reps = static_cast<long>((wr.size() - 2 * c) / k);
  const Letter first = wr[c];
  const bool positive = first == cu.core[0];
  for (std::size_t i = 0; i < wr.size() - 2 * c; ++i) {
    const Letter want = positive ? cu.core[i % k] : -cu.core[k - 1 - (i % k)];
    if (wr[c + i] != want) return std::nullopt;
  }
  return positive ? reps : -reps;
}

namespace {

std::unordered_map<int, std::size_t> stable_index(const std::vector<HNNSpec>& tower) {
  std::unordered_map<int, std::size_t> idx;
  for (std::size_t i = 0; i < tower.size(); ++i) idx[letter_gen(tower[i].t)] = i;
  return idx;
}

TDecomposition decompose(const Word& w, const std::unordered_map<int, std::size_t>& idx) {
  TDecomposition d;
  d.segments.emplace_back();
  for (Letter l : w) {
    if (idx.count(letter_gen(l))) {
      d.stable.push_back(l);
      d.segments.emplace_back();
    } else {
      d.segments.back().push_back(l);
    }
  }
  return d;
}

}  // namespace

TDecomposition britton_reduce(const Word& w, const std::vector<HNNSpec>& tower, bool record) {
  const auto idx = stable_index(tower);
  std::vector<RewriteStep> log;
  Word flat;
  std::vector<std::size_t> tpos;
  std::vector<Letter> todo(w.rbegin(), w.rend());
  while (!todo.empty()) {
    const Letter x = todo.back();
    steps::add(1);
    if (!flat.empty() && flat.back() == -x) {
      if (record) log.push_back({StepKind::Free, static_cast<std::int64_t>(flat.size() - 1), {flat.back(), x}, {}, -1});
      if (!tpos.empty() && tpos.back() == flat.size() - 1) tpos.pop_back();
      flat.pop_back();
      todo.pop_back();
      continue;
    }
    auto it = idx.find(letter_gen(x));
    if (it == idx.end()) {
      flat.push_back(x);
      todo.pop_back();
      continue;
    }
    if (!tpos.empty() && flat[tpos.back()] == -x) {
      const HNNSpec& sp = tower[it->second];
      const Word g(flat.begin() + static_cast<std::ptrdiff_t>(tpos.back() + 1), flat.end());
      // t^-1 u^l t -> v^l ; t v^l t^-1 -> u^l
      const bool from_u = x > 0;
      const auto l = cyclic_subgroup_power(g, from_u ? sp.u : sp.v);
      if (l) {
        const Word ins = free_reduce(power(from_u ? sp.v : sp.u, *l));
        if (record) {
          Word removed(flat.begin() + static_cast<std::ptrdiff_t>(tpos.back()), flat.end());
          removed.push_back(x);
          log.push_back({StepKind::Pinch, static_cast<std::int64_t>(tpos.back()), std::move(removed), ins,
                         static_cast<int>(it->second)});
        }
        flat.resize(tpos.back());
        tpos.pop_back();
        todo.pop_back();
        todo.insert(todo.end(), ins.rbegin(), ins.rend());
        continue;
      }
    }
    tpos.push_back(flat.size());
    flat.push_back(x);
    todo.pop_back();
  }
  TDecomposition d = decompose(flat, idx);
  d.log = std::move(log);
  return d;
}

TDecomposition cyclically_t_reduce(const Word& w, const std::vector<HNNSpec>& tower, bool record) {
  const auto idx = stable_index(tower);
  std::vector<RewriteStep> log;
  Word C;
  auto run = [&](const Word& cur) {
    TDecomposition d = britton_reduce(cur, tower, record);
    if (record) log.insert(log.end(), d.log.begin(), d.log.end());
    return d;
  };
  auto rotate_by = [&](Word& W, std::size_t k) {
    if (k == 0 || k >= W.size()) return;
    if (record) log.push_back({StepKind::Rotate, static_cast<std::int64_t>(k), {}, {}, -1});
    C.insert(C.end(), W.begin(), W.begin() + static_cast<std::ptrdiff_t>(k));
    W = rotate(W, k);
    steps::add(W.size());
  };
  Word W = run(w).word();
  while (true) {
    TDecomposition d = decompose(W, idx);
    if (d.theta() == 0) {
      while (W.size() >= 2 && W.front() == -W.back()) {
        rotate_by(W, 1);
        if (record) log.push_back({StepKind::Free, static_cast<std::int64_t>(W.size() - 2), {W[W.size() - 2], W.back()}, {}, -1});
        W.resize(W.size() - 2);
      }
      break;
    }
    std::size_t first = 0;
    while (!idx.count(letter_gen(W[first]))) ++first;
    rotate_by(W, first);
    W = run(W).word();
    const std::size_t before = W.size();
    std::size_t last = W.size();
    for (std::size_t i = W.size(); i-- > 0;)
      if (idx.count(letter_gen(W[i]))) {
        last = i;
        break;
      }
    if (last == W.size()) continue;
    rotate_by(W, last);
    W = run(W).word();
    if (W.size() == before && decompose(W, idx).theta() == d.theta()) {
      // Stable under both readings; normalise to start at a stable letter.
      std::size_t f = 0;
      while (f < W.size() && !idx.count(letter_gen(W[f]))) ++f;
      if (f < W.size()) rotate_by(W, f);
      break;
    }
  }
  TDecomposition out = decompose(W, idx);
  out.conjugator = free_reduce(C);
  out.log = std::move(log);
  return out;
}

bool hnn_is_trivial(const Word& w, const std::vector<HNNSpec>& tower) {
  const TDecomposition d = britton_reduce(w, tower);
  return d.theta() == 0 && d.segments[0].empty();
}

bool valid_pinch(const RewriteStep& s, const std::vector<HNNSpec>& tower) {
  if (s.ref < 0 || s.ref >= static_cast<int>(tower.size()) || s.removed.size() < 2) return false;
  const HNNSpec& sp = tower[static_cast<std::size_t>(s.ref)];
  const Letter a = s.removed.front();
  const Letter b = s.removed.back();
  if (letter_gen(a) != letter_gen(sp.t) || b != -a) return false;
  const Word mid(s.removed.begin() + 1, s.removed.end() - 1);
  const bool from_u = b > 0;
  const auto l = cyclic_subgroup_power(mid, from_u ? sp.u : sp.v);
  return l && s.inserted == free_reduce(power(from_u ? sp.v : sp.u, *l));
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

std::optional<Word> free_conjugator(const Word& a, const Word& b) {
  const CyclicCore ca = cyclic_core(free_reduce(a));
  const CyclicCore cb = cyclic_core(free_reduce(b));
  if (ca.core.size() != cb.core.size()) return std::nullopt;
  std::size_t k = 0;
  if (!ca.core.empty()) {
    const auto off = cyclic_shift_offset(ca.core, cb.core);
    if (!off) return std::nullopt;
    k = *off;
  }
  const Word P(ca.core.begin(), ca.core.begin() + static_cast<std::ptrdiff_t>(k));
  const Word cbi = inverse(cb.conjugator);
  return free_reduce(concat({&ca.conjugator, &P, &cbi}));
}

namespace {

bool verify_conjugator(const Word& x, const Word& y, const Word& T, const std::vector<HNNSpec>& tower) {
  const Word Ti = inverse(T);
  const Word yi = inverse(y);
  return hnn_is_trivial(concat({&Ti, &x, &T, &yi}), tower);
}

ConjugacyAnswer finish(const Word& x, const Word& y, Word T, const std::vector<HNNSpec>& tower, std::string why) {
  ConjugacyAnswer a;
  a.witness = free_reduce(T);
  if (!verify_conjugator(x, y, a.witness, tower)) throw Error("hnn_conjugate: witness failed verification");
  a.verdict = Tri::Yes;
  a.reason = std::move(why);
  return a;
}

}  // namespace

ConjugacyAnswer hnn_conjugate(const Word& x, const Word& y, const HNNSpec& spec, HNNBudget budget) {
  const std::vector<HNNSpec> tower{spec};
  const long B = budget.exponent >= 0 ? budget.exponent
                                      : static_cast<long>(std::max(x.size(), y.size())) + 8;
  const TDecomposition cx = cyclically_t_reduce(x, tower);
  const TDecomposition cy = cyclically_t_reduce(y, tower);
  ConjugacyAnswer no;
  no.verdict = Tri::No;
  if (cx.theta() != cy.theta()) {
    no.reason = "theta mismatch";
    return no;
  }
  const Word X = cx.word();
  const Word Y = cy.word();
  const Word Cyi = inverse(cy.conjugator);

  if (cx.theta() == 0) {
    if (auto T0 = free_conjugator(X, Y)) return finish(x, y, concat({&cx.conjugator, &*T0, &Cyi}), tower, "base");
    // Chain through <u> and <v>: nodes (side, l) with side 0 = u, 1 = v.
    const Word& u = spec.u;
    const Word& v = spec.v;
    const std::size_t ku = cyclic_core(u).core.size();
    const std::size_t kv = cyclic_core(v).core.size();
    using Node = std::pair<int, long>;
    std::map<Node, Word> reach;  // conjugator T with T^-1 X T = node element
    std::queue<Node> q;
    bool cut = false;
    auto elem = [&](const Node& n) { return free_reduce(power(n.first == 0 ? u : v, n.second)); };
    auto try_node = [&](const Node& n, const Word& from_elem, const Word& Tprev) {
      if (n.second == 0) return;
      if (std::labs(n.second) > B) {
        cut = true;
        return;
      }
      if (reach.count(n)) return;
      auto T = free_conjugator(from_elem, elem(n));
      if (!T) return;
      reach[n] = free_reduce(concat(Tprev, *T));
      q.push(n);
    };
    for (int side = 0; side < 2; ++side) {
      const std::size_t k = side == 0 ? ku : kv;
      if (X.size() % k != 0) continue;
      const long l = static_cast<long>(X.size() / k);
      try_node({side, l}, X, {});
      try_node({side, -l}, X, {});
    }
    while (!q.empty()) {
      const Node n = q.front();
      q.pop();
      const Word T = reach[n];
      const Word e = elem(n);
      if (auto Tend = free_conjugator(e, Y)) {
        return finish(x, y, concat({&cx.conjugator, &T, &*Tend, &Cyi}), tower, "chain through associated subgroups");
      }
      // t^-1 u^l t = v^l
      const Node across{1 - n.first, n.second};
      if (!reach.count(across) && std::labs(across.second) <= B) {
        const Word step{n.first == 0 ? spec.t : -spec.t};
        reach[across] = free_reduce(concat(T, step));
        q.push(across);
      }
      const std::size_t kn = n.first == 0 ? ku : kv;
      const std::size_t ko = n.first == 0 ? kv : ku;
      if ((static_cast<std::size_t>(std::labs(n.second)) * kn) % ko == 0) {
        const long l2 = static_cast<long>(static_cast<std::size_t>(std::labs(n.second)) * kn / ko);
        try_node({1 - n.first, l2}, e, T);
        try_node({1 - n.first, -l2}, e, T);
      }
    }
    if (cut) {
      ConjugacyAnswer u_;
      u_.verdict = Tri::Unknown;
      u_.reason = "exponent budget exhausted";
      return u_;
    }
    no.reason = "no chain through associated subgroups";
    return no;
  }

  // theta > 0: rotate x' to end in a stable letter, then c y* c^-1 = x'' over cyclic permutations y*.
  const Word X2 = rotate(X, 1);
  const Word Cx2 = concat(cx.conjugator, Word{X[0]});
  const Word X2i = inverse(X2);
  auto signature = [&](const Word& w) {
    Word s;
    for (Letter l : w)
      if (letter_gen(l) == letter_gen(spec.t)) s.push_back(l);
    return s;
  };
  const Word sx = signature(X2);
  bool any_shape = false;
  for (std::size_t p = 0; p < Y.size(); ++p) {
    if (letter_gen(Y[p]) != letter_gen(spec.t)) continue;
    const std::size_t k = (p + 1) % Y.size();
    const Word ystar = rotate(Y, k);
    if (signature(ystar) != sx) continue;
    any_shape = true;
    const Word R(Y.begin(), Y.begin() + static_cast<std::ptrdiff_t>(k));
    const Word Ri = inverse(R);
    for (long l = 0; l <= B; ++l) {
      for (int side = 0; side < 2; ++side) {
        for (int sgn : {1, -1}) {
          if (l == 0 && (side == 1 || sgn == -1)) continue;
          const Word c = free_reduce(power(side == 0 ? spec.u : spec.v, sgn * l));
          const Word ci = inverse(c);
          if (hnn_is_trivial(concat({&c, &ystar, &ci, &X2i}), tower))
            return finish(x, y, concat({&Cx2, &c, &Ri, &Cyi}), tower, "cyclic permutation conjugated by associated element");
        }
      }
    }
  }
  if (!any_shape) {
    no.reason = "stable-letter signatures differ";
    return no;
  }
  ConjugacyAnswer unk;
  unk.verdict = Tri::Unknown;
  unk.reason = "exponent budget exhausted";
  return unk;
}

}  // namespace scg
