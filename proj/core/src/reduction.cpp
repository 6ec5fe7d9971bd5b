#include "scgroup/reduction.hpp"

#include <algorithm>
#include <set>

#include "scgroup/free_group.hpp"
#include "scgroup/steps.hpp"

namespace scg {

std::string ReductionParams::validate() const {
  if (eta <= 0 || eta >= 1) return "eta must lie in (0,1)";
  if (!(2 * eta - Rational(3, 2) > 3 * sc.lambda * (1 - eta)))
    return "2*eta - 3/2 > 3*lambda*(1-eta) fails for eta = " + format_rational(eta);
  return sc.range_error();
}

BlockPartition block_partition(std::int64_t n, const Rational& eta) {
  BlockPartition p;
  if (n <= 0) return p;
  const Rational one_minus = 1 - eta;
  const std::int64_t w = std::max<std::int64_t>(1, floor_i64(one_minus * n));
  const std::int64_t cap = ceil_i64(Rational(1) / one_minus);
  const std::int64_t s = std::max<std::int64_t>(1, std::min<std::int64_t>(cap, n / w));
  p.widths.assign(static_cast<std::size_t>(s), w);
  p.widths.back() = n - (s - 1) * w;
  const std::int64_t lo = floor_i64(Rational(1) / one_minus) - 1;
  bool ok = lo < s && s <= cap;
  for (std::int64_t j = 1; j <= s && ok; ++j) {
    const std::int64_t prev = p.widths[static_cast<std::size_t>((j + s - 2) % s)];
    const std::int64_t pair = prev + p.widths[static_cast<std::size_t>(j - 1)];
    const std::int64_t hat = n - pair;
    ok = Rational(2 * n) * one_minus <= pair && Rational(pair) <= 3 * one_minus * n &&
         (2 * eta - 1) * n <= hat && Rational(hat) <= (3 * eta - 1) * n;
  }
  p.paper_bounds_ok = ok;
  return p;
}

namespace {

std::int64_t block_start(const BlockPartition& p, std::int64_t j) {  // 1-based
  std::int64_t s = 0;
  for (std::int64_t t = 1; t < j; ++t) s += p.widths[static_cast<std::size_t>(t - 1)];
  return s;
}

std::int64_t wrap_index(std::int64_t i, std::int64_t n) { return ((i % n) + n) % n; }

struct CoreSpec {
  Word pattern;
  Word replacement;
};

CoreSpec make_core(const Word& r, const BlockPartition& p, std::int64_t j, int k1, int k2) {
  const Word hat = deleted_block_word(r, p, j);
  const Word pair = block_pair_word(r, p, j);
  CoreSpec c;
  c.pattern.assign(hat.begin() + k1, hat.end() - k2);
  Word pre(hat.begin(), hat.begin() + k1);
  Word suf(hat.end() - k2, hat.end());
  const Word a = inverse(pre), b = inverse(pair), d = inverse(suf);
  c.replacement = free_reduce(concat({&a, &b, &d}));
  return c;
}

Rational ball_size(std::size_t gens, int radius) {
  if (gens == 0) return 1;
  Rational total = 1, layer = 2 * static_cast<long>(gens);
  for (int k = 1; k <= radius; ++k) {
    total += layer;
    layer *= 2 * static_cast<long>(gens) - 1;
  }
  return total;
}

}  // namespace

Word deleted_block_word(const Word& r, const BlockPartition& p, std::int64_t j) {
  const std::int64_t s = p.blocks();
  const auto n = static_cast<std::int64_t>(r.size());
  if (s < 3) return {};
  const std::int64_t prev = (j + s - 2) % s + 1;
  const std::int64_t pair_len = p.widths[static_cast<std::size_t>(prev - 1)] + p.widths[static_cast<std::size_t>(j - 1)];
  const std::int64_t start = block_start(p, j) + p.widths[static_cast<std::size_t>(j - 1)];
  return subword_cyclic(r, static_cast<std::size_t>(wrap_index(start, n)), static_cast<std::size_t>(n - pair_len));
}

Word block_pair_word(const Word& r, const BlockPartition& p, std::int64_t j) {
  const std::int64_t s = p.blocks();
  const auto n = static_cast<std::int64_t>(r.size());
  const std::int64_t prev = (j + s - 2) % s + 1;
  const std::int64_t start = block_start(p, prev);
  const std::int64_t len = p.widths[static_cast<std::size_t>(prev - 1)] + p.widths[static_cast<std::size_t>(j - 1)];
  return subword_cyclic(r, static_cast<std::size_t>(wrap_index(start, n)), static_cast<std::size_t>(len));
}

Rational truncation_bound(const SCParams& sc, std::int64_t n) {
  return (sc.lambda * (n + 2 * sc.eps) + sc.c) / (1 - 23 * sc.mu);
}

PatternSets build_pattern_sets(const RelatorSystem& rs, std::int64_t n, const ReductionParams& rp,
                               const PatternBudget& budget) {
  PatternSets ps = build_pattern_sets_bounded(rs, truncation_bound(rp.sc, n), rp, budget);
  ps.n = n;
  return ps;
}

PatternSets build_pattern_sets_bounded(const RelatorSystem& rs, const Rational& bound, const ReductionParams& rp,
                                       const PatternBudget& budget) {
  PatternSets ps;
  ps.bound = bound;
  ps.system = truncate_to_length(rs, bound);
  ps.trim = 3 * rp.sc.eps;
  ps.L_n = ps.system.max_length();
  ps.l_n = ps.system.min_length();
  ps.Ltilde = ceil_i64(rp.sc.lambda * (rp.eta * ps.L_n + 2 * rp.sc.eps) + rp.sc.c);
  const Rational bs = ball_size(rs.alphabet.size(), ps.trim);
  // Budget estimates count every rotation of R and R^-1.
  std::uint64_t dict_letters = 0;
  for (const Word& r : ps.system.base) {
    const auto n = static_cast<std::int64_t>(r.size());
    const BlockPartition p = block_partition(n, rp.eta);
    ps.partitions_ok = ps.partitions_ok && p.paper_bounds_ok;
    if (p.blocks() < 3) continue;
    for (std::int64_t j = 1; j <= p.blocks(); ++j) {
      const std::int64_t hat = n - p.widths[static_cast<std::size_t>((j + p.blocks() - 2) % p.blocks())] -
                               p.widths[static_cast<std::size_t>(j - 1)];
      ps.e0_letters += floor_big(bs * bs * (hat + 2 * ps.trim) * (2 * n));
      for (int k1 = 0; k1 <= ps.trim; ++k1)
        for (int k2 = 0; k2 <= ps.trim; ++k2)
          if (k1 + k2 < hat) dict_letters += static_cast<std::uint64_t>(hat - k1 - k2) * static_cast<std::uint64_t>(2 * n);
    }
  }
  if (ps.e0_letters > budget.max_e0_letters && !budget.allow_index)
    throw Error("pattern sets: E0 needs about " + ps.e0_letters.str() + " letters, over budget");
  if (ps.system.closed)
    for (const Word& r : ps.system.relators) ps.partitions.push_back(block_partition(static_cast<std::int64_t>(r.size()), rp.eta));

  if (!ps.system.closed || dict_letters > budget.max_dictionary_letters) {
    if (!budget.allow_index)
      throw Error("pattern sets: dictionary needs " + std::to_string(dict_letters) + " letters, over budget");
    ps.use_index = true;
    for (std::size_t bi = 0; bi < ps.system.base.size(); ++bi) {
      const Word& r = ps.system.base[bi];
      const auto n = static_cast<std::int64_t>(r.size());
      const BlockPartition p = block_partition(n, rp.eta);
      if (p.blocks() < 3) continue;
      std::vector<std::int64_t> lengths;
      for (std::int64_t j = 1; j <= p.blocks(); ++j) {
        const std::int64_t hat = n - p.widths[static_cast<std::size_t>((j + p.blocks() - 2) % p.blocks())] -
                                 p.widths[static_cast<std::size_t>(j - 1)];
        for (int k1 = 0; k1 <= ps.trim; ++k1)
          for (int k2 = 0; k2 <= ps.trim; ++k2)
            if (k1 + k2 < hat) lengths.push_back(hat - k1 - k2);
      }
      std::sort(lengths.begin(), lengths.end());
      lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
      for (bool inv : {false, true}) {
        IndexedRelator ir;
        ir.base = static_cast<int>(bi);
        ir.inverted = inv;
        ir.word = inv ? inverse(r) : r;
        ir.partition = p;
        ir.lengths = lengths;
        Word y = ir.word;
        y.insert(y.end(), ir.word.begin(), ir.word.end() - 1);
        std::reverse(y.begin(), y.end());
        ir.reversed = std::make_shared<const SuffixAutomaton>(y);
        ps.indexed.push_back(std::move(ir));
      }
    }
    return ps;
  }
  for (std::size_t ri = 0; ri < ps.system.relators.size(); ++ri) {
    const Word& r = ps.system.relators[ri];
    const BlockPartition& p = ps.partitions[ri];
    if (p.blocks() < 3) continue;
    for (std::int64_t j = 1; j <= p.blocks(); ++j) {
      const std::int64_t hat = static_cast<std::int64_t>(deleted_block_word(r, p, j).size());
      for (int k1 = 0; k1 <= ps.trim; ++k1) {
        for (int k2 = 0; k2 <= ps.trim; ++k2) {
          if (k1 + k2 >= hat) continue;
          CoreSpec c = make_core(r, p, j, k1, k2);
          DictEntry e{static_cast<int>(ri), static_cast<int>(j), k1, k2, std::move(c.pattern), std::move(c.replacement)};
          ps.automaton.add(e.pattern, static_cast<int>(ps.entries.size()));
          steps::add(e.pattern.size());
          ps.entries.push_back(std::move(e));
        }
      }
    }
  }
  ps.automaton.build();
  return ps;
}

std::vector<Word> enumerate_e0_full(const PatternSets& ps) {
  ps.system.require_closure("enumerate_e0_full");
  std::set<Word> out;
  const auto T = ball(ps.system.alphabet, ps.trim);
  for (std::size_t ri = 0; ri < ps.system.relators.size(); ++ri) {
    const BlockPartition& p = ps.partitions[ri];
    if (p.blocks() < 3) continue;
    for (std::int64_t j = 1; j <= p.blocks(); ++j) {
      const Word hat = deleted_block_word(ps.system.relators[ri], p, j);
      for (const Word& t1 : T) {
        const Word t1i = inverse(t1);
        for (const Word& t2 : T) {
          Word e = free_reduce(concat({&t1i, &hat, &t2}));
          if (!e.empty()) out.insert(std::move(e));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

namespace {

bool better(const EtaMatch& a, const std::optional<EtaMatch>& b, int ia, int ib) {
  if (!b) return true;
  if (a.start != b->start) return a.start < b->start;
  if (a.length != b->length) return a.length > b->length;
  return ia < ib;
}

// Per indexed word, matching statistics from the right give the longest cyclic subword
// starting at each position; the largest admitted length below it is the match there.
std::optional<EtaMatch> indexed_best(const Letter* text, std::int64_t len, std::int64_t start_limit,
                                     std::int64_t max_len, const PatternSets& ps) {
  std::optional<EtaMatch> best;
  int best_idx = -1;
  for (std::size_t ii = 0; ii < ps.indexed.size(); ++ii) {
    const IndexedRelator& ir = ps.indexed[ii];
    const auto m = static_cast<std::int64_t>(ir.word.size());
    const SuffixAutomaton& sam = *ir.reversed;
    std::int64_t L = 0, at = -1, alen = 0;
    int state = 0, astate = 0;
    for (std::int64_t s = len - 1; s >= 0; --s) {
      sam.step(text[s], L, state);
      if (s >= start_limit) continue;
      const std::int64_t cap = std::min({L, m, max_len});
      if (cap < ir.lengths.front()) continue;
      at = s;
      alen = *(std::upper_bound(ir.lengths.begin(), ir.lengths.end(), cap) - 1);
      astate = state;
    }
    steps::add(static_cast<std::uint64_t>(len));
    if (at < 0) continue;
    const std::int64_t q = wrap_index(2 * m - 2 - sam.first_end(astate), m);
    const BlockPartition& p = ir.partition;
    const std::int64_t nb = p.blocks();
    EtaMatch e{at, alen, -1, -1, 0, 0, 0, static_cast<int>(ii), 0};
    for (std::int64_t j = 1; j <= nb && e.block == 0; ++j) {
      const std::int64_t w = p.widths[static_cast<std::size_t>(j - 1)];
      const std::int64_t hat = m - p.widths[static_cast<std::size_t>((j + nb - 2) % nb)] - w;
      for (int k1 = 0; k1 <= ps.trim; ++k1) {
        const std::int64_t k2 = hat - k1 - alen;
        if (k2 < 0 || k2 > ps.trim) continue;
        e.block = static_cast<int>(j);
        e.k1 = k1;
        e.k2 = static_cast<int>(k2);
        e.offset = wrap_index(q - block_start(p, j) - w - k1, m);
        break;
      }
    }
    if (better(e, best, static_cast<int>(ii), best_idx)) {
      best = e;
      best_idx = static_cast<int>(ii);
    }
  }
  return best;
}

std::optional<EtaMatch> search(const Letter* text, std::int64_t len, std::int64_t start_limit, std::int64_t max_len,
                               const PatternSets& ps) {
  if (ps.use_index) return indexed_best(text, len, start_limit, max_len, ps);
  auto m = ps.automaton.find_best(text, len, start_limit, max_len);
  if (!m) return std::nullopt;
  const DictEntry& e = ps.entries[static_cast<std::size_t>(m->id)];
  return EtaMatch{m->start, m->length, m->id, e.relator, e.block, e.k1, e.k2};
}

Word replacement_for(const EtaMatch& m, const PatternSets& ps) {
  if (m.entry >= 0) return ps.entries[static_cast<std::size_t>(m.entry)].replacement;
  const IndexedRelator& ir = ps.indexed[static_cast<std::size_t>(m.indexed)];
  const Word r = rotate(ir.word, static_cast<std::size_t>(m.offset));
  return make_core(r, ir.partition, m.block, m.k1, m.k2).replacement;
}

Word cyclic_text(const Word& w, std::int64_t max_pattern) {
  Word t = w;
  const auto n = static_cast<std::int64_t>(w.size());
  const std::int64_t extra = std::min(max_pattern, n) - 1;
  for (std::int64_t i = 0; i < extra; ++i) t.push_back(w[static_cast<std::size_t>(i)]);
  return t;
}

std::int64_t max_pattern_length(const PatternSets& ps) {
  if (!ps.use_index) return ps.automaton.max_pattern_length();
  std::int64_t m = 0;
  for (const IndexedRelator& ir : ps.indexed) m = std::max(m, ir.lengths.back());
  return m;
}

bool no_patterns(const PatternSets& ps) { return ps.use_index ? ps.indexed.empty() : ps.automaton.empty(); }

}  // namespace

std::optional<EtaMatch> find_eta_subword(const Word& w, const PatternSets& ps, bool cyclic) {
  const auto n = static_cast<std::int64_t>(w.size());
  if (n == 0) return std::nullopt;
  if (!cyclic) return search(w.data(), n, n, n, ps);
  const Word t = cyclic_text(w, max_pattern_length(ps));
  return search(t.data(), static_cast<std::int64_t>(t.size()), n, n, ps);
}

std::optional<EtaMatch> detect_eta_arc_direct(const Word& w, const RelatorSystem& rs, int eps0, const Rational& eta,
                                              bool cyclic) {
  rs.require_closure("detect_eta_arc_direct");
  const auto n = static_cast<std::int64_t>(w.size());
  if (n == 0) return std::nullopt;
  for (std::size_t ri = 0; ri < rs.relators.size(); ++ri) {
    const Word& r = rs.relators[ri];
    const BlockPartition p = block_partition(static_cast<std::int64_t>(r.size()), eta);
    if (p.blocks() < 3) continue;
    for (std::int64_t j = 1; j <= p.blocks(); ++j) {
      const Word hat = deleted_block_word(r, p, j);
      const auto h = static_cast<std::int64_t>(hat.size());
      for (int k1 = 0; k1 <= eps0; ++k1) {
        for (int k2 = 0; k2 <= eps0; ++k2) {
          const std::int64_t m = h - k1 - k2;
          if (m <= 0 || m > n) continue;
          const std::int64_t starts = cyclic ? n : n - m + 1;
          for (std::int64_t s = 0; s < starts; ++s) {
            bool eq = true;
            for (std::int64_t q = 0; q < m && eq; ++q)
              eq = w[static_cast<std::size_t>((s + q) % n)] == hat[static_cast<std::size_t>(k1 + q)];
            if (eq) return EtaMatch{s, m, -1, static_cast<int>(ri), static_cast<int>(j), k1, k2};
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Position bookkeeping for erasing [x, y): points inside are dropped, arc ends clamp.
std::int64_t clamp_after_erase(std::int64_t p, std::int64_t x, std::int64_t y) {
  if (p <= x) return p;
  if (p >= y) return p - (y - x);
  return x;
}

struct Engine {
  const PatternSets& ps;
  const BaseGroup& base;
  bool rec;
  Word c;
  std::vector<std::int64_t> pts;
  std::vector<RewriteStep> log;
  ReductionReport rep;
  std::int64_t arc0 = 0, arc1 = 0;

  std::int64_t n() const { return static_cast<std::int64_t>(c.size()); }

  void drop_points_erase(std::int64_t x, std::int64_t y) {
    std::vector<std::int64_t> keep;
    keep.reserve(pts.size());
    for (std::int64_t p : pts) {
      if (p > x && p < y) continue;
      keep.push_back(p >= y ? p - (y - x) : p);
    }
    pts.swap(keep);
  }

  void do_rotate(std::int64_t k) {
    const std::int64_t len = n();
    if (len == 0) return;
    k = wrap_index(k, len);
    if (k == 0) return;
    if (rec) log.push_back({StepKind::Rotate, k, {}, {}, -1});
    std::rotate(c.begin(), c.begin() + k, c.end());
    for (std::int64_t& p : pts) p = wrap_index(p - k, len);
    steps::add(static_cast<std::uint64_t>(len));
  }

  // Cascading cancellation at the junction before index j.
  void cascade(std::int64_t j) {
    std::int64_t k = 0;
    const std::int64_t len = n();
    while (j - 1 - k >= 0 && j + k < len && c[static_cast<std::size_t>(j - 1 - k)] == -c[static_cast<std::size_t>(j + k)]) ++k;
    steps::add(static_cast<std::uint64_t>(k + 1));
    if (k == 0) return;
    if (rec)
      for (std::int64_t i = 0; i < k; ++i)
        log.push_back({StepKind::Free, j - 1 - i,
                       {c[static_cast<std::size_t>(j - 1 - i)], c[static_cast<std::size_t>(j + i)]}, {}, -1});
    c.erase(c.begin() + (j - k), c.begin() + (j + k));
    drop_points_erase(j - k, j + k);
    arc0 = clamp_after_erase(arc0, j - k, j + k);
    arc1 = clamp_after_erase(arc1, j - k, j + k);
  }

  void wrap_cascade() {
    const std::int64_t len = n();
    std::int64_t k = 0;
    while (2 * (k + 1) <= len && c[static_cast<std::size_t>(k)] == -c[static_cast<std::size_t>(len - 1 - k)]) ++k;
    steps::add(static_cast<std::uint64_t>(k + 1));
    if (k == 0) return;
    if (rec) {
      log.push_back({StepKind::Rotate, len - k, {}, {}, -1});
      for (std::int64_t i = 0; i < k; ++i)
        log.push_back({StepKind::Free, k - 1 - i,
                       {c[static_cast<std::size_t>(len - 1 - i)], c[static_cast<std::size_t>(i)]}, {}, -1});
    }
    Word rest(c.begin() + k, c.end() - k);
    c.swap(rest);
    std::vector<std::int64_t> keep;
    for (std::int64_t p : pts)
      if (p >= k && p <= len - k) keep.push_back(p - k);
    pts.swap(keep);
    auto cl = [&](std::int64_t p) { return p < k ? 0 : (p > len - k ? len - 2 * k : p - k); };
    arc0 = cl(arc0);
    arc1 = cl(arc1);
  }

  void free_step0(const Word& w) {
    Word st;
    st.reserve(w.size());
    for (Letter l : w) {
      if (!st.empty() && st.back() == -l) {
        if (rec) log.push_back({StepKind::Free, static_cast<std::int64_t>(st.size() - 1), {st.back(), l}, {}, -1});
        st.pop_back();
      } else {
        st.push_back(l);
      }
    }
    steps::add(w.size());
    c.swap(st);
    wrap_cascade();
  }

  std::vector<int> stable_of;  // generator -> tower index, or -1
  std::int64_t stable_count = 0;

  int stable_index(Letter l) const {
    const auto g = static_cast<std::size_t>(letter_gen(l));
    return g < stable_of.size() ? stable_of[g] : -1;
  }
  std::int64_t count_stable(const Word& w) const {
    std::int64_t k = 0;
    for (Letter l : w) k += stable_index(l) >= 0;
    return k;
  }

  // Replaces c[s, s+len) (no wrap) and maps points and the marked arc through the splice.
  void splice(std::int64_t s, std::int64_t len, const Word& ins, StepKind kind, int ref) {
    if (rec) log.push_back({kind, s, Word(c.begin() + s, c.begin() + s + len), ins, ref});
    if (!stable_of.empty()) stable_count += count_stable(ins) - count_stable(Word(c.begin() + s, c.begin() + s + len));
    c.erase(c.begin() + s, c.begin() + s + len);
    c.insert(c.begin() + s, ins.begin(), ins.end());
    steps::add(static_cast<std::uint64_t>(len) + ins.size());
    const std::int64_t delta = static_cast<std::int64_t>(ins.size()) - len;
    std::vector<std::int64_t> keep;
    keep.reserve(pts.size());
    for (std::int64_t p : pts) {
      if (p > s && p < s + len) continue;
      keep.push_back(p >= s + len ? p + delta : p);
    }
    pts.swap(keep);
    auto mp = [&](std::int64_t p, std::int64_t inside) { return p <= s ? p : (p >= s + len ? p + delta : inside); };
    arc0 = mp(arc0, s);
    arc1 = mp(arc1, s + static_cast<std::int64_t>(ins.size()));
  }

  void smooth_junctions(std::int64_t s, std::int64_t ins_len) {
    // Right junction first so the left index stays valid.
    cascade(s + ins_len);
    cascade(s);
    wrap_cascade();
  }

  // Pinches among the stable letters in and next to the marked arc; repeats until none apply.
  void local_pinches() {
    while (stable_count >= 2 && n() > 0) {
      const std::int64_t len = n();
      std::vector<std::int64_t> S;
      std::int64_t p = arc0 - 1;
      for (std::int64_t k = 0; k < len; ++k, --p)
        if (stable_index(c[static_cast<std::size_t>(wrap_index(p, len))]) >= 0) {
          S.push_back(wrap_index(p, len));
          break;
        }
      for (std::int64_t q = std::max<std::int64_t>(arc0, 0); q < std::min(arc1, len); ++q)
        if (stable_index(c[static_cast<std::size_t>(q)]) >= 0) S.push_back(q);
      p = arc1;
      for (std::int64_t k = 0; k < len; ++k, ++p)
        if (stable_index(c[static_cast<std::size_t>(wrap_index(p, len))]) >= 0) {
          S.push_back(wrap_index(p, len));
          break;
        }
      steps::add(static_cast<std::uint64_t>(std::max<std::int64_t>(0, arc1 - arc0)) + S.size());
      bool done = false;
      for (std::size_t i = 0; i + 1 < S.size() && !done; ++i) {
        const std::int64_t a = S[i], b = S[i + 1];
        if (a == b) continue;
        const Letter la = c[static_cast<std::size_t>(a)], lb = c[static_cast<std::size_t>(b)];
        if (lb != -la) continue;
        const int ti = stable_index(la);
        const HNNSpec& sp = base.tower[static_cast<std::size_t>(ti)];
        const std::int64_t seg = wrap_index(b - a, len) - 1;
        const Word g = subword_cyclic(c, static_cast<std::size_t>(wrap_index(a + 1, len)), static_cast<std::size_t>(seg));
        const bool from_u = lb > 0;  // t^-1 u^l t
        const auto l = cyclic_subgroup_power(g, from_u ? sp.u : sp.v);
        if (!l) continue;
        const Word ins = free_reduce(power(from_u ? sp.v : sp.u, *l));
        std::int64_t s0 = a;
        if (a + seg + 2 > len) {
          // Region wraps: rotate it to the front and mark the whole circle for rescanning.
          do_rotate(a);
          s0 = 0;
          arc0 = 0;
          arc1 = len;
        }
        const std::int64_t lo = std::min(arc0, s0), hi = std::max(arc1, s0 + seg + 2);
        arc0 = lo;
        arc1 = hi;
        splice(s0, seg + 2, ins, StepKind::Pinch, ti);
        smooth_junctions(s0, static_cast<std::int64_t>(ins.size()));
        done = true;
      }
      if (!done) break;
    }
  }

  void reset_points() {
    pts.clear();
    const std::int64_t L = std::max<std::int64_t>(1, ps.Ltilde);
    for (std::int64_t p = 0; p < n(); p += L) pts.push_back(p);
  }

  // Applies the match at circle position s. Returns false if the guard rejected it.
  bool apply(std::int64_t s, const EtaMatch& m) {
    const Word ins = replacement_for(m, ps);
    if (static_cast<std::int64_t>(ins.size()) >= m.length) {
      ++rep.guard_violations;
      return false;
    }
    if (s + m.length > n()) {
      do_rotate(s);
      s = 0;
    }
    const std::int64_t len = m.length;
    arc0 = s;
    arc1 = s + len;
    splice(s, len, ins, StepKind::Relator, m.relator);
    smooth_junctions(s, static_cast<std::int64_t>(ins.size()));
    ++rep.replacements;
    rep.ratios.push_back(static_cast<double>(arc1 - arc0) / static_cast<double>(len));
    if (!stable_of.empty()) local_pinches();
    const std::int64_t L = std::max<std::int64_t>(1, ps.Ltilde);
    const std::int64_t len_now = n();
    if (len_now == 0) return true;
    for (std::int64_t p = arc0; p < arc1; p += L) pts.push_back(wrap_index(p, len_now));
    pts.push_back(wrap_index(arc1, len_now));
    return true;
  }

  void run(const Word& w) {
    if (base.free()) {
      free_step0(w);
    } else {
      TDecomposition d = cyclically_t_reduce(w, base.tower, rec);
      if (rec) log.insert(log.end(), d.log.begin(), d.log.end());
      c = d.word();
      for (std::size_t i = 0; i < base.tower.size(); ++i) {
        const auto g = static_cast<std::size_t>(letter_gen(base.tower[i].t));
        if (stable_of.size() <= g) stable_of.resize(g + 1, -1);
        stable_of[g] = static_cast<int>(i);
      }
      stable_count = count_stable(c);
    }
    if (no_patterns(ps)) return;
    const std::int64_t L = std::max<std::int64_t>(1, ps.Ltilde);
    const std::int64_t maxpat = max_pattern_length(ps);
    reset_points();
    Word text;
    while (n() > 0) {
      const std::int64_t len = n();
      if (len <= 2 * L) {
        text = cyclic_text(c, maxpat);
        ++rep.windows;
        auto m = search(text.data(), static_cast<std::int64_t>(text.size()), len, len, ps);
        if (!m || !apply(m->start, *m)) break;
        continue;
      }
      if (pts.empty()) break;
      const std::int64_t P = pts.back();
      text.resize(static_cast<std::size_t>(2 * L));
      for (std::int64_t i = 0; i < 2 * L; ++i) text[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(wrap_index(P - L + i, len))];
      ++rep.windows;
      auto m = search(text.data(), 2 * L, 2 * L, len, ps);
      if (!m) {
        pts.pop_back();
        continue;
      }
      if (!apply(wrap_index(P - L + m->start, len), *m)) pts.pop_back();
    }
  }
};

}  // namespace

ReductionReport cyclic_reduce_lceh(const Word& w, const PatternSets& ps, const BaseGroup& base,
                                   const ReductionOptions& opt) {
  steps::Meter meter;
  Engine e{ps, base, opt.record, {}, {}, {}, {}, 0, 0, {}, 0};
  e.run(w);
  ReductionReport r = std::move(e.rep);
  r.input = w;
  r.output = std::move(e.c);
  r.recorded = opt.record;
  if (opt.record) {
    r.certificate.input = w;
    r.certificate.steps = std::move(e.log);
  }
  for (double x : r.ratios) r.lambda0 = std::max(r.lambda0, x);
  r.steps = meter.elapsed();
  return r;
}

CyclicWord smoothing(const CyclicWord& s, std::vector<std::int64_t> breakpoints, const BaseGroup& base) {
  Word c = s.linear();
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  // Process junctions right to left so earlier indices stay valid.
  for (auto it = breakpoints.rbegin(); it != breakpoints.rend(); ++it) {
    const std::int64_t j = *it;
    const auto len = static_cast<std::int64_t>(c.size());
    if (len == 0) break;
    if (j <= 0 || j >= len) {
      std::int64_t k = 0;
      while (2 * (k + 1) <= len && c[static_cast<std::size_t>(k)] == -c[static_cast<std::size_t>(len - 1 - k)]) ++k;
      if (k > 0) c = Word(c.begin() + k, c.end() - k);
      continue;
    }
    std::int64_t k = 0;
    while (j - 1 - k >= 0 && j + k < len && c[static_cast<std::size_t>(j - 1 - k)] == -c[static_cast<std::size_t>(j + k)]) ++k;
    steps::add(static_cast<std::uint64_t>(k + 1));
    if (k > 0) {
      c.erase(c.begin() + (j - k), c.begin() + (j + k));
      // A cascade that reaches an end continues across the wrap point.
      if (j - k == 0 || j + k >= len) {
        const auto l2 = static_cast<std::int64_t>(c.size());
        std::int64_t w = 0;
        while (2 * (w + 1) <= l2 && c[static_cast<std::size_t>(w)] == -c[static_cast<std::size_t>(l2 - 1 - w)]) ++w;
        if (w > 0) c = Word(c.begin() + w, c.end() - w);
      }
    }
  }
  if (!base.free()) c = cyclically_t_reduce(c, base.tower).word();
  return CyclicWord(std::move(c));
}

ReplayRules replay_rules(const RelatorSystem& rs, const BaseGroup& base) {
  auto sys = std::make_shared<RelatorSystem>(rs);
  ReplayRules rules;
  rules.relator = [sys](const RewriteStep& s) {
    const Word ii = inverse(s.inserted);
    const Word core = cyclic_reduce(free_reduce(concat(s.removed, ii)));
    return !core.empty() && sys->is_symmetrized(core);
  };
  auto tower = std::make_shared<std::vector<HNNSpec>>(base.tower);
  rules.pinch = [tower](const RewriteStep& s) { return valid_pinch(s, *tower); };
  return rules;
}

QuotientSolver::QuotientSolver(RelatorSystem rs, ReductionParams rp, BaseGroup base, PatternBudget budget)
    : rs_(std::move(rs)), rp_(std::move(rp)), base_(std::move(base)), budget_(std::move(budget)) {
  for (const Word& r : rs_.base) lengths_.push_back(static_cast<std::int64_t>(r.size()));
  std::sort(lengths_.begin(), lengths_.end());
  lengths_.erase(std::unique(lengths_.begin(), lengths_.end()), lengths_.end());
}

const PatternSets& QuotientSolver::patterns_for(std::int64_t n) {
  auto k = key_of_n_.find(n);
  if (k == key_of_n_.end()) {
    const Rational bound = truncation_bound(rp_.sc, n);
    std::int64_t key = -1;
    for (std::int64_t l : lengths_)
      if (Rational(l) <= bound) key = l;
    k = key_of_n_.emplace(n, key).first;
  }
  const std::int64_t key = k->second;
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto ps = std::make_unique<PatternSets>(build_pattern_sets_bounded(rs_, Rational(std::max<std::int64_t>(key, 0)), rp_, budget_));
    ps->n = n;
    it = cache_.emplace(key, std::move(ps)).first;
  }
  return *it->second;
}

ReductionReport QuotientSolver::reduce(const Word& w, std::int64_t n, bool certify) {
  return cyclic_reduce_lceh(w, patterns_for(n), base_, ReductionOptions{certify});
}

WPAnswer QuotientSolver::solve(const Word& w, bool certify) {
  WPAnswer a;
  a.report = reduce(w, static_cast<std::int64_t>(w.size()), certify);
  a.trivial = a.report.output.empty();
  if (!a.trivial) a.witness = a.report.output;
  return a;
}

WPAnswer word_problem_quotient(const Word& w, const RelatorSystem& rs, const ReductionParams& rp, bool certify,
                               const BaseGroup& base) {
  QuotientSolver s(rs, rp, base);
  return s.solve(w, certify);
}

}  // namespace scg
