#include "scgroup/harness.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_set>

#include "scgroup/steps.hpp"

namespace scg {

namespace {

// Local kernels, kept apart from the engines the oracles check.
void push_reduce(Word& st, Letter l) {
  if (!st.empty() && st.back() == -l) st.pop_back();
  else st.push_back(l);
}

Word reduce_copy(const Word& w) {
  Word st;
  for (Letter l : w) push_reduce(st, l);
  return st;
}

Word invert(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

Letter code_letter(std::size_t c) { return gen_letter(static_cast<int>(c / 2), c % 2 == 1); }

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w) h = (h ^ static_cast<std::size_t>(l + 1024)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

Word random_reduced_word(std::size_t gens, std::size_t len, std::mt19937_64& rng) {
  Word w;
  w.reserve(len);
  if (gens == 0) return w;
  std::uniform_int_distribution<std::size_t> first(0, 2 * gens - 1), next(0, 2 * gens - 2);
  for (std::size_t i = 0; i < len; ++i) {
    if (w.empty()) {
      w.push_back(code_letter(first(rng)));
      continue;
    }
    // Skip the one code that would cancel.
    std::size_t c = next(rng);
    Letter l = code_letter(c);
    if (l == -w.back()) l = code_letter(2 * gens - 1);
    w.push_back(l);
  }
  return w;
}

std::vector<Word> oracle_normal_closure_sample(const RelatorSystem& rs, const NormalClosureBudget& b) {
  std::vector<Word> out;
  if (rs.base.empty() || b.samples == 0 || b.max_factors < 1) return out;
  std::mt19937_64 rng(b.seed);
  std::uniform_int_distribution<std::size_t> pick(0, rs.base.size() - 1);
  std::uniform_int_distribution<int> factors(1, b.max_factors), clen(0, std::max(0, b.max_conjugator));
  std::bernoulli_distribution flip(0.5);
  const std::size_t gens = rs.alphabet.size();
  out.reserve(b.samples);
  while (out.size() < b.samples) {
    Word w;
    const int k = factors(rng);
    for (int f = 0; f < k; ++f) {
      const Word u = random_reduced_word(gens, static_cast<std::size_t>(clen(rng)), rng);
      Word r = rs.base[pick(rng)];
      if (b.inverses && flip(rng)) r = invert(r);
      for (Letter l : u) push_reduce(w, l);
      for (Letter l : r) push_reduce(w, l);
      for (Letter l : invert(u)) push_reduce(w, l);
    }
    out.push_back(std::move(w));
  }
  return out;
}

Tri oracle_exhaustive_wp(const RelatorSystem& rs, const Word& w0, const OracleBudget& b) {
  const Word start = reduce_copy(w0);
  if (start.empty()) return Tri::Yes;
  if (start.size() > b.max_word_length) return Tri::Unknown;
  // Every cyclic conjugate of every R^{+-1}.
  std::set<Word> rels;
  for (const Word& r : rs.base) {
    for (const Word& s : {r, invert(r)})
      for (std::size_t k = 0; k < s.size(); ++k) {
        Word t(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
        t.insert(t.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
        rels.insert(t);
      }
  }
  std::unordered_set<Word, WordHash> seen{start};
  std::deque<Word> queue{start};
  while (!queue.empty()) {
    const Word w = std::move(queue.front());
    queue.pop_front();
    for (std::size_t p = 0; p <= w.size(); ++p) {
      for (const Word& r : rels) {
        Word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
        for (Letter l : r) push_reduce(v, l);
        for (std::size_t q = p; q < w.size(); ++q) push_reduce(v, w[q]);
        steps::add(w.size() + r.size());
        if (v.empty()) return Tri::Yes;
        if (v.size() > b.max_word_length) continue;
        if (seen.insert(v).second) {
          if (seen.size() > b.max_frontier) return Tri::Unknown;
          queue.push_back(std::move(v));
        }
      }
    }
  }
  return Tri::No;
}

TietzeOracle::TietzeOracle(std::size_t gens, const std::vector<Word>& relators) : subst_(gens) {
  for (std::size_t g = 0; g < gens; ++g) subst_[g] = Word{gen_letter(static_cast<int>(g))};
  std::vector<int> occurrences_in(gens, 0);  // number of relators mentioning g
  for (const Word& r : relators) {
    std::set<int> gs;
    for (Letter l : r) gs.insert(letter_gen(l));
    for (int g : gs) {
      if (g >= static_cast<int>(gens)) throw Error("tietze: letter outside the alphabet");
      ++occurrences_in[static_cast<std::size_t>(g)];
    }
  }
  std::vector<bool> eliminated(gens, false);
  for (const Word& r0 : relators) {
    const Word r = reduce_copy(r0);
    int pick = -1;
    for (std::size_t g = 0; g < gens && pick < 0; ++g) {
      if (occurrences_in[g] != 1 || eliminated[g]) continue;
      const auto cnt = std::count_if(r.begin(), r.end(), [&](Letter l) { return letter_gen(l) == static_cast<int>(g); });
      if (cnt == 1) pick = static_cast<int>(g);
    }
    if (pick < 0) throw Error("tietze: a relator has no generator to eliminate");
    const auto pos = static_cast<std::size_t>(
        std::find_if(r.begin(), r.end(), [&](Letter l) { return letter_gen(l) == pick; }) - r.begin());
    // r ~ g^e Q with Q the rest read cyclically: g^e = Q^-1.
    Word Q(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
    Q.insert(Q.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
    subst_[static_cast<std::size_t>(pick)] = letter_inv(r[pos]) ? Q : invert(Q);
    eliminated[static_cast<std::size_t>(pick)] = true;
  }
}

Word TietzeOracle::image(const Word& w) const {
  Word st;
  for (Letter l : w) {
    const Word& s = subst_.at(static_cast<std::size_t>(letter_gen(l)));
    if (letter_inv(l)) {
      for (auto it = s.rbegin(); it != s.rend(); ++it) push_reduce(st, -*it);
    } else {
      for (Letter x : s) push_reduce(st, x);
    }
  }
  return st;
}

bool TietzeOracle::trivial(const Word& w) const { return image(w).empty(); }

void for_each_reduced_word(std::size_t gens, std::size_t max_len, const std::function<void(const Word&)>& visit) {
  if (gens == 0) {
    visit(Word{});
    return;
  }
  const std::size_t k = 2 * gens;
  auto cancels = [](std::size_t a, std::size_t b) { return a / 2 == b / 2 && a != b; };
  std::vector<std::size_t> code;
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    code.assign(len, 0);  // 0 0 ... 0 is reduced
    w.assign(len, code_letter(0));
    while (true) {
      visit(w);
      // Odometer step, skipping codes that cancel against the left neighbour.
      std::size_t i = len;
      while (i > 0) {
        --i;
        std::size_t c = code[i] + 1;
        if (i > 0 && c < k && cancels(code[i - 1], c)) ++c;
        if (c < k) {
          code[i] = c;
          w[i] = code_letter(c);
          for (std::size_t j = i + 1; j < len; ++j) {
            code[j] = cancels(code[j - 1], 0) ? 1 : 0;
            w[j] = code_letter(code[j]);
          }
          break;
        }
        if (i == 0) {
          i = len + 1;  // done with this length
          break;
        }
      }
      if (i == len + 1 || len == 0) break;
    }
  }
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw Error("fit: need at least three points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log2(x[i]));
    ly.push_back(std::log2(std::max(1.0, y[i])));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw Error("fit: all sizes equal");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (f.intercept + f.slope * lx[i]);
    sse += r * r;
  }
  const double se = std::sqrt(sse / (n - 2) / sxx);
  const boost::math::students_t dist(n - 2);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.lo = f.slope - t * se;
  f.hi = f.slope + t * se;
  return f;
}

BenchReport bench_wp(GroupChain& chain, const BenchConfig& cfg) {
  std::vector<std::size_t> sizes = cfg.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 5 || sizes.front() == 0 || sizes.back() < 8 * sizes.front())
    throw Error("bench: need at least 5 distinct sizes spanning at least 3 doublings");
  BenchReport rep;
  rep.seed = cfg.seed;
  const std::size_t gens = chain.base_alphabet().size();
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ull * n));
    // Levels that a length-n query may touch, for planting.
    std::vector<Word> plant;
    const int top = chain.index_I(static_cast<std::int64_t>(n));
    for (int i = 1; i <= top; ++i)
      for (const Word& r : chain.level(i)->spec.relators)
        if (r.size() * 2 <= n) plant.push_back(r);
    for (std::size_t s = 0; s < cfg.samples_per_size; ++s) {
      BenchRecord rec;
      rec.size = n;
      Word w;
      if (cfg.planted && s % 2 == 1 && !plant.empty()) {
        rec.planted = true;
        std::uniform_int_distribution<std::size_t> pick(0, plant.size() - 1);
        while (w.size() < n) {
          const Word& r = plant[pick(rng)];
          const Word u = random_reduced_word(gens, std::min<std::size_t>(n / 8 + 1, 64), rng);
          for (Letter l : u) push_reduce(w, l);
          for (Letter l : r) push_reduce(w, l);
          for (Letter l : invert(u)) push_reduce(w, l);
        }
      } else {
        w = random_reduced_word(gens, n, rng);
      }
      steps::Meter m;
      LimitWPAnswer a = limit_word_problem(chain, w, false);
      rec.steps = m.elapsed();
      rec.trivial = a.trivial;
      rec.level = a.level;
      xs.push_back(static_cast<double>(w.size()));
      ys.push_back(static_cast<double>(rec.steps));
      rep.records.push_back(rec);
    }
  }
  const SlopeFit f = fit_loglog(xs, ys);
  rep.slope = f.slope;
  rep.slope_lo = f.lo;
  rep.slope_hi = f.hi;
  rep.intercept = f.intercept;
  return rep;
}

}  // namespace scg
