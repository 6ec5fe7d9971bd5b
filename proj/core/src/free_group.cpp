#include "scgroup/free_group.hpp"

#include <algorithm>
#include <set>

#include "scgroup/steps.hpp"

namespace scg {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  steps::add(w.size());
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

CyclicCore cyclic_core(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  steps::add(i);
  return {Word(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j)),
          Word(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i))};
}

Word cyclic_reduce(const Word& w) { return cyclic_core(w).core; }

bool is_cyclically_reduced(const Word& w) {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != -w.back();
}

Word shortlex_normal_form_free(const Word& w, const Alphabet& alpha) {
  for (Letter l : w)
    if (!alpha.contains(l)) throw Error("letter outside alphabet");
  return free_reduce(w);
}

std::vector<Word> symmetrize(const std::vector<Word>& rs, const Alphabet& alpha) {
  std::vector<Word> out;
  for (const Word& r : rs) {
    if (r.empty() || !is_cyclically_reduced(r))
      throw Error("symmetrize: relator is not freely cyclically reduced: " + alpha.format(r));
    const Word ri = inverse(r);
    for (std::size_t k = 0; k < r.size(); ++k) {
      out.push_back(rotate(r, k));
      out.push_back(rotate(ri, k));
    }
  }
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return shortlex_less(a, b, alpha); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Word canonical_relator(const Word& w, const Alphabet& alpha) {
  Word best = w;
  const Word wi = inverse(w);
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word a = rotate(w, k), b = rotate(wi, k);
    if (shortlex_less(a, best, alpha)) best = a;
    if (shortlex_less(b, best, alpha)) best = b;
  }
  return best;
}

namespace {
std::vector<std::size_t> failure_table(const Word& p) {
  std::vector<std::size_t> f(p.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    while (k > 0 && p[i] != p[k]) k = f[k];
    if (p[i] == p[k]) ++k;
    f[i + 1] = k;
  }
  return f;
}
}  // namespace

std::size_t find_subword(const Word& text, const Word& pattern, std::size_t from) {
  if (pattern.empty()) return from <= text.size() ? from : std::string::npos;
  const auto f = failure_table(pattern);
  std::size_t k = 0;
  for (std::size_t i = from; i < text.size(); ++i) {
    while (k > 0 && text[i] != pattern[k]) k = f[k];
    if (text[i] == pattern[k]) ++k;
    if (k == pattern.size()) {
      steps::add(i + 1 - from);
      return i + 1 - k;
    }
  }
  steps::add(text.size() - std::min(from, text.size()));
  return std::string::npos;
}

std::optional<std::size_t> cyclic_shift_offset(const Word& a, const Word& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.empty()) return 0;
  Word aa = concat(a, a);
  aa.pop_back();
  const std::size_t pos = find_subword(aa, b);
  if (pos == std::string::npos) return std::nullopt;
  return pos;
}

FreeRootReport free_root(const Word& w) {
  const Word core = cyclic_reduce(w);
  if (core.empty()) throw Error("free_root: trivial word");
  const std::size_t n = core.size();
  // The smallest period dividing n gives the primitive root.
  const auto f = failure_table(core);
  std::size_t p = n - f[n];
  if (n % p != 0) p = n;
  steps::add(n);
  return {Word(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(p)), static_cast<long>(n / p)};
}

Word free_root_element(const Word& w) {
  auto cc = cyclic_core(w);
  if (cc.core.empty()) throw Error("free_root_element: trivial word");
  auto rep = free_root(cc.core);
  const Word back = inverse(cc.conjugator);
  return concat({&cc.conjugator, &rep.root, &back});
}

bool in_same_elementary_free(const Word& u, const Word& v) {
  const Word ru = free_root_element(u);
  const Word rv = free_root_element(v);
  return ru == rv || ru == inverse(rv);
}

bool free_conjugate(const Word& u, const Word& v) {
  return is_cyclic_shift(cyclic_reduce(u), cyclic_reduce(v));
}

}  // namespace scg
