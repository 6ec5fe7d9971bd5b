#include "scgroup/aho_corasick.hpp"

#include <algorithm>
#include <queue>

#include "scgroup/steps.hpp"

namespace scg {

int AhoCorasick::child(int node, Letter l) const {
  const auto& k = kids_[static_cast<std::size_t>(node)];
  auto it = std::lower_bound(k.begin(), k.end(), l, [](const auto& e, Letter x) { return e.first < x; });
  return (it != k.end() && it->first == l) ? it->second : -1;
}

int AhoCorasick::child_or_add(int node, Letter l) {
  auto& k = kids_[static_cast<std::size_t>(node)];
  auto it = std::lower_bound(k.begin(), k.end(), l, [](const auto& e, Letter x) { return e.first < x; });
  if (it != k.end() && it->first == l) return it->second;
  const int id = static_cast<int>(term_.size());
  k.insert(it, {l, id});
  kids_.emplace_back();
  term_.push_back(-1);
  depth_.push_back(depth_[static_cast<std::size_t>(node)] + 1);
  return id;
}

void AhoCorasick::add(const Word& pattern, int id) {
  if (kids_.empty()) {
    kids_.emplace_back();
    term_.push_back(-1);
    depth_.push_back(0);
  }
  if (pattern.empty()) return;
  built_ = false;
  int node = 0;
  for (Letter l : pattern) node = child_or_add(node, l);
  int& t = term_[static_cast<std::size_t>(node)];
  if (t < 0 || id < t) t = id;
  ++patterns_;
  max_len_ = std::max<std::int64_t>(max_len_, static_cast<std::int64_t>(pattern.size()));
}

void AhoCorasick::build() {
  if (kids_.empty()) {
    kids_.emplace_back();
    term_.push_back(-1);
    depth_.push_back(0);
  }
  fail_.assign(term_.size(), 0);
  dict_.assign(term_.size(), -1);
  std::queue<int> q;
  for (const auto& [l, c] : kids_[0]) q.push(c);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& [l, c] : kids_[static_cast<std::size_t>(v)]) {
      int f = fail_[static_cast<std::size_t>(v)];
      int nxt;
      while ((nxt = child(f, l)) < 0 && f != 0) f = fail_[static_cast<std::size_t>(f)];
      nxt = child(f, l);
      fail_[static_cast<std::size_t>(c)] = (nxt >= 0 && nxt != c) ? nxt : 0;
      const int fc = fail_[static_cast<std::size_t>(c)];
      dict_[static_cast<std::size_t>(c)] = term_[static_cast<std::size_t>(fc)] >= 0 ? fc : dict_[static_cast<std::size_t>(fc)];
      q.push(c);
    }
  }
  built_ = true;
}

std::optional<AhoCorasick::Match> AhoCorasick::find_best(const Letter* text, std::int64_t len,
                                                         std::int64_t start_limit, std::int64_t max_len) const {
  if (!built_ || patterns_ == 0) return std::nullopt;
  std::optional<Match> best;
  int state = 0;
  std::uint64_t work = 0;
  for (std::int64_t i = 0; i < len; ++i) {
    if (best && i > best->start + max_len_ - 1) break;
    const Letter l = text[i];
    int nxt;
    while ((nxt = child(state, l)) < 0 && state != 0) {
      state = fail_[static_cast<std::size_t>(state)];
      ++work;
    }
    state = nxt >= 0 ? nxt : 0;
    ++work;
    for (int o = term_[static_cast<std::size_t>(state)] >= 0 ? state : dict_[static_cast<std::size_t>(state)]; o >= 0;
         o = dict_[static_cast<std::size_t>(o)]) {
      ++work;
      const std::int64_t d = depth_[static_cast<std::size_t>(o)];
      const Match m{i - d + 1, d, term_[static_cast<std::size_t>(o)]};
      if (m.start >= start_limit || m.length > max_len) continue;
      if (!best || m.start < best->start || (m.start == best->start && (m.length > best->length ||
                                                                        (m.length == best->length && m.id < best->id))))
        best = m;
    }
  }
  steps::add(work);
  return best;
}

}  // namespace scg
