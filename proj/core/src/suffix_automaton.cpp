#include "scgroup/suffix_automaton.hpp"

#include <algorithm>

#include "scgroup/steps.hpp"

namespace scg {

SuffixAutomaton::SuffixAutomaton(const Word& w) {
  letters_ = w;
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  sigma_ = std::max<std::size_t>(1, letters_.size());
  Letter hi = 0;
  for (Letter l : letters_) hi = std::max(hi, l > 0 ? l : -l);
  offset_ = hi;
  slot_of_.assign(static_cast<std::size_t>(2 * hi + 1), -1);
  for (std::size_t i = 0; i < letters_.size(); ++i) slot_of_[static_cast<std::size_t>(letters_[i] + offset_)] = static_cast<int>(i);

  const std::size_t cap = 2 * w.size() + 2;
  next_.reserve(cap * sigma_);
  link_.reserve(cap);
  len_.reserve(cap);
  first_end_.reserve(cap);
  auto make = [&](std::int64_t len, std::int64_t fe) {
    next_.insert(next_.end(), sigma_, -1);
    link_.push_back(-1);
    len_.push_back(len);
    first_end_.push_back(fe);
    return static_cast<int>(len_.size() - 1);
  };
  auto at = [&](int st, int s) -> int& { return next_[static_cast<std::size_t>(st) * sigma_ + static_cast<std::size_t>(s)]; };
  make(0, -1);
  int last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int s = slot(w[i]);
    const int cur = make(len_[static_cast<std::size_t>(last)] + 1, static_cast<std::int64_t>(i));
    int p = last;
    while (p != -1 && at(p, s) == -1) {
      at(p, s) = cur;
      p = link_[static_cast<std::size_t>(p)];
    }
    if (p == -1) {
      link_[static_cast<std::size_t>(cur)] = 0;
    } else {
      const int q = at(p, s);
      if (len_[static_cast<std::size_t>(p)] + 1 == len_[static_cast<std::size_t>(q)]) {
        link_[static_cast<std::size_t>(cur)] = q;
      } else {
        const int cl = make(len_[static_cast<std::size_t>(p)] + 1, first_end_[static_cast<std::size_t>(q)]);
        std::copy_n(next_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(q) * sigma_), sigma_,
                    next_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(cl) * sigma_));
        link_[static_cast<std::size_t>(cl)] = link_[static_cast<std::size_t>(q)];
        while (p != -1 && at(p, s) == q) {
          at(p, s) = cl;
          p = link_[static_cast<std::size_t>(p)];
        }
        link_[static_cast<std::size_t>(q)] = cl;
        link_[static_cast<std::size_t>(cur)] = cl;
      }
    }
    last = cur;
  }
  steps::add(w.size());
}

int SuffixAutomaton::slot(Letter l) const {
  const std::int64_t k = static_cast<std::int64_t>(l) + offset_;
  if (k < 0 || k >= static_cast<std::int64_t>(slot_of_.size())) return -1;
  return slot_of_[static_cast<std::size_t>(k)];
}

void SuffixAutomaton::step(Letter l, std::int64_t& length, int& state) const {
  const int s = slot(l);
  if (s < 0 || len_.empty()) {
    length = 0;
    state = 0;
    return;
  }
  while (state != 0 && next(state, s) == -1) {
    state = link_[static_cast<std::size_t>(state)];
    length = len_[static_cast<std::size_t>(state)];
  }
  const int t = next(state, s);
  if (t == -1) {
    length = 0;
    state = 0;
  } else {
    state = t;
    ++length;
  }
}

}  // namespace scg
