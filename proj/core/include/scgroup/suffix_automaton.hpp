#pragma once

#include <cstdint>
#include <vector>

#include "scgroup/word.hpp"

namespace scg {

// Suffix automaton of one word, with transitions over the letters that occur in it.
class SuffixAutomaton {
 public:
  SuffixAutomaton() = default;
  explicit SuffixAutomaton(const Word& w);

  // Matching statistics step: extends the current match (length, state) by l, dropping
  // letters from the front as needed. The matched string ends at first_end(state).
  void step(Letter l, std::int64_t& length, int& state) const;
  std::int64_t first_end(int state) const { return first_end_[static_cast<std::size_t>(state)]; }
  std::size_t states() const { return len_.size(); }

 private:
  int slot(Letter l) const;
  int next(int state, int s) const { return next_[static_cast<std::size_t>(state) * sigma_ + static_cast<std::size_t>(s)]; }

  std::vector<Letter> letters_;  // local alphabet
  std::vector<int> slot_of_;     // letter + offset_ -> local index or -1
  int offset_ = 0;
  std::size_t sigma_ = 0;
  std::vector<int> next_, link_;
  std::vector<std::int64_t> len_, first_end_;
};

}  // namespace scg
