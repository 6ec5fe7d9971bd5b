#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scgroup/word.hpp"

namespace scg {

// Multi-pattern matcher over signed letters. Children are stored sparsely (sorted
// per node after build). Identical patterns keep the smallest id.
class AhoCorasick {
 public:
  struct Match {
    std::int64_t start = 0;
    std::int64_t length = 0;
    int id = -1;
  };

  void add(const Word& pattern, int id);
  void build();

  // Leftmost start, then longest, then smallest id, among matches with start < start_limit
  // and length <= max_len. Scanning stops once no later end position can beat the best.
  std::optional<Match> find_best(const Letter* text, std::int64_t len, std::int64_t start_limit,
                                 std::int64_t max_len) const;

  std::size_t node_count() const { return term_.size(); }
  std::size_t pattern_count() const { return patterns_; }
  std::int64_t max_pattern_length() const { return max_len_; }
  bool empty() const { return patterns_ == 0; }

 private:
  int child(int node, Letter l) const;
  int child_or_add(int node, Letter l);

  std::vector<std::vector<std::pair<Letter, int>>> kids_;
  std::vector<int> fail_, dict_, term_, depth_;
  std::size_t patterns_ = 0;
  std::int64_t max_len_ = 0;
  bool built_ = false;
};

}  // namespace scg
