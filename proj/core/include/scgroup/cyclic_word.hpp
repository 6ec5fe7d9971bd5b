#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "scgroup/word.hpp"

namespace scg {

// A labeled circle. Points are the vertices between letters; point p sits just
// before letter p of the current linear reading. Rotation is O(1).
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(Word w) : letters_(std::move(w)) {}

  std::int64_t size() const { return static_cast<std::int64_t>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  Letter at(std::int64_t i) const { return letters_[static_cast<std::size_t>(wrap(offset_ + i))]; }

  void rotate(std::int64_t k) { offset_ = wrap(offset_ + k); }
  Word linear() const;
  Word arc(std::int64_t from, std::int64_t len) const;

  // Clockwise distance from point a to point b; the two directions sum to size().
  std::int64_t d_cw(std::int64_t a, std::int64_t b) const { return wrap(b - a); }
  std::int64_t d_ccw(std::int64_t a, std::int64_t b) const { return wrap(a - b); }

  std::map<std::int64_t, int> marks;
  std::vector<std::int64_t> special_points;

 private:
  std::int64_t wrap(std::int64_t i) const {
    const std::int64_t n = size();
    if (n == 0) return 0;
    i %= n;
    return i < 0 ? i + n : i;
  }

  Word letters_;
  std::int64_t offset_ = 0;
};

}  // namespace scg
