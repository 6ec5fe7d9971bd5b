#include "scgroup/cyclic_word.hpp"

namespace scg {

Word CyclicWord::linear() const { return arc(0, size()); }

Word CyclicWord::arc(std::int64_t from, std::int64_t len) const {
  Word r;
  r.reserve(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) r.push_back(at(from + i));
  return r;
}

}  // namespace scg
