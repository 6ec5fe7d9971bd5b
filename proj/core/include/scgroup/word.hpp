#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scg {

// A signed letter: +(g+1) is generator g, -(g+1) its inverse. Zero is never a letter.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline Letter gen_letter(int g, bool inverse = false) { return inverse ? -(g + 1) : (g + 1); }
inline int letter_gen(Letter l) { return (l > 0 ? l : -l) - 1; }
inline bool letter_inv(Letter l) { return l < 0; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generators x_0 < x_1 < ...; signed order x_i^-1 < x_j^-1 < x_i < x_j for i < j.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int g) const { return names_.at(static_cast<std::size_t>(g)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(std::string_view name) const;
  int add(const std::string& name);

  // Rank of a signed letter in the ShortLex letter order, in [0, 2n).
  int rank(Letter l) const {
    const int g = letter_gen(l);
    return l < 0 ? g : static_cast<int>(names_.size()) + g;
  }
  bool less(Letter a, Letter b) const { return rank(a) < rank(b); }
  bool contains(Letter l) const {
    return l != 0 && letter_gen(l) < static_cast<int>(names_.size());
  }

  // Token syntax: name, name^-1, name^k (k may be negative). Tokens separated by whitespace.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;
  std::string format_letter(Letter l) const;

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word concat(std::initializer_list<const Word*> parts);
Word power(const Word& w, long k);
Word subword_cyclic(const Word& w, std::size_t start, std::size_t len);
Word rotate(const Word& w, std::size_t k);

bool shortlex_less(const Word& a, const Word& b, const Alphabet& alpha);

}  // namespace scg
