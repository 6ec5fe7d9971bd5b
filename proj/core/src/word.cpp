#include "scgroup/word.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace scg {

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) add(n);
}

int Alphabet::add(const std::string& name) {
  if (name.empty()) throw Error("empty generator name");
  if (name.find_first_of(" \t^") != std::string::npos)
    throw Error("invalid generator name '" + name + "'");
  if (index_.count(name)) throw Error("duplicate generator '" + name + "'");
  const int g = static_cast<int>(names_.size());
  names_.push_back(name);
  index_.emplace(name, g);
  return g;
}

std::optional<int> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
      ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != '\r')
      ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    if (tok == "1" || tok == "e") continue;  // identity token
    long exp = 1;
    std::string_view gen = tok;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      gen = tok.substr(0, caret);
      std::string_view e = tok.substr(caret + 1);
      auto [p, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc() || p != e.data() + e.size())
        throw Error("bad exponent in token '" + std::string(tok) + "'");
    }
    auto g = find(gen);
    if (!g) throw Error("unknown generator '" + std::string(gen) + "'");
    const Letter l = gen_letter(*g, exp < 0);
    for (long k = 0; k < (exp < 0 ? -exp : exp); ++k) w.push_back(l);
  }
  return w;
}

std::string Alphabet::format_letter(Letter l) const {
  std::string s = name(letter_gen(l));
  if (l < 0) s += "^-1";
  return s;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const long run = static_cast<long>(j - i);
    if (!out.empty()) out += ' ';
    out += name(letter_gen(w[i]));
    const long e = w[i] < 0 ? -run : run;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

Word inverse(const Word& w) {
  Word r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[w.size() - 1 - i] = -w[i];
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word concat(std::initializer_list<const Word*> parts) {
  std::size_t n = 0;
  for (auto* p : parts) n += p->size();
  Word r;
  r.reserve(n);
  for (auto* p : parts) r.insert(r.end(), p->begin(), p->end());
  return r;
}

Word power(const Word& w, long k) {
  const Word base = k < 0 ? inverse(w) : w;
  const long m = k < 0 ? -k : k;
  Word r;
  r.reserve(base.size() * static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) r.insert(r.end(), base.begin(), base.end());
  return r;
}

Word subword_cyclic(const Word& w, std::size_t start, std::size_t len) {
  Word r;
  r.reserve(len);
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < len; ++i) r.push_back(w[(start + i) % n]);
  return r;
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  Word r(w);
  std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k % w.size()), r.end());
  return r;
}

bool shortlex_less(const Word& a, const Word& b, const Alphabet& alpha) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return alpha.less(a[i], b[i]);
  return false;
}

}  // namespace scg
