#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scgroup/glang.hpp"
#include "scgroup/hnn.hpp"
#include "scgroup/smallcancel.hpp"

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
namespace scg::io {

std::string read_file(const std::string& path);

// "lambda=1 c=0 eps=0 mu=1/10 rho=8", unspecified keys keep their value in `base`.
SCParams parse_params(std::string_view text, SCParams base = {});

// gens: a b z
// params: mu=1/10 rho=8          (optional)
// relators:
// z a^4 b a^5 b a^6
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;
  SCParams params;
};
Presentation parse_presentation(std::string_view text);

// gens: a b z z2 / Z: z ; z2 / U: a / V: b / m11: 4 / k: 2 / params: ...
struct FamilyFile {
  RelatorFamilySpec spec;
  SCParams params;
};
FamilyFile parse_family(std::string_view text);

// gens: a b / hnn t: <u> = <v>    (t^-1 u t = v), one line per stable letter; new letters are appended
std::vector<HNNSpec> parse_tower(std::string_view text);

// alphabet: 0 1 / finite: path | regex: pattern | cmd: program args / max-length: 12 /
// members: w1 ; w2 ...   (persisted enumeration). Relative paths resolve against base_dir.
LanguageSpec parse_language(std::string_view text, const std::string& base_dir = ".");
LanguageSpec load_language(const std::string& path);
std::string write_language(const LanguageSpec& spec);

// base:
//   gens: a b          relators: lines follow
// schedule:
//   lambda = 1   mu = 1/2000   m0 = 8   rho0 = 64   rho_i = rho0 * 4^i
// levels: auto-gl [language file]    (followed by an inline language: section when no file)
// levels: explicit
//   level
//     hnn t1: a = b
//     relator t1 a b ...
//     phi 5          rho_bar 16      (optional)
// The result's language is null for explicit chains.
GLChain parse_chain(std::string_view text, const std::string& base_dir = ".");
GLChain load_chain(const std::string& path);
// A chain file for G_L with the enumeration persisted up to `persist` members.
std::string write_gl_chain(GLChain& gl, std::size_t persist);

}  // namespace scg::io
