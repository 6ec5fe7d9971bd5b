#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scgroup/rational.hpp"
#include "scgroup/word.hpp"

namespace scg {

struct SCParams {
  Rational lambda{1};
  Rational c{0};
  int eps = 0;
  Rational mu{Rational(1, 10)};
  std::int64_t rho = 1;

  Rational eta_wp() const { return 1 - 23 * mu; }
  Rational eta_conj() const { return 1 - 121 * lambda * mu; }
  Rational eta_conj_reduction() const { return 1 - 122 * lambda * mu; }
  static Rational eta_prime(const Rational& eta) { return 3 * eta - 2; }

  // Empty when the tuple is in range; otherwise the first violated constraint.
  std::string range_error() const;
};

// Symmetrized relator set with its parameters. `base` holds one canonical word per
// class {cyclic shifts of R and R^-1}; `relators` is the full closure.
struct RelatorSystem {
  Alphabet alphabet;
  std::vector<Word> base;
  std::vector<Word> relators;  // symmetrized closure, kept only while it is small
  SCParams params;
  bool closed = true;          // false when relators was left empty to save memory

  static constexpr std::uint64_t closure_letter_limit = 1u << 23;
  static std::uint64_t closure_letters(const std::vector<Word>& base);
  void require_closure(const char* what) const;
  // Cyclic shift of some base relator or its inverse; works without the closure.
  bool is_symmetrized(const Word& w) const;

  static RelatorSystem from_words(Alphabet alpha, const std::vector<Word>& words, SCParams params);
  std::int64_t max_length() const;
  std::int64_t min_length() const;
};

// Where a symmetrized relator came from.
struct SymOrigin {
  int base = 0;
  bool inverted = false;
  std::int64_t offset = 0;  // relators[i] == rotate(inverted ? base^-1 : base, offset)
};
std::vector<SymOrigin> symmetrized_origins(const RelatorSystem& rs);

enum class PieceKind { Epsilon, EpsilonPrime };

struct PieceReport {
  PieceKind kind = PieceKind::Epsilon;
  // Epsilon: indices into rs.relators, U a prefix of relators[rel_a], U' a prefix of relators[rel_b].
  // EpsilonPrime: rel_a == rel_b is an index into rs.base; off_a, off_b are the starts of U and U'.
  int rel_a = 0, rel_b = 0;
  std::int64_t off_a = 0, off_b = 0;
  Word piece;        // U
  Word piece_other;  // U' = Y^-1 U^{±1} Z
  Word Y, Z;
  bool inverse_occurrence = false;  // EpsilonPrime only: U' = Y^-1 U^-1 Z
  std::int64_t length() const { return static_cast<std::int64_t>(piece.size()); }
  bool operator==(const PieceReport& o) const;
};

std::vector<PieceReport> find_pieces(const RelatorSystem& rs, int eps, PieceKind kind);

// Freely reduced words of length <= radius, ordered by length then ShortLex.
std::vector<Word> ball(const Alphabet& alpha, int radius);

enum class Variant { C, CPrime };

struct Violation {
  std::string condition;  // "1.1", "1.2", "1.3", "2.2"
  int relator = -1;
  std::string detail;
  Word witness;
};

struct ConditionReport {
  bool pass = true;
  std::vector<Violation> violations;
};

ConditionReport check_condition(const RelatorSystem& rs, Variant variant);

// Every subword s of every cyclic relator satisfies |s| <= lambda*|reduce(s)| + c. Direct check.
bool quasi_geodesic_direct(const Word& r, const Rational& lambda, const Rational& c);

struct RelatorFamilySpec {
  Alphabet alphabet;
  std::vector<Word> Z;
  Word U, V;
  std::int64_t m11 = 1;
  int k = 0;
};

// m_{i,1} = 2^{i-1} m11, j_i = m_{i,1} - 1, m_{i,t} = m_{i,1} + t - 1.
std::int64_t family_first_exponent(std::int64_t m11, int i);
std::int64_t family_block_count(std::int64_t m11, int i);
// Saturating length of R_i from the compact description (no expansion).
std::uint64_t family_relator_length(const RelatorFamilySpec& spec, int i);
Word family_relator(const RelatorFamilySpec& spec, int i);

struct FamilyResult {
  RelatorSystem system;
  std::vector<Word> relators;  // R_1..R_k as generated
  std::vector<Violation> validation;
};

FamilyResult generate_relator_family(const RelatorFamilySpec& spec, const SCParams& params);

RelatorSystem truncate_family(const RelatorSystem& rs, std::int64_t n,
                              const std::function<Rational(std::int64_t)>& bound);
RelatorSystem truncate_to_length(const RelatorSystem& rs, const Rational& bound);

struct PowerQGConstants {
  BigInt lambda_w;
  BigInt c_w;
  std::int64_t alpha = 0;
};

PowerQGConstants power_qg_constants(const Word& w, std::int64_t delta, std::int64_t alphabet_size,
                                    bool cyclically_minimal);
Rational upsilon(const Word& u, const Rational& lambda_tilde);

}  // namespace scg
