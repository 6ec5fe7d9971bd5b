#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scgroup/chain.hpp"
#include "scgroup/glang.hpp"
#include "scgroup/harness.hpp"
#include "scgroup/io.hpp"
#include "scgroup/reduction.hpp"
#include "scgroup/smallcancel.hpp"

using namespace scg;
using nlohmann::json;

namespace {

bool is_chain_file(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("levels:", 0) == 0 || line.rfind("base:", 0) == 0) return true;
  return false;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  if (auto c = s.find(':'); c != std::string::npos) {
    const std::size_t lo = std::stoull(s.substr(0, c)), hi = std::stoull(s.substr(c + 1));
    if (lo == 0 || hi < lo) throw Error("sizes: expected lo:hi with 0 < lo <= hi");
    for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  }
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

int cmd_check_sc(const std::string& file, const std::string& params, bool prime, bool pieces) {
  io::Presentation p = io::parse_presentation(io::read_file(file));
  const SCParams sp = io::parse_params(params, p.params);
  RelatorSystem rs = RelatorSystem::from_words(p.alphabet, p.relators, sp);
  if (std::string e = sp.range_error(); !e.empty()) throw Error("params: " + e);
  ConditionReport r = check_condition(rs, prime ? Variant::CPrime : Variant::C);
  std::cout << (prime ? "C'" : "C") << " condition: " << (r.pass ? "pass" : "fail") << "\n";
  for (const Violation& v : r.violations)
    std::cout << "  " << v.condition << " relator " << v.relator << ": " << v.detail
              << (v.witness.empty() ? "" : " [" + p.alphabet.format(v.witness) + "]") << "\n";
  if (pieces) {
    for (const PieceReport& pr : find_pieces(rs, sp.eps, PieceKind::Epsilon))
      std::cout << "  piece " << pr.rel_a << "," << pr.rel_b << " len " << pr.length() << ": "
                << p.alphabet.format(pr.piece) << "\n";
  }
  return r.pass ? 0 : 1;
}

int cmd_gen(const std::string& file, const std::string& out) {
  io::FamilyFile f = io::parse_family(io::read_file(file));
  FamilyResult r = generate_relator_family(f.spec, f.params);
  std::ostringstream o;
  o << "gens:";
  for (const std::string& n : f.spec.alphabet.names()) o << ' ' << n;
  const SCParams& p = f.params;
  o << "\nparams: lambda=" << format_rational(p.lambda) << " c=" << format_rational(p.c) << " eps=" << p.eps
    << " mu=" << format_rational(p.mu) << " rho=" << p.rho << "\nrelators:\n";
  for (const Word& w : r.relators) o << f.spec.alphabet.format(w) << "\n";
  if (out.empty()) {
    std::cout << o.str();
  } else {
    std::ofstream(out) << o.str();
  }
  for (std::size_t i = 0; i < r.relators.size(); ++i)
    std::cerr << "R_" << i + 1 << ": length " << r.relators[i].size() << "\n";
  for (const Violation& v : r.validation) std::cerr << "warning: " << v.condition << ": " << v.detail << "\n";
  return 0;
}

int cmd_wp(const std::string& file, const std::string& word, bool certificate) {
  const std::string text = io::read_file(file);
  if (!is_chain_file(text)) {
    io::Presentation p = io::parse_presentation(text);
    RelatorSystem rs = RelatorSystem::from_words(p.alphabet, p.relators, p.params);
    const ReductionParams rp = ReductionParams::for_word_problem(p.params);
    if (std::string e = rp.validate(); !e.empty()) throw Error("params out of range for the word problem: " + e);
    WPAnswer a = word_problem_quotient(p.alphabet.parse(word), rs, rp, certificate);
    std::cout << (a.trivial ? "trivial" : "nontrivial") << "\n";
    if (!a.trivial) std::cout << "reduced: " << p.alphabet.format(a.witness) << "\n";
    if (certificate) std::cout << serialize(a.report.certificate);
    return a.trivial ? 0 : 1;
  }
  GLChain c = io::load_chain(file);
  const Word w = c.chain->alphabet().parse(word);
  LimitWPAnswer a = limit_word_problem(*c.chain, w, certificate);
  std::cout << (a.trivial ? "trivial" : "nontrivial") << " (level " << a.level << ")\n";
  if (!a.trivial) std::cout << "reduced: " << c.chain->alphabet().format(a.detail.witness) << "\n";
  if (certificate) std::cout << serialize(a.detail.report.certificate);
  return a.trivial ? 0 : 1;
}

int cmd_conj(const std::string& file, const std::string& u, const std::string& v) {
  GLChain c = io::load_chain(file);
  // Parse after generating enough levels for any stable letters named in the input.
  const auto n = static_cast<std::int64_t>(u.size() + v.size());
  c.chain->index_I(n);
  const Word x = c.chain->alphabet().parse(u), y = c.chain->alphabet().parse(v);
  if (c.language) {
    GLAnswer a = gl_conjugacy(c, x, y);
    std::cout << (a.conjugate ? "conjugate" : (a.kind == "unknown" ? "unknown" : "not conjugate")) << " (" << a.kind
              << ")\n";
    if (a.g.verdict == Tri::Yes) std::cout << "witness: " << c.chain->alphabet().format(a.g.witness) << "\n";
    if (a.lambda.queried) std::cout << "membership query: " << c.language->format(a.lambda.omega) << "\n";
    return a.conjugate ? 0 : 1;
  }
  GConjAnswer a = g_conjugacy(*c.chain, x, y);
  std::cout << to_string(a.verdict) << " (" << a.reason << ")\n";
  if (a.verdict == Tri::Yes) std::cout << "witness: " << c.chain->alphabet().format(a.witness) << "\n";
  return a.verdict == Tri::Yes ? 0 : 1;
}

int cmd_gl_build(const std::string& lang, const std::string& out, std::size_t persist, std::int64_t m0) {
  GLSchedule s;
  s.m0 = m0;
  GLChain c = build_gl_chain(io::load_language(lang), s);
  const std::string text = io::write_gl_chain(c, persist);
  if (out.empty()) std::cout << text;
  else std::ofstream(out) << text;
  return 0;
}

int cmd_gl_encode(const std::string& word, const std::string& lang) {
  LanguageSpec spec;
  if (lang.empty()) {
    spec.alphabet = {"0", "1"};
  } else {
    spec = io::load_language(lang);
  }
  Language l(spec);
  const auto [u, v] = lambda_encode(l.parse(word), l.alphabet_size());
  const Alphabet a = gl_base_alphabet();
  std::cout << a.format(u) << "\n" << a.format(v) << "\n";
  return 0;
}

int cmd_bench(const std::string& chain, const std::string& sizes, std::uint64_t seed, std::size_t samples,
              const std::string& out) {
  GLChain c = io::load_chain(chain);
  BenchConfig cfg;
  cfg.sizes = parse_sizes(sizes);
  cfg.seed = seed;
  cfg.samples_per_size = samples;
  BenchReport r = bench_wp(*c.chain, cfg);
  std::ostringstream o;
  for (const BenchRecord& rec : r.records)
    o << json{{"kind", "sample"}, {"size", rec.size},       {"steps", rec.steps},
              {"trivial", rec.trivial}, {"planted", rec.planted}, {"level", rec.level}}
             .dump()
      << "\n";
  o << json{{"kind", "fit"}, {"seed", r.seed}, {"slope", r.slope}, {"slope_lo", r.slope_lo}, {"slope_hi", r.slope_hi},
            {"intercept", r.intercept}}
           .dump()
    << "\n";
  if (out.empty()) std::cout << o.str();
  else std::ofstream(out) << o.str();
  std::cerr << "slope " << r.slope << " [" << r.slope_lo << ", " << r.slope_hi << "]\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-cancellation groups: word and conjugacy problems, graded chains, G_L"};
  app.require_subcommand(1);

  std::string file, params, word, out, u, v, lang, chain, sizes = "1024:65536";
  bool prime = false, pieces = false, cert = false;
  std::uint64_t seed = 1;
  std::size_t samples = 4, persist = 64;
  std::int64_t m0 = 8;

  auto* check = app.add_subcommand("check-sc", "Check the C or C' condition of a presentation");
  check->add_option("presentation", file)->required()->check(CLI::ExistingFile);
  check->add_option("--params", params, "lambda=.. c=.. eps=.. mu=.. rho=..");
  check->add_flag("--prime", prime, "Check C' instead of C");
  check->add_flag("--pieces", pieces, "List epsilon-pieces");

  auto* gen = app.add_subcommand("gen", "Expand a relator family");
  gen->add_option("--family", file)->required()->check(CLI::ExistingFile);
  gen->add_option("--out", out);

  auto* wp = app.add_subcommand("wp", "Word problem in a presentation's quotient or a chain's limit group");
  wp->add_option("file", file)->required()->check(CLI::ExistingFile);
  wp->add_option("word", word)->required();
  wp->add_flag("--certificate", cert, "Print the rewrite certificate");

  auto* conj = app.add_subcommand("conj", "Conjugacy in a chain's limit group");
  conj->add_option("chain", file)->required()->check(CLI::ExistingFile);
  conj->add_option("u", u)->required();
  conj->add_option("v", v)->required();

  auto* gl = app.add_subcommand("gl", "The G_L construction");
  gl->require_subcommand(1);
  auto* build = gl->add_subcommand("build", "Write a chain file for a language");
  build->add_option("--lang", lang)->required()->check(CLI::ExistingFile);
  build->add_option("--out", out);
  build->add_option("--persist", persist, "Members persisted in the chain file");
  build->add_option("--m0", m0, "First family exponent");
  auto* ask = gl->add_subcommand("ask", "Conjugacy of a pair in G_L");
  ask->add_option("--chain", chain)->required()->check(CLI::ExistingFile);
  std::vector<std::string> pair;
  ask->add_option("--pair", pair)->required()->expected(2);
  auto* encode = gl->add_subcommand("encode", "Lambda(omega)");
  encode->add_option("--word", word)->required();
  encode->add_option("--lang", lang);

  auto* bench = app.add_subcommand("bench", "Step-count scaling of the limit word problem");
  bench->add_option("--chain", chain)->required()->check(CLI::ExistingFile);
  bench->add_option("--sizes", sizes, "lo:hi (doubling) or a comma list");
  bench->add_option("--seed", seed);
  bench->add_option("--samples", samples, "Queries per size");
  bench->add_option("--out", out, "JSON lines report");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmd_check_sc(file, params, prime, pieces);
    if (*gen) return cmd_gen(file, out);
    if (*wp) return cmd_wp(file, word, cert);
    if (*conj) return cmd_conj(file, u, v);
    if (*build) return cmd_gl_build(lang, out, persist, m0);
    if (*ask) return cmd_conj(chain, pair[0], pair[1]);
    if (*encode) return cmd_gl_encode(word, lang);
    if (*bench) return cmd_bench(chain, sizes, seed, samples, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
