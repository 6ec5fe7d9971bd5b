#include "scgroup/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scgroup/free_group.hpp"

namespace scg::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Line {
  int number = 0;
  int indent = 0;
  std::string text;
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::istringstream is{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::string t = trim(raw);
    if (t.empty()) continue;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t"));
    out.push_back({n, indent, std::move(t)});
  }
  return out;
}

// "key: value" -> (key, value); no colon -> ("", line).
std::pair<std::string, std::string> key_value(const std::string& line) {
  const auto c = line.find(':');
  if (c == std::string::npos) return {"", line};
  return {trim(std::string_view(line).substr(0, c)), trim(std::string_view(line).substr(c + 1))};
}

[[noreturn]] void fail(const Line& l, const std::string& what) {
  throw Error("line " + std::to_string(l.number) + ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Alphabet parse_gens(const std::string& v) {
  std::istringstream is(v);
  std::vector<std::string> names;
  std::string t;
  while (is >> t) names.push_back(t);
  if (names.empty()) throw Error("gens: no generators");
  return Alphabet(names);
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw Error("expected an integer, got '" + s + "'");
  return v;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SCParams parse_params(std::string_view text, SCParams p) {
  std::string s(text);
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  // Allow "key = value" as well as "key=value".
  std::string compact;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ' && ((i + 1 < s.size() && s[i + 1] == '=') || (!compact.empty() && compact.back() == '=')))
      continue;
    compact += s[i];
  }
  std::istringstream is(compact);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error("params: expected key=value, got '" + tok + "'");
    const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (k == "lambda" || k == "\u03bb") p.lambda = parse_rational(v);
    else if (k == "c") p.c = parse_rational(v);
    else if (k == "eps" || k == "epsilon" || k == "\u03b5") p.eps = static_cast<int>(parse_int(v));
    else if (k == "mu" || k == "\u03bc") p.mu = parse_rational(v);
    else if (k == "rho" || k == "\u03c1") p.rho = parse_int(v);
    else throw Error("params: unknown key '" + k + "'");
  }
  return p;
}

Presentation parse_presentation(std::string_view text) {
  Presentation pr;
  bool have_gens = false, in_rel = false;
  for (const Line& l : lines_of(text)) {
    auto [k, v] = key_value(l.text);
    if (k == "gens") {
      pr.alphabet = parse_gens(v);
      have_gens = true;
      in_rel = false;
    } else if (k == "params") {
      pr.params = parse_params(v, pr.params);
    } else if (k == "relators") {
      if (!have_gens) fail(l, "relators before gens");
      in_rel = true;
      if (!v.empty()) pr.relators.push_back(pr.alphabet.parse(v));
    } else if (k.empty() && in_rel) {
      pr.relators.push_back(pr.alphabet.parse(l.text));
    } else {
      fail(l, "unexpected '" + l.text + "'");
    }
  }
  if (!have_gens) throw Error("presentation: missing gens");
  return pr;
}

FamilyFile parse_family(std::string_view text) {
  FamilyFile f;
  bool have_gens = false;
  std::string z, u, v;
  for (const Line& l : lines_of(text)) {
    auto [k, val] = key_value(l.text);
    if (l.text.rfind("family ", 0) == 0) {
      // One-line form: family Z=z1,z2 U=a V=b m11=4 k=2 (words use '.' or '_' for spaces)
      std::istringstream is(l.text.substr(7));
      std::string tok;
      while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) fail(l, "family: expected key=value");
        const std::string fk = tok.substr(0, eq);
        std::string fv = tok.substr(eq + 1);
        for (char& ch : fv)
          if (ch == '.' || ch == '_') ch = ' ';
        if (fk == "Z") {
          for (char& ch : fv)
            if (ch == ',') ch = ';';
          z = fv;
        } else if (fk == "U") u = fv;
        else if (fk == "V") v = fv;
        else if (fk == "m11") f.spec.m11 = parse_int(fv);
        else if (fk == "k") f.spec.k = static_cast<int>(parse_int(fv));
        else fail(l, "family: unknown key '" + fk + "'");
      }
      continue;
    }
    if (l.text.rfind("params ", 0) == 0) {
      f.params = parse_params(l.text.substr(7), f.params);
      continue;
    }
    if (k == "gens") {
      f.spec.alphabet = parse_gens(val);
      have_gens = true;
    } else if (k == "Z") z = val;
    else if (k == "U") u = val;
    else if (k == "V") v = val;
    else if (k == "m11") f.spec.m11 = parse_int(val);
    else if (k == "k") f.spec.k = static_cast<int>(parse_int(val));
    else if (k == "params") f.params = parse_params(val, f.params);
    else fail(l, "unexpected '" + l.text + "'");
  }
  if (!have_gens) {
    // Generators in order of first appearance in U, V, Z.
    std::vector<std::string> names;
    std::string all = u + " " + v + " " + z;
    std::replace(all.begin(), all.end(), ';', ' ');
    std::istringstream is(all);
    std::string tok;
    while (is >> tok) {
      tok = tok.substr(0, tok.find('^'));
      if (!tok.empty() && std::find(names.begin(), names.end(), tok) == names.end()) names.push_back(tok);
    }
    if (names.empty()) throw Error("family: missing gens");
    f.spec.alphabet = Alphabet(names);
  }
  for (const std::string& w : split(z, ';'))
    if (!w.empty()) f.spec.Z.push_back(f.spec.alphabet.parse(w));
  f.spec.U = f.spec.alphabet.parse(u);
  f.spec.V = f.spec.alphabet.parse(v);
  if (f.spec.k == 0) f.spec.k = static_cast<int>(f.spec.Z.size());
  return f;
}

namespace {

HNNSpec parse_hnn_line(const std::string& rest, Alphabet& alpha, bool add_letter) {
  // "t: u words = v words"
  const auto c = rest.find(':');
  if (c == std::string::npos) throw Error("hnn: expected 't: u = v'");
  const std::string t = trim(std::string_view(rest).substr(0, c));
  std::string body = rest.substr(c + 1);
  std::vector<std::string> parts;
  if (const auto comma = body.find(','); comma != std::string::npos) {
    // Keyed form: u = <word>, v = <word>
    auto side = [&](std::string part, const char* key) {
      part = trim(part);
      const auto eq = part.find('=');
      if (eq == std::string::npos || trim(std::string_view(part).substr(0, eq)) != key)
        throw Error(std::string("hnn: expected '") + key + " = <word>'");
      std::string w = trim(std::string_view(part).substr(eq + 1));
      if (w.size() >= 2 && w.front() == '<' && w.back() == '>') w = trim(std::string_view(w).substr(1, w.size() - 2));
      return w;
    };
    parts = {side(body.substr(0, comma), "u"), side(body.substr(comma + 1), "v")};
  } else {
    parts = split(body, '=');
    if (parts.size() != 2) throw Error("hnn: expected exactly one '='");
  }
  std::optional<int> g = alpha.find(t);
  if (!g) {
    if (!add_letter) throw Error("hnn: unknown stable letter " + t);
    g = alpha.add(t);
  }
  HNNSpec h;
  h.t = gen_letter(*g);
  h.u = alpha.parse(parts[0]);
  h.v = alpha.parse(parts[1]);
  h.alphabet = alpha;
  return h;
}

}  // namespace

std::vector<HNNSpec> parse_tower(std::string_view text) {
  Alphabet alpha;
  bool have_gens = false;
  std::vector<HNNSpec> out;
  for (const Line& l : lines_of(text)) {
    auto [k, v] = key_value(l.text);
    if (k == "gens") {
      alpha = parse_gens(v);
      have_gens = true;
    } else if (l.text.rfind("hnn ", 0) == 0) {
      if (!have_gens) fail(l, "hnn before gens");
      out.push_back(parse_hnn_line(l.text.substr(4), alpha, true));
    } else {
      fail(l, "unexpected '" + l.text + "'");
    }
  }
  for (HNNSpec& h : out) {
    h.alphabet = alpha;
    if (std::string e = h.validate(); !e.empty()) throw Error("tower: " + e);
  }
  return out;
}

namespace {

LanguageSpec language_from_lines(const std::vector<Line>& ls, const std::string& base_dir) {
  LanguageSpec s;
  bool have_backend = false, have_alpha = false;
  for (const Line& l : ls) {
    auto [k, v] = key_value(l.text);
    if (k == "alphabet") {
      std::istringstream is(v);
      std::string t;
      while (is >> t) s.alphabet.push_back(t);
      have_alpha = true;
    } else if (k == "finite") {
      s.backend = LanguageSpec::Backend::Finite;
      have_backend = true;
      if (v.rfind("inline", 0) == 0) {
        const std::string body = trim(std::string_view(v).substr(6));
        if (!body.empty())
          for (const std::string& w : split(body, ';')) s.words.push_back(w == "-" ? std::string() : w);
      } else {
        const std::filesystem::path p = std::filesystem::path(v).is_absolute() ? std::filesystem::path(v)
                                                                                : std::filesystem::path(base_dir) / v;
        std::istringstream in(read_file(p.string()));
        std::string w;
        while (std::getline(in, w)) {
          if (auto h = w.find('#'); h != std::string::npos) w.erase(h);
          w = trim(w);
          if (w == "-") w.clear();  // the empty word
          else if (w.empty()) continue;
          s.words.push_back(w);
        }
      }
    } else if (k == "regex") {
      s.backend = LanguageSpec::Backend::Regex;
      s.pattern = v;
      have_backend = true;
    } else if (k == "cmd") {
      s.backend = LanguageSpec::Backend::Cmd;
      s.command = v;
      have_backend = true;
    } else if (k == "max-length") {
      s.max_enum_length = static_cast<std::size_t>(parse_int(v));
    } else if (k == "members") {
      for (const std::string& w : split(v, ';')) s.members.push_back(w == "-" ? std::string() : w);
    } else {
      fail(l, "unexpected '" + l.text + "'");
    }
  }
  if (!have_alpha) throw Error("language: missing alphabet");
  if (!have_backend) throw Error("language: missing backend (finite, regex or cmd)");
  return s;
}

std::string dir_of(const std::string& path) {
  const auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

}  // namespace

LanguageSpec parse_language(std::string_view text, const std::string& base_dir) {
  return language_from_lines(lines_of(text), base_dir);
}

LanguageSpec load_language(const std::string& path) { return parse_language(read_file(path), dir_of(path)); }

std::string write_language(const LanguageSpec& s) {
  std::ostringstream o;
  o << "alphabet:";
  for (const std::string& a : s.alphabet) o << ' ' << a;
  o << '\n';
  switch (s.backend) {
    case LanguageSpec::Backend::Finite: {
      o << "finite: inline";
      for (std::size_t i = 0; i < s.words.size(); ++i) o << (i ? " ; " : " ") << (s.words[i].empty() ? "-" : s.words[i]);
      o << '\n';
      break;
    }
    case LanguageSpec::Backend::Regex: o << "regex: " << s.pattern << '\n'; break;
    case LanguageSpec::Backend::Cmd: o << "cmd: " << s.command << '\n'; break;
  }
  o << "max-length: " << s.max_enum_length << '\n';
  return o.str();
}

namespace {

struct ExplicitLevel {
  std::string hnn;  // text after "hnn "
  std::vector<std::string> relators;
  std::uint64_t phi = 0;
  std::optional<Rational> rho_bar;
};

struct Schedule {
  SCParams params;
  GLSchedule gl;
};

void schedule_line(Schedule& s, const Line& l) {
  std::string t = l.text;
  const auto eq = t.find('=');
  if (eq == std::string::npos) fail(l, "schedule: expected key = value");
  const std::string k = trim(std::string_view(t).substr(0, eq)), v = trim(std::string_view(t).substr(eq + 1));
  if (k == "rho_i") {
    // rho_i = rho0 * R^i
    const auto star = v.find('*'), caret = v.find('^');
    if (star == std::string::npos || caret == std::string::npos) fail(l, "schedule: expected rho_i = rho0 * R^i");
    s.gl.rho_ratio = parse_rational(trim(std::string_view(v).substr(star + 1, caret - star - 1)));
    return;
  }
  if (k == "m0") s.gl.m0 = parse_int(v);
  else if (k == "rho0") s.gl.rho0 = parse_rational(v);
  else if (k == "rho_ratio") s.gl.rho_ratio = parse_rational(v);
  else s.params = parse_params(k + "=" + v, s.params);
}

}  // namespace

GLChain parse_chain(std::string_view text, const std::string& base_dir) {
  const std::vector<Line> ls = lines_of(text);
  std::string section;
  Alphabet alpha;
  bool have_gens = false, in_rel = false;
  std::vector<std::string> base_rel_text;
  Schedule sch;
  sch.params.mu = Rational(1, 2000);
  std::string levels_mode, lang_file;
  std::vector<Line> lang_lines;
  std::vector<ExplicitLevel> levels;

  for (const Line& l : ls) {
    auto [k, v] = key_value(l.text);
    if (l.indent == 0 && (k == "base" || k == "schedule" || k == "levels" || k == "language")) {
      section = k;
      in_rel = false;
      if (k == "levels") {
        std::istringstream is(v);
        is >> levels_mode >> lang_file;
        if (levels_mode != "auto-gl" && levels_mode != "explicit") fail(l, "levels: expected auto-gl or explicit");
      }
      continue;
    }
    if (section == "base") {
      if (k == "gens") {
        alpha = parse_gens(v);
        have_gens = true;
      } else if (k == "relators") {
        in_rel = true;
        if (!v.empty()) base_rel_text.push_back(v);
      } else if (k.empty() && in_rel) {
        base_rel_text.push_back(l.text);
      } else {
        fail(l, "base: unexpected '" + l.text + "'");
      }
    } else if (section == "schedule") {
      schedule_line(sch, l);
    } else if (section == "language") {
      lang_lines.push_back(l);
    } else if (section == "levels") {
      if (levels_mode != "explicit") fail(l, "levels: entries only for explicit chains");
      if (l.text == "level") {
        levels.emplace_back();
        continue;
      }
      if (levels.empty()) fail(l, "levels: entry before 'level'");
      ExplicitLevel& e = levels.back();
      if (l.text.rfind("hnn ", 0) == 0) e.hnn = l.text.substr(4);
      else if (l.text.rfind("relator ", 0) == 0) e.relators.push_back(l.text.substr(8));
      else if (l.text.rfind("phi ", 0) == 0) e.phi = static_cast<std::uint64_t>(parse_int(trim(l.text.substr(4))));
      else if (l.text.rfind("rho_bar ", 0) == 0) e.rho_bar = parse_rational(trim(l.text.substr(8)));
      else fail(l, "levels: unexpected '" + l.text + "'");
    } else {
      fail(l, "unexpected '" + l.text + "' outside a section");
    }
  }
  sch.gl.lambda = sch.params.lambda;
  sch.gl.c = sch.params.c;
  sch.gl.eps = sch.params.eps;
  sch.gl.mu = sch.params.mu;

  if (levels_mode == "auto-gl") {
    LanguageSpec ls_spec = lang_file.empty() ? language_from_lines(lang_lines, base_dir)
                                             : load_language((std::filesystem::path(base_dir) / lang_file).string());
    if (!lang_file.empty() && !lang_lines.empty()) {
      // Persisted members in the chain file override the language file's enumeration.
      LanguageSpec extra = language_from_lines(lang_lines, base_dir);
      ls_spec.members = extra.members;
    }
    return build_gl_chain(std::move(ls_spec), sch.gl);
  }
  if (levels_mode != "explicit") throw Error("chain: missing levels section");
  if (!have_gens) throw Error("chain: missing base gens");

  std::vector<Word> base_rels;
  for (const std::string& r : base_rel_text) base_rels.push_back(alpha.parse(r));
  const Schedule s = sch;
  LevelGenerator gen = [levels, s](int i, Alphabet& a) -> std::optional<LevelSpec> {
    if (i < 1 || i > static_cast<int>(levels.size())) return std::nullopt;
    const ExplicitLevel& e = levels[static_cast<std::size_t>(i - 1)];
    LevelSpec spec;
    if (!e.hnn.empty()) spec.hnn = parse_hnn_line(e.hnn, a, true);
    std::uint64_t letters = 0;
    for (const std::string& r : e.relators) {
      spec.relators.push_back(a.parse(r));
      letters += spec.relators.back().size();
    }
    if (spec.hnn) {
      spec.hnn->alphabet = a;
      letters += spec.hnn->u.size() + spec.hnn->v.size() + 1;
    }
    spec.params = s.params;
    std::int64_t rho = 0;
    for (const Word& r : spec.relators)
      rho = rho == 0 ? static_cast<std::int64_t>(r.size()) : std::min<std::int64_t>(rho, r.size());
    spec.params.rho = std::max<std::int64_t>(rho, 1);
    if (e.rho_bar) {
      spec.rho_bar = *e.rho_bar;
    } else {
      spec.rho_bar = s.gl.rho0;
      for (int j = 1; j < i; ++j) spec.rho_bar *= s.gl.rho_ratio;
    }
    spec.phi = e.phi ? e.phi : letters + 1;
    spec.descriptor = "level " + std::to_string(i);
    return spec;
  };
  GLChain out;
  out.schedule = sch.gl;
  out.chain = std::make_unique<GroupChain>(alpha, base_rels, sch.params, std::move(gen));
  return out;
}

GLChain load_chain(const std::string& path) { return parse_chain(read_file(path), dir_of(path)); }

std::string write_gl_chain(GLChain& gl, std::size_t persist) {
  if (!gl.language) throw Error("write_gl_chain: not a G_L chain");
  std::ostringstream o;
  const GLSchedule& s = gl.schedule;
  o << "# G_L chain\nbase:\n  gens: x1 x2 x3 y1 y2 y3 z1 z2\nschedule:\n";
  o << "  lambda = " << format_rational(s.lambda) << "\n  c = " << format_rational(s.c) << "\n  eps = " << s.eps
    << "\n  mu = " << format_rational(s.mu) << "\n  m0 = " << s.m0 << "\n  rho0 = " << format_rational(s.rho0)
    << "\n  rho_ratio = " << format_rational(s.rho_ratio) << "\nlevels: auto-gl\nlanguage:\n";
  std::istringstream lang(write_language(gl.language->spec()));
  std::string line;
  while (std::getline(lang, line)) o << "  " << line << '\n';
  std::vector<std::string> members;
  for (std::size_t i = 0; i < persist; ++i) {
    auto m = gl.language->nth_member(i);
    if (!m) break;
    const std::string f = gl.language->format(*m);
    members.push_back(f.empty() ? "-" : f);
  }
  if (!members.empty()) {
    o << "  members:";
    for (std::size_t i = 0; i < members.size(); ++i) o << (i ? " ; " : " ") << members[i];
    o << '\n';
  }
  return o.str();
}

}  // namespace scg::io
