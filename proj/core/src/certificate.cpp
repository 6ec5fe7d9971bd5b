#include "scgroup/certificate.hpp"

#include <sstream>

namespace scg {

ReplayResult replay(const Certificate& cert, const ReplayRules& rules) {
  ReplayResult r;
  r.output = cert.input;
  Word& w = r.output;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const RewriteStep& s = cert.steps[i];
    auto fail = [&](std::string why) {
      r.ok = false;
      r.failed_step = i;
      r.error = std::move(why);
      return r;
    };
    const auto n = static_cast<std::int64_t>(w.size());
    if (s.kind == StepKind::Rotate) {
      if (s.pos < 0 || (n > 0 && s.pos >= n) || (n == 0 && s.pos != 0)) return fail("rotation out of range");
      w = rotate(w, static_cast<std::size_t>(s.pos));
      continue;
    }
    const auto len = static_cast<std::int64_t>(s.removed.size());
    if (s.pos < 0 || s.pos + len > n) return fail("replacement out of range");
    if (!std::equal(s.removed.begin(), s.removed.end(), w.begin() + s.pos)) return fail("removed block mismatch");
    switch (s.kind) {
      case StepKind::Free:
        if (!(s.inserted.empty() && s.removed.size() == 2 && s.removed[0] == -s.removed[1]))
          return fail("not a free cancellation");
        break;
      case StepKind::Relator:
        if (!rules.relator || !rules.relator(s)) return fail("not a relator application");
        break;
      case StepKind::Pinch:
        if (!rules.pinch || !rules.pinch(s)) return fail("not a pinch");
        break;
      case StepKind::Rotate:
        break;
    }
    w.erase(w.begin() + s.pos, w.begin() + s.pos + len);
    w.insert(w.begin() + s.pos, s.inserted.begin(), s.inserted.end());
  }
  return r;
}

Word certificate_conjugator(const Certificate& cert) {
  Word w = cert.input;
  Word C;
  for (const RewriteStep& s : cert.steps) {
    if (s.kind == StepKind::Rotate) {
      C.insert(C.end(), w.begin(), w.begin() + s.pos);
      w = rotate(w, static_cast<std::size_t>(s.pos));
      continue;
    }
    w.erase(w.begin() + s.pos, w.begin() + s.pos + static_cast<std::int64_t>(s.removed.size()));
    w.insert(w.begin() + s.pos, s.inserted.begin(), s.inserted.end());
  }
  // Free reduction of C without pulling in free_group.hpp.
  Word st;
  for (Letter l : C) {
    if (!st.empty() && st.back() == -l) st.pop_back();
    else st.push_back(l);
  }
  return st;
}

namespace {

const char* kind_name(StepKind k) {
  switch (k) {
    case StepKind::Rotate: return "rotate";
    case StepKind::Free: return "free";
    case StepKind::Relator: return "relator";
    case StepKind::Pinch: return "pinch";
  }
  return "?";
}

void put(std::ostringstream& os, const Word& w) {
  for (Letter l : w) os << ' ' << l;
}

Word read_word(std::istringstream& is) {
  Word w;
  std::string tok;
  while (is >> tok && tok != "|") w.push_back(std::stoi(tok));
  return w;
}

}  // namespace

std::string serialize(const Certificate& cert) {
  std::ostringstream os;
  os << "input";
  put(os, cert.input);
  os << '\n';
  for (const auto& s : cert.steps) {
    os << kind_name(s.kind) << ' ' << s.pos << ' ' << s.ref << " |";
    put(os, s.removed);
    os << " |";
    put(os, s.inserted);
    os << '\n';
  }
  return os.str();
}

Certificate deserialize_certificate(const std::string& text) {
  Certificate c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "input") {
      std::string tok;
      while (ls >> tok) c.input.push_back(std::stoi(tok));
      continue;
    }
    RewriteStep s;
    if (kind == "rotate") s.kind = StepKind::Rotate;
    else if (kind == "free") s.kind = StepKind::Free;
    else if (kind == "relator") s.kind = StepKind::Relator;
    else if (kind == "pinch") s.kind = StepKind::Pinch;
    else throw Error("certificate: unknown step kind '" + kind + "'");
    std::string bar;
    ls >> s.pos >> s.ref >> bar;
    if (bar != "|") throw Error("certificate: malformed line: " + line);
    s.removed = read_word(ls);
    s.inserted = read_word(ls);
    c.steps.push_back(std::move(s));
  }
  return c;
}

}  // namespace scg
