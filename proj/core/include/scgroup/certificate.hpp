#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scgroup/word.hpp"

namespace scg {

enum class StepKind { Rotate, Free, Relator, Pinch };

// One rewrite on a linear word. Rotate moves the first `pos` letters to the end.
// Every other kind replaces word[pos, pos+|removed|) by `inserted`.
struct RewriteStep {
  StepKind kind = StepKind::Free;
  std::int64_t pos = 0;
  Word removed;
  Word inserted;
  int ref = -1;  // relator index or stable-letter index
};

struct Certificate {
  Word input;
  std::vector<RewriteStep> steps;
};

// Decides whether removed^-1 ... is legal for Relator / Pinch steps; Free and Rotate are checked here.
struct ReplayRules {
  std::function<bool(const RewriteStep&)> relator;
  std::function<bool(const RewriteStep&)> pinch;
};

struct ReplayResult {
  bool ok = true;
  Word output;
  std::size_t failed_step = 0;
  std::string error;
};

ReplayResult replay(const Certificate& cert, const ReplayRules& rules);

// C with output == C^-1 * input * C: the product of the prefixes moved by Rotate steps.
Word certificate_conjugator(const Certificate& cert);

// Line-oriented text log: one step per line, "kind pos ref | removed | inserted" with letters as integers.
std::string serialize(const Certificate& cert);
Certificate deserialize_certificate(const std::string& text);

}  // namespace scg
