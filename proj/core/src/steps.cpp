#include "scgroup/steps.hpp"

namespace scg::steps {

namespace {
thread_local std::uint64_t counter = 0;
}

std::uint64_t now() { return counter; }
void add(std::uint64_t n) { counter += n; }
void reset() { counter = 0; }

}  // namespace scg::steps
