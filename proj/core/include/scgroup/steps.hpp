#pragma once

#include <cstdint>

// Deterministic elementary-step accounting shared by every engine. "Time" in the
// chain cost function and in benchmark reports is this counter, never wall-clock.
namespace scg::steps {

std::uint64_t now();
void add(std::uint64_t n);
void reset();

// Measures the steps spent inside a scope on the current thread.
class Meter {
 public:
  Meter() : start_(now()) {}
  std::uint64_t elapsed() const { return now() - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace scg::steps
