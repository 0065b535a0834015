#pragma once
// Sampled self-check suites behind `verify`: each check reruns an invariant
// of the library on randomized or gridded inputs and reports its worst
// residual against a fixed threshold.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "betadim/follower_graph.hpp"
#include "betadim/markov.hpp"

namespace betadim {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // worst observed value
  double threshold = 0.0;  // pass iff residual <= threshold
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

struct VerifyConfig {
  std::uint64_t seed = 20260819;
  int samples = 1000;  // scale knob for the randomized checks
};

VerifyReport verify_expansion(const VerifyConfig& cfg);
VerifyReport verify_covering(const VerifyConfig& cfg);
VerifyReport verify_markov(const VerifyConfig& cfg);
VerifyReport verify_dimension(const VerifyConfig& cfg);
VerifyReport verify_all(const VerifyConfig& cfg);

void print_report(const VerifyReport& report, std::ostream& os);

// Random stationary Markov measure supported on the graph: exponential
// weights on the out-edges of every state, stationary vector by iteration.
// Deterministic in the seed. Shared by the verify suites and the tests.
MarkovMeasure random_markov_measure(const FollowerGraph& graph,
                                    std::uint64_t seed);

// Deterministic uniform double in [0,1) from a 64-bit generator state
// (keeps randomized checks byte-stable across platforms).
double uniform01(std::uint64_t& state);

}  // namespace betadim
