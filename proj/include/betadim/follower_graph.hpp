#pragma once
// Follower-set graph of a beta-shift with finite expansion of 1 on digits
// {0,1}: states are the legal (m-1)-words, edges append one digit. Exact
// word counts (total and by zero-count) via big-integer DP, and the
// combinatorial dimension estimate log N(n, round(a n)) / (n log beta).

#include <gmpxx.h>

#include <iosfwd>
#include <vector>

#include "betadim/beta_system.hpp"

namespace betadim {

enum class ExecPolicy { serial, parallel };

struct FollowerGraph {
  BetaSystem sys;
  int order = 0;  // window length m defining the shift (1 for integer beta)
  std::vector<DigitWord> states;  // legal (order-1)-words, lexicographic

  struct Edge {
    int from = 0;
    int to = 0;
    uint8_t digit = 0;  // digit emitted by traversing the edge
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> in_edges;  // edge ids grouped by target state
  std::vector<int> start_weights;          // admissible-prefix indicator
  bool strongly_connected = false;
};

// Build the graph for an integer base (full shift, single state) or a binary
// finite-expansion system (states = legal (m-1)-words; edge s -> t iff the
// windows overlap and the m-word s . last(t) is legal). Throws
// std::domain_error for unsupported systems (alphabet beyond {0,1} or an
// expansion of 1 that never terminates).
FollowerGraph build_follower_graph(const BetaSystem& sys);

// Exact number of legal words of length n (n >= 1).
mpz_class count_words(const FollowerGraph& graph, int n);

// Same count, but as repeated dense adjacency-matrix application to the
// start weights. Redundant with count_words on purpose: an independent
// arrangement of the recursion used for consistency checks.
mpz_class count_words_matrix(const FollowerGraph& graph, int n);

struct CountTable {
  int n = 0;
  std::vector<mpz_class> counts;  // counts[k] = legal n-words with k zeros

  mpz_class total() const;
  void to_csv(std::ostream& os) const;  // header "n,k,count", exact decimals
};

// Exact N(n,k) for all k. Serial reference kernel and an OpenMP kernel over
// the (state, zero-count) layers; both produce identical tables.
CountTable count_words_by_zeros(const FollowerGraph& graph, int n,
                                ExecPolicy policy = ExecPolicy::parallel);

// Natural log of a positive big integer via mantissa + 2-exponent.
double log_mpz(const mpz_class& z);

struct FreqEstimate {
  double value = 0.0;    // log N(n, k*) / (n log beta), k* = round(a n)
  int k = 0;             // the rounded zero-count actually used
  double window_max = 0.0;  // max over k in [floor(an)-1, ceil(an)+1]
  bool empty_class = false; // N(n, k*) = 0
};

// Finite-n surrogate for the dimension of the digit-frequency set; converges
// with O(log n / n) error. round uses nearest-integer, ties to even.
FreqEstimate freq_dim_estimate(const FollowerGraph& graph, int n, double a,
                               const BetaSystem& sys);

// Same estimate from a precomputed table (lets one DP serve many a).
FreqEstimate freq_dim_estimate(const CountTable& table, double a,
                               const BetaSystem& sys);

}  // namespace betadim
