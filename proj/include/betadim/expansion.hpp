#pragma once
// Greedy beta-expansions, lexicographic admissibility (Parry's criterion),
// projection back to [0,1], and the interval geometry of cylinders.

#include <vector>

#include "betadim/beta_system.hpp"

namespace betadim {

// T(x) = beta*x - floor(beta*x). Values of beta*x within 1e-12 of an integer
// are treated as that integer (floor-snap guard), so orbits that hit 0 or 1
// exactly in real arithmetic do so in doubles too. Domain error outside [0,1].
double beta_transform(double x, const BetaSystem& sys);

// First n greedy digits of x in base beta, x in [0,1).
DigitWord greedy_expand(double x, const BetaSystem& sys, int n);

struct ExpandOneResult {
  DigitWord digits;
  bool finite = false;     // orbit of 1 reached 0 within tolerance
  int finite_length = 0;   // index of the last nonzero digit when finite
};

// First n digits of the expansion of 1 by the greedy recursion started at
// x = 1, plus finiteness detection. Integer beta returns (beta-1)^n with
// finite = false (degenerate convention stored in the system).
ExpandOneResult expand_one(const BetaSystem& sys, int n);

// Same probe without a constructed system: greedy digits of 1 for a bare
// beta with the given largest digit. Used while classifying a raw beta.
ExpandOneResult expand_one_raw(double beta, int alphabet_max, int n);

// First n digits of the quasi-greedy expansion of 1: the expansion of 1
// itself when infinite, else the periodic word eps_1..eps_{m-1}(eps_m - 1)
// repeated.
DigitWord quasi_greedy_one(const BetaSystem& sys, int n);

// Parry admissibility for finite words: every suffix of w is
// lexicographically <= the quasi-greedy expansion of 1 truncated to the
// suffix length. Characterizes the factors of the beta-shift.
bool is_legal_word(const DigitWord& w, const BetaSystem& sys);

// sum_i w_i beta^{-i}, evaluated by Horner from the tail.
double project(const DigitWord& w, const BetaSystem& sys);

// beta^{-k} with k the first index of disagreement (0-based); 0 when the
// words agree over their whole (equal) length.
double sequence_distance(const DigitWord& u, const DigitWord& v,
                         const BetaSystem& sys);

struct CylinderInterval {
  DigitWord word;
  int order = 0;
  double left = 0.0;
  double right = 0.0;
  bool empty = true;
};

// Interval of x in [0,1) whose greedy expansion starts with w: left is
// project(w), right adds beta^{-|w|} times the projection of the maximal
// admissible tail (truncated at depth 64, an error below beta^{-64}).
// Illegal words give the empty marker.
CylinderInterval cylinder_interval(const DigitWord& w, const BetaSystem& sys);

// Number of order-n cylinders whose interval meets the ball
// B(x, beta^{-n}) intersected with [0,1). DFS over legal words with interval
// pruning; 1 <= n <= 20.
int covering_count(double x, int n, const BetaSystem& sys);

// All legal words of length n, in lexicographic order (DFS). Intended for
// small n (graph states, partition checks, brute-force oracles).
std::vector<DigitWord> enumerate_legal_words(const BetaSystem& sys, int n);

namespace detail {

// Incremental Parry checker. Tracks the suffix start offsets whose digits so
// far coincide with a prefix of the quasi-greedy expansion of 1 -- only those
// suffixes can still turn illegal; strictly smaller ones stay legal forever.
// Copyable, so DFS can branch by value.
class AdmissTracker {
 public:
  explicit AdmissTracker(const BetaSystem& sys) : sys_(&sys) {}

  // Try to append digit d. Returns false (state unchanged) if the extended
  // word would be inadmissible.
  bool push(int d);

  // Seed from an existing legal word.
  bool push_word(const DigitWord& w);

  std::size_t length() const { return len_; }

 private:
  const BetaSystem* sys_;
  std::size_t len_ = 0;
  std::vector<std::size_t> eq_;  // offsets k: word[k..) == quasi-greedy prefix
};

}  // namespace detail
}  // namespace betadim
