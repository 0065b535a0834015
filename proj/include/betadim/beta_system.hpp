#pragma once
// A beta-expansion system: the base beta > 1 together with the expansion of 1,
// which is the data that decides admissibility of digit strings.

#include <optional>

#include "betadim/digit_word.hpp"

namespace betadim {

// Positive root in (1,2) of x^m = x^{m-1} + ... + x + 1, m >= 2.
// m=2 is the golden ratio, m=3 the tribonacci constant; root -> 2 as m grows.
// Bisection bracket then Newton, refined to ~1 ulp (well below 1e-14).
double pseudo_golden_root(int m);

struct BetaSystem {
  double beta = 0.0;
  int alphabet_max = 0;  // largest digit, ceil(beta) - 1

  // Greedy expansion of 1, stored as a finite prefix. For integer beta the
  // greedy orbit of 1 would emit the out-of-alphabet digit beta itself, so the
  // system stores the degenerate convention instead (see integer()).
  DigitWord eps_one;

  // Set to m when the expansion of 1 is finite: eps_m != 0, eps_j = 0 for j>m.
  std::optional<int> finite_length;

  // Period of the quasi-greedy expansion of 1 when it is eventually periodic:
  // eps_1 ... eps_{m-1} (eps_m - 1) for finite expansions, (beta-1) for
  // integer beta. Empty for a generic infinite expansion (prefix-only mode).
  DigitWord quasi_greedy_period;

  bool is_integer = false;
  std::optional<int> pseudo_golden_order;  // m when eps(1,beta) = 1^m 0^inf

  static BetaSystem pseudo_golden(int m);  // 2 <= m <= 64
  static BetaSystem golden() { return pseudo_golden(2); }
  static BetaSystem integer(int b);  // b >= 2, full shift on {0,...,b-1}

  // Generic beta > 1, not an integer: expands 1 numerically (probe_digits
  // terms), detects finite expansions within the floor-snap tolerance.
  // Admissibility checks for systems whose expansion of 1 never terminates
  // are limited to the stored prefix depth.
  static BetaSystem from_beta(double beta, int probe_digits = 64);

  // i-th digit (1-based) of the quasi-greedy expansion of 1. O(1) and
  // unbounded for periodic systems; throws std::out_of_range past the stored
  // prefix of a generic infinite expansion.
  int quasi_greedy_digit(std::size_t i) const;

  bool is_pseudo_golden() const { return pseudo_golden_order.has_value(); }
};

}  // namespace betadim
