#pragma once
// 240-bit greedy-expansion oracle (tests only). Recomputes digits with MPFR
// so the double-precision pipeline has something independent to disagree
// with. Digits are only certified while the exact orbit stays clear of the
// integer thresholds where a double orbit could legitimately round the other
// way; `trusted` is the length of that certified prefix.

#include <vector>

namespace betadim {
struct BetaSystem;
}

namespace oracle {

struct ExactExpansion {
  std::vector<int> digits;
  int trusted = 0;  // digits[0..trusted) are boundary-safe
};

// beta recomputed at full precision from the system's classification
// (pseudo-golden order, integer base); generic doubles are used as-is.
ExactExpansion exact_greedy(double x, const betadim::BetaSystem& sys, int n,
                            double guard = 1e-5);

// The pseudo-golden root of order m at 240-bit precision, rounded to double.
// Agrees with the library root to <= 1 ulp, asserted in the expansion tests.
double exact_pseudo_golden_root(int m);

}  // namespace oracle
