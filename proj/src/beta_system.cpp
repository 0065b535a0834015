#include "betadim/beta_system.hpp"

#include <cmath>
#include <stdexcept>

#include "betadim/expansion.hpp"

namespace betadim {

// Root of beta^m = beta^{m-1} + ... + beta + 1 on (1,2), i.e. the unique
// solution of f(beta) = sum_{j=1..m} beta^{-j} = 1.  f is strictly
// decreasing on (1,2), so bisection brackets the root and a few Newton
// steps polish it to ~1 ulp.
double pseudo_golden_root(int m) {
  if (m < 2) throw std::invalid_argument("pseudo_golden_root: order must be >= 2");
  if (m == 2) return (1.0 + std::sqrt(5.0)) / 2.0;
  auto f = [m](double b) {
    // Horner form of sum_{j=1..m} b^{-j} - 1
    double inv = 1.0 / b;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s = (s + 1.0) * inv;
    return s - 1.0;
  };
  double lo = 1.5, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-12) break;
  }
  double b = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    // f'(b) = -sum j*b^{-j-1}
    double inv = 1.0 / b, powj = 1.0, fv = 0.0, dv = 0.0;
    for (int j = 1; j <= m; ++j) {
      powj *= inv;  // b^{-j}
      fv += powj;
      dv -= j * powj * inv;
    }
    fv -= 1.0;
    double step = fv / dv;
    b -= step;
    if (std::fabs(step) < 1e-16 * b) break;
  }
  return b;
}

BetaSystem BetaSystem::pseudo_golden(int m) {
  if (m < 2 || m > 64)
    throw std::invalid_argument("pseudo_golden: order out of range [2,64]");
  BetaSystem sys;
  sys.beta = pseudo_golden_root(m);
  sys.alphabet_max = 1;
  sys.pseudo_golden_order = m;
  // d(1, beta) = 1^m 0^infty (finite expansion of length m)
  sys.eps_one = DigitWord::repeat(DigitWord{1}, static_cast<std::size_t>(m));
  sys.finite_length = m;
  // quasi-greedy expansion is (1^{m-1} 0)^infty
  DigitWord period = sys.eps_one;
  period.digits.back() = 0;
  sys.quasi_greedy_period = period;
  return sys;
}

BetaSystem BetaSystem::integer(int b) {
  if (b < 2) throw std::invalid_argument("integer: base must be >= 2");
  BetaSystem sys;
  sys.beta = static_cast<double>(b);
  sys.alphabet_max = b - 1;
  sys.is_integer = true;
  // convention: d*(1, b) = (b-1)^infty, no finite length recorded
  sys.quasi_greedy_period = DigitWord{b - 1};
  sys.eps_one = DigitWord{b - 1};  // leading digit pattern; see expand_one
  return sys;
}

BetaSystem BetaSystem::from_beta(double beta, int probe_digits) {
  if (!(beta > 1.0)) throw std::invalid_argument("from_beta: need beta > 1");
  double nearest_int = std::nearbyint(beta);
  if (nearest_int >= 2.0 && std::fabs(beta - nearest_int) <= 1e-9)
    return integer(static_cast<int>(nearest_int));
  for (int m = 2; m <= 64; ++m) {
    double r = pseudo_golden_root(m);
    if (std::fabs(beta - r) <= 1e-9) return pseudo_golden(m);
    if (r > beta + 1e-9 && m > 2) break;  // roots increase with m towards 2
  }
  // Generic non-integer beta: probe the expansion of 1 numerically.
  BetaSystem sys;
  sys.beta = beta;
  sys.alphabet_max = static_cast<int>(std::ceil(beta)) - 1;
  ExpandOneResult probe = expand_one_raw(beta, sys.alphabet_max, probe_digits);
  sys.eps_one = probe.digits;
  if (probe.finite) {
    sys.finite_length = probe.finite_length;
    // quasi-greedy: (eps_1 ... eps_{L-1} (eps_L - 1))^infty
    DigitWord period = probe.digits.prefix(static_cast<std::size_t>(probe.finite_length));
    period.digits.back() = static_cast<std::uint8_t>(period.digits.back() - 1);
    sys.quasi_greedy_period = period;
  }
  return sys;
}

int BetaSystem::quasi_greedy_digit(std::size_t i) const {
  if (i == 0) throw std::out_of_range("quasi_greedy_digit: indices are 1-based");
  if (!quasi_greedy_period.empty()) {
    return quasi_greedy_period.digits[(i - 1) % quasi_greedy_period.size()];
  }
  // d(1,beta) infinite: the quasi-greedy expansion equals it, but we only
  // hold a finite probe prefix.
  if (i <= eps_one.size()) return eps_one.digits[i - 1];
  throw std::out_of_range("quasi_greedy_digit: index past stored prefix");
}

}  // namespace betadim
