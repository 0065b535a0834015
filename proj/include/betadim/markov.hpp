#pragma once
// k-step Markov measures on binary beta-shifts: cylinder-mass tables,
// validation, Markovization of a cylinder measure (ratio transition
// probabilities), entropy, and the construction of the entropy-maximizing
// measure for a prescribed zero frequency.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "betadim/beta_system.hpp"

namespace betadim {

// -x log x with phi(0) = 0; throws std::domain_error on negative input.
double phi(double x);

// Binary words of fixed length index bit vectors big-endian, so numeric
// order equals lexicographic order.
unsigned word_bits(const DigitWord& w);
DigitWord bits_word(int len, unsigned bits);

// Masses of all binary cylinders up to a maximal order; level[L][bits] is
// the mass of the length-L word encoded by bits. level[0][0] = 1.
struct CylinderMeasure {
  int max_order = 0;
  std::vector<std::vector<double>> level;

  explicit CylinderMeasure(int L);
  double mass(const DigitWord& w) const;
  double mass_bits(int len, unsigned bits) const { return level[len][bits]; }
  void set(const DigitWord& w, double v);

  // mass(w) = p0^{#zeros} (1-p0)^{#ones}; the i.i.d. measure with digit-0
  // probability p0.
  static CylinderMeasure bernoulli(double p0, int L);
};

struct MeasureDiagnostics {
  double additivity_residual = 0.0;  // max |mass(w0)+mass(w1)-mass(w)|
  double shift_residual = 0.0;       // max |mass(0w)+mass(1w)-mass(w)|
  double support_violation = 0.0;    // max mass on an illegal word
  double norm_residual = 0.0;        // |mass(empty)-1|
  double worst() const;
};

MeasureDiagnostics validate_cylinder_measure(const CylinderMeasure& cm,
                                             const BetaSystem& sys);

// Stationary Markov measure of order k on binary words. p covers all 2^k
// words (zero-mass states retained so index sets are stable); the transition
// matrix is stored by its only structurally-allowed entries, step[s][d] =
// P(s -> tail(s).d). Entries for non-overlapping state pairs are identically
// zero and never stored.
struct MarkovMeasure {
  int order = 0;
  std::vector<double> p;                     // size 2^order
  std::vector<std::array<double, 2>> step;   // size 2^order

  int n_states() const { return 1 << order; }
  // target state index of appending digit d to state s
  unsigned next_state(unsigned s, int d) const {
    return ((s << 1) | unsigned(d)) & ((1u << order) - 1u);
  }
};

// Order-(m-1) Markovization: p from the (m-1)-level masses, transitions from
// the ratio mass(i1..im)/mass(i1..i_{m-1}) when the denominator is positive.
// Zero-mass rows (0/0 included) get the deterministic 0-continuation, a
// stationarity-preserving completion. Requires cm.max_order >= m.
MarkovMeasure markovize(const CylinderMeasure& cm, int m);

// Chain-product extension for |w| >= order; marginal sum of p for shorter w.
double measure_of_word(const MarkovMeasure& mu, const DigitWord& w);

// -sum_s p_s sum_d step[s][d] log step[s][d], with 0 log 0 = 0.
double markov_entropy(const MarkovMeasure& mu);

// max_t |(pP)_t - p_t|; also folds in row-sum defects of P.
double stationarity_residual(const MarkovMeasure& mu);

// sum_{|w|=m-1} mass log mass - sum_{|w|=m} mass log mass; equals the
// entropy of markovize(cm, m).
double conditional_entropy(const CylinderMeasure& cm, int m);

// Cylinder masses (orders <= m) of the entropy-maximizing measure with
// zero frequency a, built from the parameter vector y of length m-2:
// mass(0)=a, mass(00)=a-y1, mass(01)=mass(10)=y1, ..., mass(1^m)=0, with all
// remaining words filled in by the conditional-independence rule
// mass(uwv) = mass(uw) mass(wv) / mass(w) (0/0 = 0). Throws
// std::domain_error when y produces a negative mass (y outside the domain).
CylinderMeasure build_max_cylinder_measure(int m, double a,
                                           const std::vector<double>& y);

// The same construction Markovized to order m-1. 2 <= m <= 12; for m = 2 the
// table degenerates to mass(00)=2a-1, mass(01)=mass(10)=1-a, mass(11)=0.
MarkovMeasure build_max_measure(int m, double a, const std::vector<double>& y);

// JSON schema {"order": k, "states": [...], "p": {...}, "P": {state: {state:
// real}}}; doubles round-trip exactly (shortest-round-trip decimals).
std::string markov_to_json(const MarkovMeasure& mu);
MarkovMeasure markov_from_json(const std::string& text);

}  // namespace betadim
