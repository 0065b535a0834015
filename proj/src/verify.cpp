#include "betadim/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "betadim/dimension.hpp"
#include "betadim/expansion.hpp"
#include "betadim/markov.hpp"

namespace betadim {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

double uniform01(std::uint64_t& state) {
  // xorshift64* -- fixed algorithm so seeds reproduce across platforms
  state ^= state >> 12;
  state ^= state << 25;
  state ^= state >> 27;
  std::uint64_t z = state * 2685821657736338717ull;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

MarkovMeasure random_markov_measure(const FollowerGraph& graph,
                                    std::uint64_t seed) {
  int k = graph.order - 1;
  if (k < 0) throw std::invalid_argument("random_markov_measure: bad graph");
  std::uint64_t rng = seed ^ 0x9e3779b97f4a7c15ull;
  // burn a few steps so nearby seeds decorrelate
  for (int i = 0; i < 8; ++i) uniform01(rng);

  MarkovMeasure mu;
  mu.order = k;
  unsigned ns = 1u << k;
  mu.p.assign(ns, 0.0);
  mu.step.assign(ns, {0.0, 0.0});
  for (unsigned s = 0; s < ns; ++s) mu.step[s][0] = 1.0;  // default rows

  // exponential weights on the out-edges of every graph state
  std::vector<unsigned> state_code(graph.states.size());
  std::vector<std::array<double, 2>> weight(graph.states.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < graph.states.size(); ++i)
    state_code[i] = word_bits(graph.states[i]);
  for (const auto& e : graph.edges) {
    double u = uniform01(rng);
    weight[static_cast<std::size_t>(e.from)][e.digit] =
        -std::log(1.0 - u);  // Exp(1) draw, strictly positive
  }
  for (std::size_t i = 0; i < graph.states.size(); ++i) {
    double tot = weight[i][0] + weight[i][1];
    if (tot <= 0.0) continue;  // unreachable: every state has an out-edge
    mu.step[state_code[i]][0] = weight[i][0] / tot;
    mu.step[state_code[i]][1] = weight[i][1] / tot;
  }

  // stationary vector by iterating p <- pP on the legal states
  std::vector<double> p(ns, 0.0);
  for (unsigned code : state_code) p[code] = 1.0 / static_cast<double>(state_code.size());
  std::vector<double> q(ns, 0.0);
  for (int it = 0; it < 100000; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (unsigned s = 0; s < ns; ++s) {
      if (p[s] == 0.0) continue;
      q[mu.next_state(s, 0)] += p[s] * mu.step[s][0];
      q[mu.next_state(s, 1)] += p[s] * mu.step[s][1];
    }
    double delta = 0.0;
    for (unsigned s = 0; s < ns; ++s) delta = std::max(delta, std::fabs(q[s] - p[s]));
    p.swap(q);
    if (delta < 1e-16) break;
  }
  mu.p = p;
  return mu;
}

namespace {

CheckResult make_check(std::string name, double residual, double threshold,
                       std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.threshold = threshold;
  c.passed = residual <= threshold;
  c.detail = std::move(detail);
  return c;
}

std::vector<BetaSystem> sample_systems() {
  return {BetaSystem::golden(), BetaSystem::pseudo_golden(3),
          BetaSystem::pseudo_golden(4), BetaSystem::integer(2)};
}

}  // namespace

VerifyReport verify_expansion(const VerifyConfig& cfg) {
  VerifyReport rep;
  int n_samples = std::max(cfg.samples, 10);

  double worst60 = 0.0, worst30 = 0.0;
  int illegal = 0;
  std::uint64_t rng = cfg.seed;
  for (const BetaSystem& sys : sample_systems()) {
    double bound60 = std::pow(sys.beta, -60.0) + 1e-13;
    double bound30 = std::pow(sys.beta, -30.0);
    for (int i = 0; i < n_samples; ++i) {
      double x = uniform01(rng);
      DigitWord w60 = greedy_expand(x, sys, 60);
      DigitWord w30 = w60.prefix(30);
      worst60 = std::max(worst60, std::fabs(project(w60, sys) - x) / bound60);
      worst30 = std::max(worst30, std::fabs(project(w30, sys) - x) / bound30);
      if (!is_legal_word(w60, sys)) ++illegal;
    }
  }
  rep.checks.push_back(make_check("round-trip-depth-60", worst60, 1.0,
                                  "|project(greedy(x)) - x| relative to beta^-60 + 1e-13"));
  rep.checks.push_back(make_check("round-trip-depth-30-strict", worst30, 1.0,
                                  "|project(greedy(x)) - x| relative to beta^-30"));
  rep.checks.push_back(make_check("greedy-outputs-legal", illegal, 0.0,
                                  "greedy digits must satisfy the lexicographic criterion"));

  int bad_one = 0;
  for (int m = 2; m <= 8; ++m) {
    BetaSystem sys = BetaSystem::pseudo_golden(m);
    ExpandOneResult r = expand_one(sys, 4 * m);
    bool ok = r.finite && r.finite_length == m;
    for (int i = 0; ok && i < 4 * m; ++i) {
      int want = i < m ? 1 : 0;
      if (r.digits.digits[static_cast<std::size_t>(i)] != want) ok = false;
    }
    if (!ok) ++bad_one;
  }
  rep.checks.push_back(make_check("expansion-of-one-terminates", bad_one, 0.0,
                                  "digits of 1 are 1^m 0... for the order-m root"));

  int bad_qg = 0;
  for (const BetaSystem& sys : sample_systems())
    if (!is_legal_word(quasi_greedy_one(sys, 200), sys)) ++bad_qg;
  rep.checks.push_back(make_check("quasi-greedy-prefixes-legal", bad_qg, 0.0));
  return rep;
}

VerifyReport verify_covering(const VerifyConfig& cfg) {
  VerifyReport rep;
  int n_samples = std::max(cfg.samples, 10);
  std::vector<BetaSystem> systems = {BetaSystem::golden(),
                                     BetaSystem::pseudo_golden(3),
                                     BetaSystem::pseudo_golden(4)};
  std::uint64_t rng = cfg.seed + 1;
  double worst_ratio = 0.0;
  for (const BetaSystem& sys : systems) {
    for (int i = 0; i < n_samples; ++i) {
      double x = uniform01(rng);
      int n = 1 + static_cast<int>(uniform01(rng) * 14.0);
      n = std::min(n, 14);
      int c = covering_count(x, n, sys);
      worst_ratio = std::max(worst_ratio, double(c) / (4.0 * (n + 1)));
    }
  }
  rep.checks.push_back(make_check("covering-count-bound", worst_ratio, 1.0,
                                  "cylinders meeting B(x, beta^-n) stay within 4(n+1)"));

  // order-n cylinders tile [0,1): consecutive intervals abut, the first
  // starts at 0, the last reaches 1 (up to the depth-64 tail truncation)
  double worst_gap = 0.0;
  for (const BetaSystem& sys : systems) {
    for (int n = 1; n <= 8; ++n) {
      std::vector<DigitWord> words = enumerate_legal_words(sys, n);
      double prev_right = 0.0;
      for (const DigitWord& w : words) {
        CylinderInterval ci = cylinder_interval(w, sys);
        worst_gap = std::max(worst_gap, std::fabs(ci.left - prev_right));
        prev_right = ci.right;
      }
      worst_gap = std::max(worst_gap, std::fabs(prev_right - 1.0));
    }
  }
  rep.checks.push_back(make_check("cylinders-tile-unit-interval", worst_gap, 1e-12));

  double worst_member = 0.0;
  for (const BetaSystem& sys : systems) {
    for (int i = 0; i < n_samples; ++i) {
      double x = uniform01(rng);
      int n = 1 + static_cast<int>(uniform01(rng) * 14.0);
      n = std::min(n, 14);
      DigitWord w = greedy_expand(x, sys, n);
      CylinderInterval ci = cylinder_interval(w, sys);
      if (ci.empty) {
        worst_member = 1.0;
        continue;
      }
      worst_member = std::max(worst_member, ci.left - x);
      worst_member = std::max(worst_member, x - ci.right);
    }
  }
  rep.checks.push_back(make_check("point-inside-own-cylinder", worst_member, 1e-12));
  return rep;
}

VerifyReport verify_markov(const VerifyConfig& cfg) {
  VerifyReport rep;
  int n_meas = std::max(cfg.samples / 10, 10);

  double stat_res = 0.0, ext_res = 0.0, ent_res = 0.0, mono_res = 0.0,
         upper_res = 0.0;
  for (int m = 3; m <= 5; ++m) {
    BetaSystem sys = BetaSystem::pseudo_golden(m);
    FollowerGraph graph = build_follower_graph(sys);
    double logb = std::log(sys.beta);
    for (int i = 0; i < n_meas; ++i) {
      MarkovMeasure mu = random_markov_measure(graph, cfg.seed + 1000 * m + i);
      stat_res = std::max(stat_res, stationarity_residual(mu));

      // cylinder table of mu, then markovize must reproduce mu
      CylinderMeasure cm(m + 2);
      for (int L = 1; L <= m + 2; ++L)
        for (unsigned bits = 0; bits < (1u << L); ++bits)
          cm.level[static_cast<std::size_t>(L)][bits] =
              measure_of_word(mu, bits_word(L, bits));
      MarkovMeasure back = markovize(cm, m);
      for (int L = 1; L <= m; ++L)
        for (unsigned bits = 0; bits < (1u << L); ++bits)
          ext_res = std::max(ext_res,
                             std::fabs(measure_of_word(back, bits_word(L, bits)) -
                                       cm.mass_bits(L, bits)));

      ent_res = std::max(ent_res, std::fabs(markov_entropy(back) -
                                            conditional_entropy(cm, m)));

      // entropy of any stationary measure with zero-marginal a is bounded
      // by the dimension formula value
      double a = measure_of_word(mu, DigitWord{0});
      DimResult dr = freq_dim({sys, a});
      upper_res = std::max(upper_res, markov_entropy(mu) - logb * dr.dim);

      // conditional entropy is non-increasing in the window length; make
      // the input non-Markov by mixing two random measures
      MarkovMeasure mu2 = random_markov_measure(graph, cfg.seed + 777 + 1000 * m + i);
      CylinderMeasure mix(m + 2);
      for (int L = 1; L <= m + 2; ++L)
        for (unsigned bits = 0; bits < (1u << L); ++bits)
          mix.level[static_cast<std::size_t>(L)][bits] =
              0.5 * (cm.mass_bits(L, bits) +
                     measure_of_word(mu2, bits_word(L, bits)));
      double prev = conditional_entropy(mix, 2);
      for (int w = 3; w <= m + 1; ++w) {
        double cur = conditional_entropy(mix, w);
        mono_res = std::max(mono_res, cur - prev);
        prev = cur;
      }
    }
  }
  rep.checks.push_back(make_check("stationarity-of-random-measures", stat_res, 1e-12));
  rep.checks.push_back(make_check("markovize-reproduces-cylinders", ext_res, 1e-13));
  rep.checks.push_back(make_check("entropy-equals-conditional-entropy", ent_res, 1e-12));
  rep.checks.push_back(make_check("conditional-entropy-monotone", mono_res, 1e-12));
  rep.checks.push_back(make_check("entropy-upper-bound", upper_res, 1e-10,
                                  "h(mu) <= log(beta) * dim for stationary mu"));

  // validation of the i.i.d. measure on the full shift: zero residuals
  CylinderMeasure bern = CylinderMeasure::bernoulli(0.37, 6);
  MeasureDiagnostics diag = validate_cylinder_measure(bern, BetaSystem::integer(2));
  rep.checks.push_back(make_check("bernoulli-measure-valid", diag.worst(), 1e-14));
  return rep;
}

VerifyReport verify_dimension(const VerifyConfig& cfg) {
  VerifyReport rep;

  BetaSystem m3 = BetaSystem::pseudo_golden(3);
  double closed_delta = 0.0;
  for (int i = 34; i <= 99; ++i) {
    double a = i / 100.0;
    closed_delta = std::max(closed_delta,
                            std::fabs(maximize_f(3, a).dim - closed_form_m3(m3, a)));
  }
  rep.checks.push_back(make_check("optimizer-matches-closed-form-m3", closed_delta, 1e-9));

  double press_delta = 0.0;
  for (int m = 3; m <= 5; ++m) {
    FollowerGraph graph = build_follower_graph(BetaSystem::pseudo_golden(m));
    for (int j = 1; j <= 20; ++j) {
      double a = 1.0 / m + j * (1.0 - 1.0 / m) / 21.0;
      press_delta = std::max(press_delta,
                             std::fabs(maximize_f(m, a).dim -
                                       dim_via_pressure(graph, a).dim));
    }
  }
  rep.checks.push_back(make_check("optimizer-matches-pressure-oracle", press_delta, 1e-7));

  // analytic gradient vs central differences at random interior points
  std::uint64_t rng = cfg.seed + 2;
  double grad_rel = 0.0;
  for (int m = 3; m <= 6; ++m) {
    for (int trial = 0; trial < 25; ++trial) {
      double a = 0.45 + 0.15 * uniform01(rng);
      std::vector<double> x = feasible_point(m, a);
      // pull toward a random interior direction by mixing with the
      // midpoint value of the chain coordinates
      std::vector<double> g0 = maximize_f(m, a).argmax;
      double lam = 0.2 + 0.6 * uniform01(rng);
      for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = lam * x[k] + (1.0 - lam) * g0[k];
      std::vector<double> g = f_a_gradient(m, a, x);
      const double h = 1e-6;
      for (std::size_t k = 0; k < x.size(); ++k) {
        std::vector<double> xp(x), xm(x);
        xp[k] += h;
        xm[k] -= h;
        double fd = (f_a_eval(m, a, xp) - f_a_eval(m, a, xm)) / (2.0 * h);
        double scale = std::max({1.0, std::fabs(g[k]), std::fabs(fd)});
        grad_rel = std::max(grad_rel, std::fabs(g[k] - fd) / scale);
      }
    }
  }
  rep.checks.push_back(make_check("gradient-matches-finite-differences", grad_rel, 1e-5));

  // concavity of f_a along random segments
  double concavity = 0.0;
  for (int m = 3; m <= 5; ++m) {
    for (int trial = 0; trial < 200; ++trial) {
      double a = 1.0 / m + (1.0 - 1.0 / m) * (0.05 + 0.9 * uniform01(rng));
      std::vector<double> u = maximize_f(m, a).argmax;
      std::vector<double> fp = feasible_point(m, a);
      std::vector<double> v(u.size());
      double mix = uniform01(rng);
      for (std::size_t k = 0; k < u.size(); ++k)
        v[k] = mix * fp[k] + (1.0 - mix) * u[k];
      double lam = uniform01(rng);
      std::vector<double> w(u.size());
      for (std::size_t k = 0; k < u.size(); ++k)
        w[k] = lam * u[k] + (1.0 - lam) * v[k];
      double lhs = f_a_eval(m, a, w);
      double rhs = lam * f_a_eval(m, a, u) + (1.0 - lam) * f_a_eval(m, a, v);
      concavity = std::max(concavity, rhs - lhs);
    }
  }
  rep.checks.push_back(make_check("objective-concave-on-segments", concavity, 1e-12));

  double endpoint = 0.0;
  for (int m = 3; m <= 5; ++m) {
    BetaSystem sys = BetaSystem::pseudo_golden(m);
    endpoint = std::max(endpoint, std::fabs(freq_dim({sys, 1.0 / m}).dim));
    endpoint = std::max(endpoint, std::fabs(freq_dim({sys, 1.0}).dim));
  }
  rep.checks.push_back(make_check("endpoint-dimensions-exactly-zero", endpoint, 0.0));

  double full_dim = 0.0;
  double astar_golden = (5.0 + std::sqrt(5.0)) / 10.0;
  full_dim = std::max(full_dim, std::fabs(golden_dim(astar_golden) - 1.0));
  full_dim = std::max(full_dim, std::fabs(eggleston_dim(0.5) - 1.0));
  rep.checks.push_back(make_check("full-dimension-at-parry-frequency", full_dim, 1e-9));
  return rep;
}

VerifyReport verify_all(const VerifyConfig& cfg) {
  VerifyReport rep;
  for (auto fn : {verify_expansion, verify_covering, verify_markov, verify_dimension}) {
    VerifyReport sub = fn(cfg);
    rep.checks.insert(rep.checks.end(), sub.checks.begin(), sub.checks.end());
  }
  return rep;
}

void print_report(const VerifyReport& report, std::ostream& os) {
  for (const auto& c : report.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%s] %-40s residual=%.3g threshold=%.3g",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                  c.threshold);
    os << buf;
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
}

}  // namespace betadim
