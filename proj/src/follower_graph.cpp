#include "betadim/follower_graph.hpp"

#include <cfenv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "betadim/expansion.hpp"

namespace betadim {

namespace {

int zero_count(const DigitWord& w) {
  int z = 0;
  for (std::uint8_t d : w.digits)
    if (d == 0) ++z;
  return z;
}

unsigned state_bits(const DigitWord& w) {
  unsigned b = 0;
  for (std::uint8_t d : w.digits) b = (b << 1) | (d & 1u);
  return b;
}

void bfs_mark(const std::vector<std::vector<int>>& adj, std::vector<char>& seen) {
  std::vector<int> stack{0};
  seen.assign(adj.size(), 0);
  seen[0] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : adj[s]) {
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
}

}  // namespace

FollowerGraph build_follower_graph(const BetaSystem& sys) {
  FollowerGraph g;
  g.sys = sys;

  if (sys.is_integer) {
    if (sys.alphabet_max != 1)
      throw std::domain_error("build_follower_graph: only base 2 among integers");
    // Full 2-shift: window 1, a single (empty-word) state, two loops.
    g.order = 1;
    g.states = {DigitWord{}};
    g.edges = {{0, 0, 0}, {0, 0, 1}};
    g.in_edges = {{0, 1}};
    g.start_weights = {1};
    g.strongly_connected = true;
    return g;
  }

  if (sys.alphabet_max != 1)
    throw std::domain_error("build_follower_graph: digits must be {0,1}");
  if (!sys.finite_length)
    throw std::domain_error(
        "build_follower_graph: expansion of 1 must terminate");
  int m = *sys.finite_length;
  if (m < 2) throw std::domain_error("build_follower_graph: window below 2");
  if (m - 1 > 24)
    throw std::domain_error("build_follower_graph: state space too large");

  g.order = m;
  g.states = enumerate_legal_words(sys, m - 1);
  std::vector<int> index(1u << (m - 1), -1);
  for (int i = 0; i < static_cast<int>(g.states.size()); ++i)
    index[state_bits(g.states[i])] = i;

  unsigned mask = (1u << (m - 1)) - 1;
  for (int i = 0; i < static_cast<int>(g.states.size()); ++i) {
    for (int d = 0; d <= 1; ++d) {
      DigitWord w = g.states[i];
      w.push_back(d);
      if (!is_legal_word(w, sys)) continue;
      // target window drops the first digit and appends d; as an m-word is
      // legal, its suffix is a legal (m-1)-word, hence a known state
      int to = index[((state_bits(g.states[i]) << 1) | unsigned(d)) & mask];
      g.edges.push_back({i, to, static_cast<std::uint8_t>(d)});
    }
  }
  g.in_edges.assign(g.states.size(), {});
  std::vector<std::vector<int>> out(g.states.size()), in(g.states.size());
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    g.in_edges[g.edges[e].to].push_back(e);
    out[g.edges[e].from].push_back(g.edges[e].to);
    in[g.edges[e].to].push_back(g.edges[e].from);
  }
  g.start_weights.assign(g.states.size(), 1);

  std::vector<char> fwd, bwd;
  bfs_mark(out, fwd);
  bfs_mark(in, bwd);
  g.strongly_connected = true;
  for (std::size_t s = 0; s < g.states.size(); ++s)
    if (!fwd[s] || !bwd[s]) g.strongly_connected = false;
  return g;
}

namespace {

// Words shorter than the DP warm-up length are counted by direct enumeration.
CountTable enumerate_table(const BetaSystem& sys, int n) {
  CountTable t;
  t.n = n;
  t.counts.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
  for (const DigitWord& w : enumerate_legal_words(sys, n))
    t.counts[static_cast<std::size_t>(zero_count(w))] += 1;
  return t;
}

}  // namespace

mpz_class count_words(const FollowerGraph& graph, int n) {
  if (n < 1) throw std::invalid_argument("count_words: n must be >= 1");
  int warm = graph.order - 1;
  if (n < warm)
    return mpz_class(enumerate_legal_words(graph.sys, n).size());
  // cur[s] = number of legal length-j words whose final window is state s
  std::vector<mpz_class> cur(graph.states.size(), mpz_class(1));
  std::vector<mpz_class> next(graph.states.size());
  for (int j = warm; j < n; ++j) {
    for (auto& v : next) v = 0;
    for (const auto& e : graph.edges) next[e.to] += cur[e.from];
    cur.swap(next);
  }
  mpz_class total = 0;
  for (const auto& v : cur) total += v;
  return total;
}

mpz_class count_words_matrix(const FollowerGraph& graph, int n) {
  if (n < 1) throw std::invalid_argument("count_words_matrix: n must be >= 1");
  int warm = graph.order - 1;
  if (n < warm)
    return mpz_class(enumerate_legal_words(graph.sys, n).size());
  std::size_t ns = graph.states.size();
  // dense multiplicity matrix: A[t][s] = number of edges s -> t
  std::vector<std::vector<mpz_class>> A(ns, std::vector<mpz_class>(ns, mpz_class(0)));
  for (const auto& e : graph.edges) A[e.to][e.from] += 1;
  std::vector<mpz_class> v(ns), w(ns);
  for (std::size_t s = 0; s < ns; ++s) v[s] = graph.start_weights[s];
  for (int step = 0; step < n - warm; ++step) {
    for (std::size_t t = 0; t < ns; ++t) {
      w[t] = 0;
      for (std::size_t s = 0; s < ns; ++s)
        if (A[t][s] != 0) w[t] += A[t][s] * v[s];
    }
    v.swap(w);
  }
  mpz_class total = 0;
  for (const auto& x : v) total += x;
  return total;
}

mpz_class CountTable::total() const {
  mpz_class t = 0;
  for (const auto& c : counts) t += c;
  return t;
}

void CountTable::to_csv(std::ostream& os) const {
  os << "n,k,count\n";
  for (std::size_t k = 0; k < counts.size(); ++k)
    os << n << ',' << k << ',' << counts[k].get_str() << '\n';
}

namespace {

// Shared DP layout: layer[s * (n+1) + k] = number of legal length-j words
// with final window s and k zeros. Warm-up layer at j = order-1 puts one
// word on each state; each step appends one digit along the edges.

void dp_step_serial(const FollowerGraph& g, int n, int j,
                    const std::vector<mpz_class>& cur,
                    std::vector<mpz_class>& next) {
  std::size_t stride = static_cast<std::size_t>(n) + 1;
  int kmax = std::min(j + 1, n);  // zeros after this step can't exceed j+1
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (int k = 0; k <= kmax; ++k) next[s * stride + k] = 0;
  for (const auto& e : g.edges) {
    int shift = e.digit == 0 ? 1 : 0;
    const mpz_class* src = &cur[static_cast<std::size_t>(e.from) * stride];
    mpz_class* dst = &next[static_cast<std::size_t>(e.to) * stride];
    for (int k = 0; k <= std::min(j, n - shift); ++k) {
      if (src[k] != 0) dst[k + shift] += src[k];
    }
  }
}

void dp_step_parallel(const FollowerGraph& g, int n, int j,
                      const std::vector<mpz_class>& cur,
                      std::vector<mpz_class>& next) {
  std::size_t stride = static_cast<std::size_t>(n) + 1;
  int ns = static_cast<int>(g.states.size());
  int kmax = std::min(j + 1, n);
  // gather form: every (state, k) cell is owned by one iteration, so the
  // collapsed loop is race-free
#pragma omp parallel for collapse(2) schedule(static)
  for (int t = 0; t < ns; ++t) {
    for (int k = 0; k <= n; ++k) {
      if (k > kmax) continue;
      mpz_class& acc = next[static_cast<std::size_t>(t) * stride + k];
      acc = 0;
      for (int eid : g.in_edges[static_cast<std::size_t>(t)]) {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        int kk = k - (e.digit == 0 ? 1 : 0);
        if (kk < 0 || kk > j) continue;
        acc += cur[static_cast<std::size_t>(e.from) * stride + kk];
      }
    }
  }
}

}  // namespace

CountTable count_words_by_zeros(const FollowerGraph& graph, int n,
                                ExecPolicy policy) {
  if (n < 1) throw std::invalid_argument("count_words_by_zeros: n must be >= 1");
  int warm = graph.order - 1;
  if (n < warm) return enumerate_table(graph.sys, n);

  std::size_t stride = static_cast<std::size_t>(n) + 1;
  std::vector<mpz_class> cur(graph.states.size() * stride, mpz_class(0));
  std::vector<mpz_class> next(graph.states.size() * stride, mpz_class(0));
  for (std::size_t s = 0; s < graph.states.size(); ++s)
    cur[s * stride + static_cast<std::size_t>(zero_count(graph.states[s]))] = 1;

  for (int j = warm; j < n; ++j) {
    if (policy == ExecPolicy::parallel)
      dp_step_parallel(graph, n, j, cur, next);
    else
      dp_step_serial(graph, n, j, cur, next);
    cur.swap(next);
  }

  CountTable t;
  t.n = n;
  t.counts.assign(stride, mpz_class(0));
  for (std::size_t s = 0; s < graph.states.size(); ++s)
    for (std::size_t k = 0; k < stride; ++k) t.counts[k] += cur[s * stride + k];
  return t;
}

double log_mpz(const mpz_class& z) {
  if (z <= 0) throw std::domain_error("log_mpz: argument must be positive");
  signed long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

FreqEstimate freq_dim_estimate(const CountTable& table, double a,
                               const BetaSystem& sys) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("freq_dim_estimate: a outside [0,1]");
  int n = table.n;
  double denom = n * std::log(sys.beta);
  FreqEstimate est;
  // nearest integer, ties to even (FE_TONEAREST is the default rounding mode)
  int k = static_cast<int>(std::nearbyint(a * n));
  k = std::max(0, std::min(k, n));
  est.k = k;
  if (table.counts[static_cast<std::size_t>(k)] == 0) {
    est.empty_class = true;
    est.value = 0.0;
  } else {
    est.value = log_mpz(table.counts[static_cast<std::size_t>(k)]) / denom;
  }
  int klo = static_cast<int>(std::floor(a * n)) - 1;
  int khi = static_cast<int>(std::ceil(a * n)) + 1;
  klo = std::max(0, klo);
  khi = std::min(n, khi);
  double best = 0.0;
  for (int kk = klo; kk <= khi; ++kk) {
    const mpz_class& c = table.counts[static_cast<std::size_t>(kk)];
    if (c != 0) best = std::max(best, log_mpz(c) / denom);
  }
  est.window_max = best;
  return est;
}

FreqEstimate freq_dim_estimate(const FollowerGraph& graph, int n, double a,
                               const BetaSystem& sys) {
  if (n < 10) throw std::invalid_argument("freq_dim_estimate: n must be >= 10");
  CountTable table = count_words_by_zeros(graph, n);
  return freq_dim_estimate(table, a, sys);
}

}  // namespace betadim
