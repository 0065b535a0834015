#include "betadim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "betadim/markov.hpp"

namespace betadim {

namespace {

// The m facet functions A_j of D_{m,a} as affine forms alpha_j + C_j . x on
// R^{m-2}; they are exactly the phi-arguments of f_a and they sum to a, so
// every facet zeroes one term of the objective.
struct PolytopeForms {
  int m = 0;
  int d = 0;  // ambient dimension m-2
  std::vector<double> alpha;
  std::vector<std::vector<double>> C;  // m rows, d columns

  std::vector<double> eval(std::span<const double> x) const {
    std::vector<double> A(alpha);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < d; ++k) A[j] += C[j][k] * x[k];
    return A;
  }
};

PolytopeForms forms_for(int m, double a) {
  PolytopeForms F;
  F.m = m;
  F.d = m - 2;
  F.alpha.assign(static_cast<std::size_t>(m), 0.0);
  F.C.assign(static_cast<std::size_t>(m), std::vector<double>(F.d, 0.0));
  if (m == 2) {
    F.alpha[0] = 1.0 - a;        // 1 - a
    F.alpha[1] = 2.0 * a - 1.0;  // 2a - 1
    return F;
  }
  // A_0 = a - x_1
  F.alpha[0] = a;
  F.C[0][0] = -1.0;
  // A_i = x_i - x_{i+1}, i = 1 .. m-3
  for (int i = 1; i <= m - 3; ++i) {
    F.C[static_cast<std::size_t>(i)][i - 1] = 1.0;
    F.C[static_cast<std::size_t>(i)][i] = -1.0;
  }
  // A_{m-2} = 1 - a - (x_1 + ... + x_{m-2})
  F.alpha[static_cast<std::size_t>(m) - 2] = 1.0 - a;
  for (int k = 0; k < F.d; ++k) F.C[static_cast<std::size_t>(m) - 2][k] = -1.0;
  // A_{m-1} = x_1 + ... + x_{m-3} + 2 x_{m-2} + a - 1
  F.alpha[static_cast<std::size_t>(m) - 1] = a - 1.0;
  for (int k = 0; k + 1 < F.d; ++k) F.C[static_cast<std::size_t>(m) - 1][k] = 1.0;
  F.C[static_cast<std::size_t>(m) - 1][F.d - 1] = 2.0;
  return F;
}

double eval_f(double a, const std::vector<double>& A) {
  double f = a > 0.0 ? a * std::log(a) : 0.0;
  for (double v : A) f += phi(std::max(v, 0.0));
  return f;
}

// Solve the d x d system M x = b by Gaussian elimination with partial
// pivoting; false when numerically singular.
bool solve_dense(std::vector<std::vector<double>> M, std::vector<double> b,
                 std::vector<double>& x) {
  int d = static_cast<int>(b.size());
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
    if (std::fabs(M[piv][col]) < 1e-12) return false;
    std::swap(M[piv], M[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < d; ++r) {
      double f = M[r][col] / M[col][col];
      for (int c = col; c < d; ++c) M[r][c] -= f * M[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(static_cast<std::size_t>(d), 0.0);
  for (int r = d - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < d; ++c) s -= M[r][c] * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / M[r][r];
  }
  return true;
}

// Cholesky solve of the SPD system S x = b (S = -Hessian); false if S fails
// to be positive definite within roundoff.
bool solve_spd(std::vector<std::vector<double>> S, std::vector<double> b,
               std::vector<double>& x) {
  int d = static_cast<int>(b.size());
  std::vector<std::vector<double>> L(static_cast<std::size_t>(d),
                                     std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = S[i][j];
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      if (i == j) {
        if (s <= 0.0) return false;
        L[i][j] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  std::vector<double> y(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) s -= L[i][k] * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(i)] = s / L[i][i];
  }
  x.assign(static_cast<std::size_t>(d), 0.0);
  for (int i = d - 1; i >= 0; --i) {
    double s = y[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < d; ++k) s -= L[k][i] * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / L[i][i];
  }
  return true;
}

// All vertices of the polytope {A >= 0}: every d-subset of active facets,
// solved and filtered for feasibility. Their centroid lies in the relative
// interior, which is all the optimizer start needs.
std::vector<std::vector<double>> polytope_vertices(const PolytopeForms& F) {
  std::vector<std::vector<double>> verts;
  int d = F.d;
  if (d == 0) return verts;
  std::vector<int> pick(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
  auto advance = [&]() {
    int i = d - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == F.m - d + i) --i;
    if (i < 0) return false;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    return true;
  };
  do {
    std::vector<std::vector<double>> M(static_cast<std::size_t>(d));
    std::vector<double> b(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
      M[static_cast<std::size_t>(r)] = F.C[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
      b[static_cast<std::size_t>(r)] = -F.alpha[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
    }
    std::vector<double> x;
    if (!solve_dense(std::move(M), std::move(b), x)) continue;
    std::vector<double> A = F.eval(x);
    bool ok = true;
    for (double v : A)
      if (v < -1e-9) ok = false;
    if (!ok) continue;
    bool dup = false;
    for (const auto& u : verts) {
      double delta = 0.0;
      for (int k = 0; k < d; ++k) delta = std::max(delta, std::fabs(u[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(k)]));
      if (delta < 1e-10) dup = true;
    }
    if (!dup) verts.push_back(std::move(x));
  } while (advance());
  return verts;
}

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm2(const std::vector<double>& u) { return std::sqrt(dot(u, u)); }

constexpr double kInteriorFloor = 1e-15;

bool strictly_feasible(const PolytopeForms& F, const std::vector<double>& x) {
  for (double v : F.eval(x))
    if (v < kInteriorFloor) return false;
  return true;
}

std::vector<double> gradient_at(const PolytopeForms& F,
                                const std::vector<double>& A) {
  // d f / d x_k = -sum_j C[j][k] log A_j  (the +1 terms cancel because the
  // A_j sum to the constant a)
  std::vector<double> g(static_cast<std::size_t>(F.d), 0.0);
  for (int j = 0; j < F.m; ++j) {
    double lj = std::log(A[static_cast<std::size_t>(j)]);
    for (int k = 0; k < F.d; ++k)
      g[static_cast<std::size_t>(k)] -= F.C[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * lj;
  }
  return g;
}

}  // namespace

std::string method_name(DimResult::Method m) {
  switch (m) {
    case DimResult::Method::polytope_max: return "polytope-max";
    case DimResult::Method::closed_m3: return "closed-m3";
    case DimResult::Method::golden: return "golden";
    case DimResult::Method::eggleston: return "eggleston";
    case DimResult::Method::pressure: return "pressure";
    case DimResult::Method::counting: return "counting";
  }
  return "unknown";
}

bool domain_contains(int m, double a, std::span<const double> x, double tol) {
  if (m < 2) throw std::invalid_argument("domain_contains: order below 2");
  if (static_cast<int>(x.size()) != m - 2)
    throw std::invalid_argument("domain_contains: x must have m-2 entries");
  PolytopeForms F = forms_for(m, a);
  for (double v : F.eval(x))
    if (v < -tol) return false;
  return true;
}

std::vector<double> feasible_point(int m, double a) {
  if (m < 2) throw std::invalid_argument("feasible_point: order below 2");
  double amin = 1.0 / m;
  if (a < amin - 1e-12)
    throw std::domain_error("feasible_point: domain empty below 1/m");
  if (a > 1.0 + 1e-12)
    throw std::domain_error("feasible_point: a beyond 1");
  a = std::min(std::max(a, amin), 1.0);
  std::vector<double> x(static_cast<std::size_t>(m) - 2, 0.0);
  if (a < 0.5) {
    x[0] = a;
    double r = (1.0 - 2.0 * a) / (m - 2);
    for (int k = 1; k < m - 2; ++k) x[static_cast<std::size_t>(k)] = r;
  } else if (m > 2) {
    x[0] = 1.0 - a;
  }
  return x;
}

double f_a_eval(int m, double a, std::span<const double> x) {
  if (!domain_contains(m, a, x))
    throw std::domain_error("f_a_eval: point outside the domain");
  PolytopeForms F = forms_for(m, a);
  return eval_f(a, F.eval(x));
}

std::vector<double> f_a_gradient(int m, double a, std::span<const double> x) {
  if (m < 3) throw std::invalid_argument("f_a_gradient: order below 3");
  if (static_cast<int>(x.size()) != m - 2)
    throw std::invalid_argument("f_a_gradient: x must have m-2 entries");
  PolytopeForms F = forms_for(m, a);
  std::vector<double> A = F.eval(x);
  for (double v : A)
    if (v <= 0.0)
      throw std::domain_error("f_a_gradient: boundary point (zero argument)");
  return gradient_at(F, A);
}

DimResult maximize_f(int m, double a, double tol) {
  if (m < 2 || m > 12)
    throw std::invalid_argument("maximize_f: order outside [2,12]");
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_f: tol must be > 0");
  double beta = pseudo_golden_root(m);
  double logb = std::log(beta);
  double amin = 1.0 / m;

  DimResult r;
  r.method = DimResult::Method::polytope_max;
  if (a < amin - 1e-12) {
    r.empty_set = true;
    return r;
  }
  if (a > 1.0 + 1e-12) throw std::domain_error("maximize_f: a beyond 1");

  // exact-zero endpoints: the domain degenerates to a point and the
  // objective cancels to 0 in real arithmetic; return 0 rather than noise
  if (std::fabs(a - amin) <= 1e-12 || std::fabs(a - 1.0) <= 1e-12) {
    r.argmax = feasible_point(m, a);
    return r;
  }

  PolytopeForms F = forms_for(m, a);
  std::vector<double> x = feasible_point(m, a);

  // near-degenerate domain: too thin for the optimizer, evaluate directly
  if (m == 2 || a <= amin + 1e-9 || a >= 1.0 - 1e-9) {
    r.argmax = x;
    r.dim = std::clamp(eval_f(a, F.eval(x)) / logb, 0.0, 1.0);
    return r;
  }

  // interior start: boundary feasible point pulled toward the vertex centroid
  std::vector<std::vector<double>> verts = polytope_vertices(F);
  if (!verts.empty()) {
    std::vector<double> centroid(x.size(), 0.0);
    for (const auto& v : verts)
      for (std::size_t k = 0; k < x.size(); ++k) centroid[k] += v[k];
    for (std::size_t k = 0; k < x.size(); ++k) {
      centroid[k] /= static_cast<double>(verts.size());
      x[k] = 0.9 * x[k] + 0.1 * centroid[k];
    }
  }
  if (!strictly_feasible(F, x)) {
    // centroid mix failed (extremely thin domain): fall back to evaluation
    x = feasible_point(m, a);
    r.argmax = x;
    r.dim = std::clamp(eval_f(a, F.eval(x)) / logb, 0.0, 1.0);
    return r;
  }

  std::vector<double> A = F.eval(x);
  double fx = eval_f(a, A);

  // phase 1: projected gradient ascent with backtracking line search
  double eta = 0.1;
  for (int it = 0; it < 100; ++it) {
    std::vector<double> g = gradient_at(F, A);
    double gn = norm2(g);
    if (gn < 1e-13) break;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> xn(x);
      for (std::size_t k = 0; k < x.size(); ++k) xn[k] += eta * g[k];
      if (strictly_feasible(F, xn)) {
        std::vector<double> An = F.eval(xn);
        double fn = eval_f(a, An);
        if (fn > fx) {
          x.swap(xn);
          A.swap(An);
          double gain = fn - fx;
          fx = fn;
          eta *= 1.5;
          moved = true;
          if (gain < 1e-13) it = 100;  // diminishing returns, go polish
          break;
        }
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }

  // phase 2: damped Newton polish; -Hessian = sum_j C_j C_j^T / A_j is
  // positive definite on the interior, so Cholesky applies
  for (int it = 0; it < 60; ++it) {
    std::vector<double> g = gradient_at(F, A);
    if (norm2(g) < 1e-13) break;
    std::vector<std::vector<double>> S(x.size(), std::vector<double>(x.size(), 0.0));
    for (int j = 0; j < F.m; ++j) {
      double w = 1.0 / A[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < x.size(); ++k) {
        double cjk = F.C[static_cast<std::size_t>(j)][k];
        if (cjk == 0.0) continue;
        for (std::size_t l = 0; l < x.size(); ++l)
          S[k][l] += w * cjk * F.C[static_cast<std::size_t>(j)][l];
      }
    }
    std::vector<double> dir;
    if (!solve_spd(std::move(S), g, dir)) break;
    double alpha = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> xn(x);
      for (std::size_t k = 0; k < x.size(); ++k) xn[k] += alpha * dir[k];
      if (strictly_feasible(F, xn)) {
        std::vector<double> An = F.eval(xn);
        double fn = eval_f(a, An);
        if (fn >= fx) {
          double gain = fn - fx;
          x.swap(xn);
          A.swap(An);
          fx = fn;
          moved = true;
          if (gain < tol * 1e-3) it = 60;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }

  r.argmax = x;
  r.kkt_residual = norm2(gradient_at(F, A));
  r.dim = std::clamp(fx / logb, 0.0, 1.0);
  return r;
}

double closed_form_m3(const BetaSystem& sys, double a) {
  if (!sys.is_pseudo_golden() || *sys.pseudo_golden_order != 3)
    throw std::invalid_argument("closed_form_m3: system must have order 3");
  double amin = 1.0 / 3.0;
  if (a < amin - 1e-12 || a > 1.0 + 1e-12)
    throw std::domain_error("closed_form_m3: a outside [1/3, 1]");
  if (std::fabs(a - amin) <= 1e-12 || std::fabs(a - 1.0) <= 1e-12) return 0.0;
  double disc = -8.0 * a * a + 12.0 * a - 3.0;
  if (disc < 0.0) {
    if (disc < -1e-14)
      throw std::domain_error("closed_form_m3: discriminant negative");
    disc = 0.0;
  }
  double s = std::sqrt(disc);
  double A = (10.0 * a - 3.0 - s) / 6.0;
  double B = (3.0 - 2.0 * a - s) / 6.0;
  double C = (s - a) / 3.0;
  double num = a * std::log(a) + phi(std::max(A, 0.0)) + phi(std::max(B, 0.0)) +
               phi(std::max(C, 0.0));
  return std::clamp(num / std::log(sys.beta), 0.0, 1.0);
}

double golden_dim(double a) {
  if (a < 0.5 - 1e-12) return 0.0;  // frequency unattainable; caller flags
  if (a > 1.0 + 1e-12) throw std::domain_error("golden_dim: a beyond 1");
  a = std::min(a, 1.0);
  double num = a * std::log(a) + phi(std::max(2.0 * a - 1.0, 0.0)) +
               phi(std::max(1.0 - a, 0.0));
  double logb = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  // the three terms cancel exactly at both endpoints; do not clamp them away
  return std::clamp(num / logb, 0.0, 1.0);
}

double eggleston_dim(double a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("eggleston_dim: a outside [0,1]");
  return std::clamp((phi(a) + phi(1.0 - a)) / std::log(2.0), 0.0, 1.0);
}

namespace {

// Perron root of the transfer matrix with weight e^t on zero-emitting edges,
// by power iteration with Collatz-Wielandt ratio bounds. The graphs here are
// strongly connected with a 0-self-loop, hence primitive.
double perron_root(const FollowerGraph& g, double t) {
  std::size_t ns = g.states.size();
  double w0 = std::exp(t);
  std::vector<double> v(ns, 1.0), w(ns, 0.0);
  double lam = 1.0;
  for (int it = 0; it < 20000; ++it) {
    std::fill(w.begin(), w.end(), 0.0);
    for (const auto& e : g.edges)
      w[static_cast<std::size_t>(e.to)] +=
          (e.digit == 0 ? w0 : 1.0) * v[static_cast<std::size_t>(e.from)];
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      double ratio = w[s] / v[s];
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
    }
    lam = 0.5 * (rmin + rmax);
    if (rmax - rmin <= 1e-13 * rmax) break;
    double scale = 0.0;
    for (double x : w) scale = std::max(scale, x);
    for (std::size_t s = 0; s < ns; ++s) v[s] = w[s] / scale;
  }
  return lam;
}

}  // namespace

PressureResult dim_via_pressure(const FollowerGraph& graph, double a) {
  if (!graph.strongly_connected)
    throw std::domain_error("dim_via_pressure: graph must be strongly connected");
  PressureResult pr;
  if (a <= 1e-12 || a >= 1.0 - 1e-12) {
    // infimum runs to t = -+infinity; the limit value is 0
    pr.boundary = true;
    return pr;
  }
  double logb = std::log(graph.sys.beta);
  auto g = [&](double t) { return std::log(perron_root(graph, t)) - t * a; };
  // golden-section search on the convex objective over [-40, 40]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -40.0, hi = 40.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  while (hi - lo > 1e-5) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - gr * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + gr * (hi - lo);
      g2 = g(x2);
    }
  }
  double tstar = 0.5 * (lo + hi);
  pr.boundary = tstar < -39.5 || tstar > 39.5;
  pr.dim = std::clamp(g(tstar) / logb, 0.0, 1.0);
  return pr;
}

DimResult freq_dim(const FreqQuery& query) {
  const BetaSystem& sys = query.sys;
  double a = query.a;
  if (!(a >= -1e-12 && a <= 1.0 + 1e-12))
    throw std::domain_error("freq_dim: a outside [0,1]");
  a = std::min(std::max(a, 0.0), 1.0);

  DimResult r;
  if (sys.is_integer && sys.alphabet_max == 1) {
    r.method = DimResult::Method::eggleston;
    r.dim = eggleston_dim(a);
    return r;
  }
  if (!sys.is_pseudo_golden())
    throw std::domain_error("freq_dim: unsupported system (no certified formula)");
  int m = *sys.pseudo_golden_order;
  double amin = 1.0 / m;

  if (m == 2) {
    r.method = DimResult::Method::golden;
    if (a < amin - 1e-12) {
      r.empty_set = true;
      return r;
    }
    r.dim = golden_dim(a);
    return r;
  }

  if (a < amin - 1e-12) {
    r.empty_set = true;
    r.method = m == 3 ? DimResult::Method::closed_m3 : DimResult::Method::polytope_max;
    return r;
  }
  if (std::fabs(a - amin) <= 1e-12 || std::fabs(a - 1.0) <= 1e-12) {
    r.method = m == 3 ? DimResult::Method::closed_m3 : DimResult::Method::polytope_max;
    r.argmax = feasible_point(m, a);
    return r;  // dim exactly 0
  }

  if (m == 3) {
    double closed = closed_form_m3(sys, a);
    DimResult opt = maximize_f(3, a);
    r.method = DimResult::Method::closed_m3;
    r.dim = closed;
    double s = std::sqrt(std::max(-8.0 * a * a + 12.0 * a - 3.0, 0.0));
    r.argmax = {(3.0 - 4.0 * a + s) / 6.0};
    r.kkt_residual = opt.kkt_residual;
    r.cross_check_delta = std::fabs(closed - opt.dim);
    return r;
  }

  r = maximize_f(m, a);
  return r;
}

Spectrum spectrum(const BetaSystem& sys, std::span<const double> a_grid,
                  ExecPolicy policy) {
  for (double a : a_grid)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("spectrum: grid point outside [0,1]");
  // reject unsupported systems here: freq_dim would throw on every row, and
  // an exception escaping an omp loop aborts instead of propagating
  if (!(sys.is_pseudo_golden() || (sys.is_integer && sys.alphabet_max == 1)))
    throw std::domain_error("spectrum: unsupported system (no certified formula)");
  Spectrum sp;
  sp.sys = sys;
  sp.rows.resize(a_grid.size());
  int n = static_cast<int>(a_grid.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      sp.rows[static_cast<std::size_t>(i)].a = a_grid[static_cast<std::size_t>(i)];
      sp.rows[static_cast<std::size_t>(i)].result =
          freq_dim({sys, a_grid[static_cast<std::size_t>(i)]});
    }
  } else {
    for (int i = 0; i < n; ++i) {
      sp.rows[static_cast<std::size_t>(i)].a = a_grid[static_cast<std::size_t>(i)];
      sp.rows[static_cast<std::size_t>(i)].result =
          freq_dim({sys, a_grid[static_cast<std::size_t>(i)]});
    }
  }
  for (std::size_t i = 1; i < sp.rows.size(); ++i) {
    double da = sp.rows[i].a - sp.rows[i - 1].a;
    if (std::fabs(da) > 1e-15)
      sp.max_slope = std::max(
          sp.max_slope,
          std::fabs(sp.rows[i].result.dim - sp.rows[i - 1].result.dim) / std::fabs(da));
  }
  return sp;
}

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void spectrum_to_csv(const Spectrum& sp, std::ostream& os) {
  std::size_t width = 0;
  for (const auto& row : sp.rows) width = std::max(width, row.result.argmax.size());
  os << "a,dim,method,kkt_residual";
  for (std::size_t k = 1; k <= width; ++k) os << ",argmax" << k;
  os << '\n';
  for (const auto& row : sp.rows) {
    os << fmt12(row.a) << ',' << fmt12(row.result.dim) << ','
       << method_name(row.result.method) << ',' << fmt12(row.result.kkt_residual);
    for (std::size_t k = 0; k < width; ++k) {
      os << ',';
      if (k < row.result.argmax.size()) os << fmt12(row.result.argmax[k]);
    }
    os << '\n';
  }
}

std::string spectrum_to_json(const Spectrum& sp) {
  nlohmann::json j;
  j["beta"] = sp.sys.beta;
  j["max_slope"] = sp.max_slope;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : sp.rows) {
    nlohmann::json r;
    r["a"] = row.a;
    r["dim"] = row.result.dim;
    r["method"] = method_name(row.result.method);
    r["kkt_residual"] = row.result.kkt_residual;
    r["argmax"] = row.result.argmax;
    r["empty_set"] = row.result.empty_set;
    if (row.result.cross_check_delta >= 0.0)
      r["cross_check_delta"] = row.result.cross_check_delta;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

}  // namespace betadim
