#pragma once
// Hausdorff dimension of digit-frequency sets: the feasible polytope D_{m,a},
// the concave objective f_a, its maximizer, closed forms for special cases,
// and an independent transfer-matrix (pressure) oracle.

#include <span>
#include <string>
#include <vector>

#include "betadim/beta_system.hpp"
#include "betadim/follower_graph.hpp"

namespace betadim {

struct DimResult {
  double dim = 0.0;
  std::vector<double> argmax;  // length m-2; empty on closed-form paths
  enum class Method {
    polytope_max,
    closed_m3,
    golden,
    eggleston,
    pressure,
    counting
  } method = Method::polytope_max;
  double kkt_residual = 0.0;     // gradient norm at the (interior) argmax
  bool empty_set = false;        // frequency unattainable: dim forced to 0
  double cross_check_delta = -1.0;  // |primary - secondary| when computed
};

std::string method_name(DimResult::Method m);

// Membership in D_{m,a} = { a >= x1 >= ... >= x_{m-2} >= 0,
//   x1+...+x_{m-2} <= 1-a <= x1+...+x_{m-3}+2 x_{m-2} } with tolerance.
bool domain_contains(int m, double a, std::span<const double> x,
                     double tol = 1e-12);

// The case-split feasible point: (a, (1-2a)/(m-2), ..., (1-2a)/(m-2)) for
// 1/m <= a < 1/2, (1-a, 0, ..., 0) for a >= 1/2. Throws when a < 1/m.
std::vector<double> feasible_point(int m, double a);

// f_a(x) = a log a + phi(a-x1) + phi(x1-x2) + ... + phi(x_{m-3}-x_{m-2})
//        + phi(1-a-x1-...-x_{m-2}) + phi(x1+...+x_{m-3}+2x_{m-2}+a-1).
// Every facet of D_{m,a} zeroes one argument, so f is concave on the domain
// and its maximizer is interior whenever the domain has interior.
double f_a_eval(int m, double a, std::span<const double> x);

// Analytic gradient (sums of -(log arg + 1) terms); interior x only.
std::vector<double> f_a_gradient(int m, double a, std::span<const double> x);

// Global maximum of f_a over D_{m,a} divided by log beta. Projected gradient
// ascent with backtracking from an interior start (0.9 feasible point + 0.1
// vertex centroid), then a damped Newton polish on the strictly concave
// objective; objective accurate to tol. a < 1/m gives the empty result.
DimResult maximize_f(int m, double a, double tol = 1e-12);

// m=3 closed form via the discriminant sqrt(-8a^2+12a-3); a in [1/3, 1].
double closed_form_m3(const BetaSystem& sys, double a);

// (a log a - (2a-1)log(2a-1) - (1-a)log(1-a)) / log golden, a in [1/2, 1];
// returns 0 for a < 1/2 (frequency unattainable; caller flags empty).
double golden_dim(double a);

// Binary entropy over log 2, a in [0,1].
double eggleston_dim(double a);

struct PressureResult {
  double dim = 0.0;
  bool boundary = false;  // infimum ran to the end of the t-bracket
};

// inf_t (log lambda(t) - t a) / log beta where lambda(t) is the Perron root
// of the transfer matrix with weight e^t on zero-emitting edges. Convex in t;
// golden-section search on t in [-40, 40], Perron root by power iteration
// (Collatz-Wielandt bounds, relative tolerance 1e-13).
PressureResult dim_via_pressure(const FollowerGraph& graph, double a);

struct FreqQuery {
  BetaSystem sys;
  double a = 0.0;
};

// Dispatch: integer 2 -> Eggleston; golden -> golden closed form; m = 3 ->
// closed form with maximize_f cross-check recorded; m >= 4 -> maximize_f.
// a below the minimal frequency gives the empty result; a within 1e-12 of an
// endpoint (1/m or 1) returns exactly 0.
DimResult freq_dim(const FreqQuery& query);

struct SpectrumRow {
  double a = 0.0;
  DimResult result;
};

struct Spectrum {
  BetaSystem sys;
  std::vector<SpectrumRow> rows;
  double max_slope = 0.0;  // max |d dim / d a| over adjacent grid points
};

// freq_dim over a grid; rows are independent and computed in parallel under
// the parallel policy, output ordered by grid index either way.
Spectrum spectrum(const BetaSystem& sys, std::span<const double> a_grid,
                  ExecPolicy policy = ExecPolicy::parallel);

// header "a,dim,method,kkt_residual" plus one column per argmax coordinate
void spectrum_to_csv(const Spectrum& sp, std::ostream& os);
std::string spectrum_to_json(const Spectrum& sp);

}  // namespace betadim
