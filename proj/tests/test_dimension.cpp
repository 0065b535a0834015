#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "betadim/beta_system.hpp"
#include "betadim/dimension.hpp"
#include "betadim/follower_graph.hpp"
#include "betadim/verify.hpp"
#include "oracles.hpp"

using namespace betadim;

TEST_CASE("domain membership") {
  CHECK(domain_contains(3, 0.5, std::vector<double>{1.0 / 3.0}));
  CHECK(domain_contains(3, 0.5, std::vector<double>{0.25}));
  CHECK_FALSE(domain_contains(3, 0.5, std::vector<double>{0.6}));   // x1 > a
  CHECK_FALSE(domain_contains(3, 0.5, std::vector<double>{0.2}));   // 2x1+a-1 < 0
  CHECK(domain_contains(4, 0.3, std::vector<double>{0.3, 0.2}));
  CHECK_THROWS_AS((void)domain_contains(4, 0.3, std::vector<double>{0.3}),
                  std::invalid_argument);
}

TEST_CASE("feasible_point lands in the domain on both branches") {
  CHECK(feasible_point(4, 0.3) == std::vector<double>{0.3, 0.2});
  CHECK(feasible_point(4, 0.7) == std::vector<double>{1.0 - 0.7, 0.0});
  CHECK(feasible_point(3, 0.4) == std::vector<double>{0.4});
  for (int m : {3, 4, 5, 6}) {
    for (double a : {1.0 / m + 0.01, 0.4, 0.5, 0.77, 0.99}) {
      if (a < 1.0 / m) continue;
      CHECK(domain_contains(m, a, feasible_point(m, a), 1e-14));
    }
  }
  CHECK_THROWS_AS(feasible_point(4, 0.2), std::domain_error);
}

TEST_CASE("objective value and gradient") {
  // m=3, a=1/2, x=1/3: arguments are (1/6, 1/6, 1/6), f = log(3)/2
  double f = f_a_eval(3, 0.5, std::vector<double>{1.0 / 3.0});
  CHECK(f == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(f_a_eval(3, 0.5, std::vector<double>{0.9}), std::domain_error);

  // gradient vanishes at the known maximizer
  std::vector<double> g = f_a_gradient(3, 0.5, std::vector<double>{1.0 / 3.0});
  REQUIRE(g.size() == 1);
  CHECK(std::fabs(g[0]) <= 1e-12);

  // finite-difference agreement at a non-critical interior point
  for (int m : {3, 4, 5}) {
    double a = 0.5;
    std::vector<double> x = feasible_point(m, a);
    std::vector<double> c = maximize_f(m, a).argmax;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = 0.4 * x[k] + 0.6 * c[k];
    std::vector<double> grad = f_a_gradient(m, a, x);
    const double h = 1e-6;
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::vector<double> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      double fd = (f_a_eval(m, a, xp) - f_a_eval(m, a, xm)) / (2 * h);
      CHECK(grad[k] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("concavity of the objective along random segments") {
  std::uint64_t rng = 31;
  for (int m : {3, 4, 5}) {
    double a = 0.45;
    std::vector<double> lo = feasible_point(m, a);
    std::vector<double> hi = maximize_f(m, a).argmax;
    for (int trial = 0; trial < 200; ++trial) {
      // two random points on the segment family through known-feasible points
      double t1 = uniform01(rng), t2 = uniform01(rng), lam = uniform01(rng);
      std::vector<double> u(lo.size()), v(lo.size()), w(lo.size());
      for (std::size_t k = 0; k < lo.size(); ++k) {
        u[k] = lo[k] + t1 * (hi[k] - lo[k]);
        v[k] = lo[k] + t2 * (hi[k] - lo[k]);
        w[k] = lam * u[k] + (1 - lam) * v[k];
      }
      double fu = f_a_eval(m, a, u), fv = f_a_eval(m, a, v), fw = f_a_eval(m, a, w);
      CHECK(fw >= lam * fu + (1 - lam) * fv - 1e-12);
    }
  }
}

TEST_CASE("closed form order 3: endpoints, interior value, domain") {
  BetaSystem t = BetaSystem::pseudo_golden(3);
  CHECK(closed_form_m3(t, 1.0 / 3.0) == 0.0);
  CHECK(closed_form_m3(t, 1.0) == 0.0);
  CHECK(closed_form_m3(t, 0.5) ==
        doctest::Approx(0.5 * std::log(3.0) / std::log(t.beta)).epsilon(1e-14));
  CHECK_THROWS_AS(closed_form_m3(t, 0.2), std::domain_error);
  CHECK_THROWS_AS(closed_form_m3(BetaSystem::golden(), 0.5), std::invalid_argument);
}

TEST_CASE("optimizer agrees with the closed form on a coarse grid") {
  BetaSystem t = BetaSystem::pseudo_golden(3);
  for (double a = 0.36; a < 1.0; a += 0.06) {
    DimResult r = maximize_f(3, a);
    CHECK(std::fabs(r.dim - closed_form_m3(t, a)) <= 1e-9);
    CHECK(r.kkt_residual <= 1e-7);
  }
}

TEST_CASE("optimizer agrees with the derivative-free oracle, orders 4 and 5") {
  for (int m : {4, 5}) {
    double logb = std::log(pseudo_golden_root(m));
    for (double a : {0.35, 0.5, 0.65, 0.85}) {
      if (a < 1.0 / m + 0.02) continue;
      DimResult r = maximize_f(m, a);
      double ref = oracle::pattern_search_max(m, a) / logb;
      CHECK(std::fabs(r.dim - ref) <= 1e-8);
    }
  }
}

TEST_CASE("golden closed form") {
  CHECK(golden_dim(0.5) == 0.0);
  CHECK(golden_dim(1.0) == 0.0);
  CHECK(golden_dim(0.3) == 0.0);  // below minimal frequency
  double astar = (5.0 + std::sqrt(5.0)) / 10.0;
  CHECK(golden_dim(astar) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(golden_dim(0.6) > 0.75);
  CHECK(golden_dim(0.6) < golden_dim(astar));
  CHECK_THROWS_AS(golden_dim(1.1), std::domain_error);
}

TEST_CASE("eggleston curve") {
  CHECK(eggleston_dim(0.5) == 1.0);
  CHECK(eggleston_dim(0.0) == 0.0);
  CHECK(eggleston_dim(1.0) == 0.0);
  CHECK(eggleston_dim(0.3) == doctest::Approx(eggleston_dim(0.7)).epsilon(1e-15));
  CHECK_THROWS_AS(eggleston_dim(-0.1), std::domain_error);
}

TEST_CASE("pressure oracle reproduces known dimensions") {
  FollowerGraph two = build_follower_graph(BetaSystem::integer(2));
  CHECK(dim_via_pressure(two, 0.5).dim == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dim_via_pressure(two, 0.3).dim ==
        doctest::Approx(eggleston_dim(0.3)).epsilon(1e-8));

  FollowerGraph g = build_follower_graph(BetaSystem::golden());
  double astar = (5.0 + std::sqrt(5.0)) / 10.0;
  CHECK(dim_via_pressure(g, astar).dim == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(dim_via_pressure(g, 0.8).dim == doctest::Approx(golden_dim(0.8)).epsilon(1e-8));

  BetaSystem t = BetaSystem::pseudo_golden(3);
  FollowerGraph g3 = build_follower_graph(t);
  for (double a : {0.45, 0.5, 0.7}) {
    CHECK(dim_via_pressure(g3, a).dim ==
          doctest::Approx(closed_form_m3(t, a)).epsilon(1e-8));
  }

  PressureResult edge = dim_via_pressure(g3, 0.0);
  CHECK(edge.boundary);
  CHECK(edge.dim == 0.0);
}

TEST_CASE("pressure oracle covers systems with no closed form") {
  double lo = 1.5, hi = 2.0;  // root of b^4 = b^3 + b^2 + 1
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double p = ((mid - 1) * mid - 1) * mid * mid - 1;
    (p < 0 ? lo : hi) = mid;
  }
  BetaSystem sys = BetaSystem::from_beta(0.5 * (lo + hi));
  FollowerGraph gr = build_follower_graph(sys);
  // this system's minimal zero frequency is 1/2 (each 11 forces 1100), so
  // probe strictly inside the attainable band and certify against counting
  PressureResult pr = dim_via_pressure(gr, 0.6);
  CHECK(pr.dim > 0.3);
  CHECK(pr.dim <= 1.0);
  CHECK_FALSE(pr.boundary);
  FreqEstimate fe = freq_dim_estimate(gr, 2000, 0.6, sys);
  CHECK(std::fabs(fe.value - pr.dim) <= 0.01);
}

TEST_CASE("freq_dim dispatch and flags") {
  DimResult egg = freq_dim({BetaSystem::integer(2), 0.5});
  CHECK(egg.method == DimResult::Method::eggleston);
  CHECK(egg.dim == 1.0);

  DimResult gold = freq_dim({BetaSystem::golden(), 0.75});
  CHECK(gold.method == DimResult::Method::golden);
  CHECK(gold.dim == doctest::Approx(golden_dim(0.75)).epsilon(1e-15));

  DimResult m3 = freq_dim({BetaSystem::pseudo_golden(3), 0.5});
  CHECK(m3.method == DimResult::Method::closed_m3);
  CHECK(m3.cross_check_delta >= 0.0);
  CHECK(m3.cross_check_delta <= 1e-9);
  REQUIRE(m3.argmax.size() == 1);
  CHECK(m3.argmax[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  DimResult m4 = freq_dim({BetaSystem::pseudo_golden(4), 0.5});
  CHECK(m4.method == DimResult::Method::polytope_max);
  CHECK(m4.argmax.size() == 2);

  DimResult empty = freq_dim({BetaSystem::pseudo_golden(4), 0.2});
  CHECK(empty.empty_set);
  CHECK(empty.dim == 0.0);

  CHECK(freq_dim({BetaSystem::pseudo_golden(5), 0.15}).empty_set);
  // a = 0.2 is the endpoint 1/5 itself: dimension zero but not empty
  CHECK_FALSE(freq_dim({BetaSystem::pseudo_golden(5), 0.2}).empty_set);
  CHECK(freq_dim({BetaSystem::pseudo_golden(5), 1.0 / 5.0}).dim == 0.0);
  CHECK(freq_dim({BetaSystem::pseudo_golden(5), 1.0}).dim == 0.0);

  CHECK_THROWS_AS(freq_dim({BetaSystem::pseudo_golden(3), 1.5}), std::domain_error);
  CHECK_THROWS_AS(freq_dim({BetaSystem::integer(3), 0.5}), std::domain_error);
}

TEST_CASE("spectrum rows at the documented example frequencies") {
  BetaSystem t = BetaSystem::pseudo_golden(3);
  std::vector<double> grid3 = {1.0 / 3.0, 0.5, 1.0};
  Spectrum sp3 = spectrum(t, grid3, ExecPolicy::serial);
  REQUIRE(sp3.rows.size() == 3);
  CHECK(sp3.rows[0].result.dim == 0.0);
  CHECK(sp3.rows[1].result.dim == doctest::Approx(0.90142).epsilon(1e-4));
  CHECK(sp3.rows[2].result.dim == 0.0);

  std::vector<double> grid2 = {0.0, 0.5, 1.0};
  Spectrum sp2 = spectrum(BetaSystem::integer(2), grid2, ExecPolicy::serial);
  CHECK(sp2.rows[0].result.dim == 0.0);
  CHECK(sp2.rows[1].result.dim == 1.0);
  CHECK(sp2.rows[2].result.dim == 0.0);

  double astar = (5.0 + std::sqrt(5.0)) / 10.0;
  std::vector<double> gridg = {0.5, astar, 1.0};
  Spectrum spg = spectrum(BetaSystem::golden(), gridg, ExecPolicy::serial);
  CHECK(spg.rows[0].result.dim == 0.0);
  CHECK(spg.rows[1].result.dim == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spg.rows[2].result.dim == 0.0);

  CHECK_THROWS_AS(spectrum(t, std::vector<double>{0.5, 1.2}, ExecPolicy::serial),
                  std::invalid_argument);
}

TEST_CASE("parallel and serial spectra are identical") {
  std::vector<double> grid;
  for (double a = 0.35; a <= 0.99; a += 0.01) grid.push_back(a);
  BetaSystem t = BetaSystem::pseudo_golden(4);
  Spectrum s = spectrum(t, grid, ExecPolicy::serial);
  Spectrum p = spectrum(t, grid, ExecPolicy::parallel);
  REQUIRE(s.rows.size() == p.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    CHECK(s.rows[i].result.dim == p.rows[i].result.dim);
    CHECK(s.rows[i].result.argmax == p.rows[i].result.argmax);
  }
  CHECK(s.max_slope == p.max_slope);
  CHECK(s.max_slope > 0.0);
}

TEST_CASE("spectrum csv and json serialization") {
  BetaSystem t = BetaSystem::pseudo_golden(4);
  std::vector<double> grid = {0.4, 0.6};
  Spectrum sp = spectrum(t, grid, ExecPolicy::serial);

  std::ostringstream os;
  spectrum_to_csv(sp, os);
  std::string csv = os.str();
  CHECK(csv.rfind("a,dim,method,kkt_residual,argmax1,argmax2\n", 0) == 0);
  CHECK(csv.find("polytope-max") != std::string::npos);

  nlohmann::json j = nlohmann::json::parse(spectrum_to_json(sp));
  CHECK(j["rows"].size() == 2);
  CHECK(j["beta"].get<double>() == t.beta);
  CHECK(j["rows"][0]["a"].get<double>() == 0.4);
  CHECK(j["rows"][0]["method"].get<std::string>() == "polytope-max");
}

TEST_CASE("dimension curve is concave-shaped with an interior maximum") {
  // sanity on the shape: rises from 0 at 1/m, peaks above 0.9, returns to 0
  for (int m : {3, 4, 5}) {
    BetaSystem sys = BetaSystem::pseudo_golden(m);
    double prev = 0.0;
    double peak = 0.0;
    for (double a = 1.0 / m + 0.005; a < 1.0; a += 0.01) {
      double d = freq_dim({sys, a}).dim;
      peak = std::max(peak, d);
      prev = d;
    }
    (void)prev;
    CHECK(peak > 0.99);
    CHECK(peak <= 1.0);
  }
}

TEST_CASE("method names are stable strings") {
  CHECK(method_name(DimResult::Method::polytope_max) == "polytope-max");
  CHECK(method_name(DimResult::Method::closed_m3) == "closed-m3");
  CHECK(method_name(DimResult::Method::golden) == "golden");
  CHECK(method_name(DimResult::Method::eggleston) == "eggleston");
  CHECK(method_name(DimResult::Method::pressure) == "pressure");
}
