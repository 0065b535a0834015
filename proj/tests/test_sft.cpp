#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "betadim/beta_system.hpp"
#include "betadim/expansion.hpp"
#include "betadim/follower_graph.hpp"
#include "oracles.hpp"

using namespace betadim;

TEST_CASE("follower graph shape for the order-3 system") {
  FollowerGraph gr = build_follower_graph(BetaSystem::pseudo_golden(3));
  CHECK(gr.order == 3);
  REQUIRE(gr.states.size() == 4);  // all four 2-words are legal
  CHECK(gr.states[0] == DigitWord{0, 0});
  CHECK(gr.states[3] == DigitWord{1, 1});
  CHECK(gr.edges.size() == 7);  // 8 extensions minus the ones-run 111
  CHECK(gr.strongly_connected);
  for (int w : gr.start_weights) CHECK(w == 1);
}

TEST_CASE("follower graph for the golden ratio and for base 2") {
  FollowerGraph g = build_follower_graph(BetaSystem::golden());
  CHECK(g.order == 2);
  REQUIRE(g.states.size() == 2);
  CHECK(g.edges.size() == 3);  // 11 forbidden

  FollowerGraph two = build_follower_graph(BetaSystem::integer(2));
  CHECK(two.order == 1);
  REQUIRE(two.states.size() == 1);
  CHECK(two.edges.size() == 2);  // full shift: two self-loops
  CHECK(two.strongly_connected);

  CHECK_THROWS_AS(build_follower_graph(BetaSystem::integer(3)), std::domain_error);
}

TEST_CASE("graph construction works for a non-pseudo-golden finite expansion") {
  double lo = 1.5, hi = 2.0;  // root of b^4 = b^3 + b^2 + 1
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double p = ((mid - 1) * mid - 1) * mid * mid - 1;
    (p < 0 ? lo : hi) = mid;
  }
  BetaSystem sys = BetaSystem::from_beta(0.5 * (lo + hi));
  FollowerGraph gr = build_follower_graph(sys);
  CHECK(gr.order == 4);
  CHECK(gr.strongly_connected);
  for (int n = 1; n <= 12; ++n) {
    std::map<int, std::uint64_t> brute = oracle::brute_counts(sys, n);
    mpz_class total = 0;
    for (auto& [z, c] : brute) total += static_cast<unsigned long>(c);
    CHECK(count_words(gr, n) == total);
  }
}

TEST_CASE("known word counts") {
  FollowerGraph m3 = build_follower_graph(BetaSystem::pseudo_golden(3));
  const long expect3[] = {2, 4, 7, 13, 24};
  for (int n = 1; n <= 5; ++n) CHECK(count_words(m3, n) == expect3[n - 1]);

  FollowerGraph g = build_follower_graph(BetaSystem::golden());
  const long fib[] = {2, 3, 5, 8, 13, 21, 34};
  for (int n = 1; n <= 7; ++n) CHECK(count_words(g, n) == fib[n - 1]);

  FollowerGraph two = build_follower_graph(BetaSystem::integer(2));
  mpz_class pw = 2;
  for (int n = 1; n <= 20; ++n, pw *= 2) CHECK(count_words(two, n) == pw);
}

TEST_CASE("counts by zero-count: small tables") {
  FollowerGraph m3 = build_follower_graph(BetaSystem::pseudo_golden(3));

  CountTable t3 = count_words_by_zeros(m3, 3);
  REQUIRE(t3.counts.size() == 4);
  CHECK(t3.counts[0] == 0);
  CHECK(t3.counts[1] == 3);
  CHECK(t3.counts[2] == 3);
  CHECK(t3.counts[3] == 1);

  CountTable t2 = count_words_by_zeros(m3, 2);
  CHECK(t2.counts[0] == 1);
  CHECK(t2.counts[1] == 2);
  CHECK(t2.counts[2] == 1);

  // the all-zeros word is always the unique word with n zeros
  for (int n : {1, 5, 9}) {
    CountTable t = count_words_by_zeros(m3, n);
    CHECK(t.counts[static_cast<std::size_t>(n)] == 1);
  }
}

TEST_CASE("zero-count tables match brute enumeration") {
  for (const BetaSystem& sys :
       {BetaSystem::golden(), BetaSystem::pseudo_golden(3), BetaSystem::pseudo_golden(4),
        BetaSystem::integer(2)}) {
    FollowerGraph gr = build_follower_graph(sys);
    for (int n = 1; n <= 12; ++n) {
      CountTable t = count_words_by_zeros(gr, n);
      std::map<int, std::uint64_t> brute = oracle::brute_counts(sys, n);
      for (int k = 0; k <= n; ++k) {
        mpz_class want = 0;
        if (auto it = brute.find(k); it != brute.end())
          want = static_cast<unsigned long>(it->second);
        CAPTURE(sys.beta);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(t.counts[static_cast<std::size_t>(k)] == want);
      }
    }
  }
}

TEST_CASE("serial and parallel kernels produce identical tables") {
  for (int m : {3, 5}) {
    FollowerGraph gr = build_follower_graph(BetaSystem::pseudo_golden(m));
    for (int n : {1, 2, 37, 100}) {
      CountTable s = count_words_by_zeros(gr, n, ExecPolicy::serial);
      CountTable p = count_words_by_zeros(gr, n, ExecPolicy::parallel);
      REQUIRE(s.counts.size() == p.counts.size());
      for (std::size_t k = 0; k < s.counts.size(); ++k) CHECK(s.counts[k] == p.counts[k]);
    }
  }
}

TEST_CASE("table totals equal direct counts and the matrix arrangement") {
  for (int m : {2, 3, 4}) {
    FollowerGraph gr = build_follower_graph(BetaSystem::pseudo_golden(m));
    for (int n : {1, 2, 3, 10, 47}) {
      mpz_class direct = count_words(gr, n);
      CHECK(count_words_by_zeros(gr, n).total() == direct);
      CHECK(count_words_matrix(gr, n) == direct);
    }
  }
}

TEST_CASE("the m-term recurrence holds exactly") {
  for (int m : {2, 3, 4}) {
    FollowerGraph gr = build_follower_graph(BetaSystem::pseudo_golden(m));
    std::vector<mpz_class> N(121);
    for (int n = 1; n <= 120; ++n) N[static_cast<std::size_t>(n)] = count_words(gr, n);
    N[0] = 1;
    for (int n = 2 * m; n <= 120; ++n) {
      mpz_class sum = 0;
      for (int j = 1; j <= m; ++j) sum += N[static_cast<std::size_t>(n - j)];
      CHECK(N[static_cast<std::size_t>(n)] == sum);
    }
  }
}

TEST_CASE("word-count growth rate approaches log beta") {
  for (int m : {2, 3, 4}) {
    BetaSystem sys = BetaSystem::pseudo_golden(m);
    FollowerGraph gr = build_follower_graph(sys);
    int n = 500;
    double rate = log_mpz(count_words(gr, n)) / n;
    CHECK(std::fabs(rate - std::log(sys.beta)) <= 5.0 / n);
  }
}

TEST_CASE("minimum zero-count of a legal word") {
  // a ones-run cap of m forces at least floor(n/m) - 1 zeros
  for (int m : {3, 4}) {
    FollowerGraph gr = build_follower_graph(BetaSystem::pseudo_golden(m));
    for (int n : {10, 23, 60}) {
      CountTable t = count_words_by_zeros(gr, n);
      for (int k = 0; k < n / m - 1; ++k)
        CHECK(t.counts[static_cast<std::size_t>(k)] == 0);
    }
  }
}

TEST_CASE("csv output shape") {
  // golden 3-words are 000, 001, 010, 100, 101; zero-counts 3,2,2,2,1
  FollowerGraph gr = build_follower_graph(BetaSystem::golden());
  CountTable t = count_words_by_zeros(gr, 3);
  std::ostringstream os;
  t.to_csv(os);
  CHECK(os.str() == "n,k,count\n3,0,0\n3,1,1\n3,2,3\n3,3,1\n");
}

TEST_CASE("frequency-dimension estimate behaves at moderate depth") {
  BetaSystem two = BetaSystem::integer(2);
  FollowerGraph gr = build_follower_graph(two);
  FreqEstimate e = freq_dim_estimate(gr, 1000, 0.5, two);
  CHECK_FALSE(e.empty_class);
  CHECK(e.k == 500);
  CHECK(e.value == doctest::Approx(1.0).epsilon(0.01));
  CHECK(e.window_max >= e.value);

  // impossible frequency: the zero-class is empty
  BetaSystem t = BetaSystem::pseudo_golden(3);
  FollowerGraph g3 = build_follower_graph(t);
  FreqEstimate empty = freq_dim_estimate(g3, 60, 0.1, t);
  CHECK(empty.empty_class);
  CHECK(empty.value == 0.0);

  // a = 1: only the all-zeros word, dimension estimate exactly 0
  FreqEstimate ones = freq_dim_estimate(g3, 60, 1.0, t);
  CHECK_FALSE(ones.empty_class);
  CHECK(ones.value == 0.0);

  CHECK_THROWS_AS(freq_dim_estimate(g3, 5, 0.5, t), std::invalid_argument);
  CHECK_THROWS_AS(freq_dim_estimate(g3, 60, 1.5, t), std::domain_error);

  // the table overload serves many frequencies from one sweep
  CountTable table = count_words_by_zeros(g3, 200);
  FreqEstimate via_table = freq_dim_estimate(table, 0.5, t);
  FreqEstimate via_graph = freq_dim_estimate(g3, 200, 0.5, t);
  CHECK(via_table.value == via_graph.value);
  CHECK(via_table.k == via_graph.k);
}

TEST_CASE("rounding of the zero-count target is ties-to-even") {
  BetaSystem two = BetaSystem::integer(2);
  FollowerGraph gr = build_follower_graph(two);
  CountTable t = count_words_by_zeros(gr, 10);
  CHECK(freq_dim_estimate(t, 0.45, two).k == 4);   // 4.5 rounds to 4
  CHECK(freq_dim_estimate(t, 0.55, two).k == 6);   // 5.5 rounds to 6
  CHECK(freq_dim_estimate(t, 0.35, two).k == 4);   // 3.5 rounds to 4
}
