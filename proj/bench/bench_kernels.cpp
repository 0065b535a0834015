// Timing comparison of the serial reference kernels against the OpenMP ones:
// exact zero-count tables at several depths, and a dimension-spectrum sweep.
// Prints a table; exits nonzero if the two kernels ever disagree.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "betadim/beta_system.hpp"
#include "betadim/dimension.hpp"
#include "betadim/follower_graph.hpp"

using namespace betadim;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int mismatches = 0;

void bench_count_table(int m, int n) {
  FollowerGraph graph = build_follower_graph(BetaSystem::pseudo_golden(m));
  auto t0 = clock_type::now();
  CountTable serial = count_words_by_zeros(graph, n, ExecPolicy::serial);
  double ts = seconds_since(t0);
  t0 = clock_type::now();
  CountTable parallel = count_words_by_zeros(graph, n, ExecPolicy::parallel);
  double tp = seconds_since(t0);
  bool same = serial.counts == parallel.counts;
  if (!same) ++mismatches;
  std::printf("count m=%d n=%-5d  serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n",
              m, n, ts, tp, tp > 0 ? ts / tp : 0.0, same ? "identical" : "MISMATCH");
}

void bench_spectrum(int m, int points) {
  BetaSystem sys = BetaSystem::pseudo_golden(m);
  std::vector<double> grid;
  double lo = 1.0 / m, hi = 1.0;
  for (int i = 0; i <= points; ++i)
    grid.push_back(lo + (hi - lo) * i / points);
  auto t0 = clock_type::now();
  Spectrum serial = spectrum(sys, grid, ExecPolicy::serial);
  double ts = seconds_since(t0);
  t0 = clock_type::now();
  Spectrum parallel = spectrum(sys, grid, ExecPolicy::parallel);
  double tp = seconds_since(t0);
  bool same = true;
  for (std::size_t i = 0; i < serial.rows.size(); ++i)
    same = same && serial.rows[i].result.dim == parallel.rows[i].result.dim;
  if (!same) ++mismatches;
  std::printf("spectrum m=%d points=%-5d  serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n",
              m, points + 1, ts, tp, tp > 0 ? ts / tp : 0.0, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled: parallel policy falls back to serial\n");
#endif
  for (int n : {500, 1500, 3000}) bench_count_table(3, n);
  for (int n : {500, 1500}) bench_count_table(4, n);
  bench_spectrum(4, 2000);
  bench_spectrum(5, 2000);
  if (mismatches) {
    std::printf("%d kernel mismatch(es)\n", mismatches);
    return 1;
  }
  return 0;
}
