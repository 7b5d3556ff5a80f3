// Timing comparison of the search kernels on random instances: the serial
// reference scan, the OpenMP-parallel scan (bit-identical results), and the
// branch-and-bound solver. Prints a small table; exits nonzero if any kernel
// disagrees with the reference.

#include "ghpath/gh.hpp"
#include "ghpath/metric_space.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace ghpath;

namespace {

FiniteMetricSpace random_space(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("r" + std::to_string(i));
  std::vector<Rat> d(n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint64_t den = 1 + eng() % 3;
      Rat v(10 * den + eng() % (10 * den + 1), den); // in [10, 20]: always a metric
      d[i * n + j] = v;
      d[j * n + i] = std::move(v);
    }
  return validate_metric(std::move(labels), std::move(d));
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  std::size_t repeats = argc > 1 ? std::stoul(argv[1]) : 3;

#ifdef _OPENMP
  std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp: not enabled (parallel kernel falls back to serial)\n";
#endif
  std::cout << "repeats per cell: " << repeats << "\n\n";

  std::cout << std::left << std::setw(8) << "shape" << std::right << std::setw(14) << "codes"
            << std::setw(14) << "serial ms" << std::setw(14) << "parallel ms" << std::setw(10)
            << "speedup" << std::setw(14) << "bnb ms" << "\n";

  // {5, 6} (about 10^9 codes) is worth timing on a multicore box; it is left
  // out of the default list to keep a casual run short.
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
      {4, 5}, {4, 6}, {5, 5}, {4, 7}};

  int rc = 0;
  for (auto [m, n] : shapes) {
    FiniteMetricSpace X = random_space(m, 17 * m + n);
    FiniteMetricSpace Y = random_space(n, 23 * n + m);
    detail::ScaledProblem sp = detail::build_tables(X, Y);
    if (!sp.use64) {
      std::cout << "skipping " << m << "x" << n << ": needs big-int tables\n";
      continue;
    }

    double t_serial = 0, t_parallel = 0, t_bnb = 0;
    detail::ScanHit serial{}, parallel{};
    GHResult bnb;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      serial = detail::exhaustive_serial(sp.t64);
      t_serial += ms_since(t0);

      t0 = std::chrono::steady_clock::now();
      parallel = detail::exhaustive_parallel(sp.t64);
      t_parallel += ms_since(t0);

      t0 = std::chrono::steady_clock::now();
      GhOptions opts;
      opts.mode = GhMode::branch_and_bound;
      bnb = gh_exact(X, Y, opts);
      t_bnb += ms_since(t0);
    }
    t_serial /= double(repeats);
    t_parallel /= double(repeats);
    t_bnb /= double(repeats);

    if (!serial.found || serial.dis != parallel.dis || serial.code != parallel.code) {
      std::cout << "KERNEL MISMATCH at " << m << "x" << n << "\n";
      rc = 1;
    }
    if (bnb.value != Rat(serial.dis, 2) / Rat(BigInt(sp.denom))) {
      std::cout << "BNB VALUE MISMATCH at " << m << "x" << n << "\n";
      rc = 1;
    }

    std::ostringstream shape;
    shape << m << "x" << n;
    std::cout << std::left << std::setw(8) << shape.str() << std::right << std::setw(14)
              << (std::uint64_t(1) << (m * n)) << std::fixed << std::setprecision(2)
              << std::setw(14) << t_serial << std::setw(14) << t_parallel << std::setw(10)
              << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << std::setw(14) << t_bnb << "\n";
  }
  return rc;
}
