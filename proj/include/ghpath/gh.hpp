#pragma once

#include "ghpath/relation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ghpath {

enum class GhMode { automatic, exhaustive, branch_and_bound };
enum class GhKernel { automatic, serial, parallel };

struct GhOptions {
  GhMode mode = GhMode::automatic;
  GhKernel kernel = GhKernel::automatic;
  // Collect every minimizer, not just the least-encoding one. Requires the
  // instance to fit the exhaustive bit budget.
  bool want_all = false;
  // Branch-and-bound only: accept any optimal witness instead of spending a
  // second search on the least-encoding one.
  bool value_only = false;
  std::size_t exhaustive_bit_budget = 30;
  std::size_t bnb_size_budget = 8;
};

struct GHResult {
  Rat value;                         // exact distance = (minimal distortion)/2
  Relation witness;                  // minimizer with least row-major encoding
  std::vector<Relation> all_optimal; // filled when want_all
  std::string method;                // "exhaustive" | "branch-and-bound" | "closed-form"
};

// Exact distance between two finite metric spaces:
//   gh(X, Y) = 1/2 * min { dis(R) : R a correspondence between X and Y }.
// Exhaustive mode scans every correspondence encoding in increasing order;
// branch-and-bound assigns column subsets row by row, pruning against the
// incumbent and the |diam X - diam Y| lower bound, then recovers the
// least-encoding minimizer with a second ordered search. Both modes return
// identical results. X indexes rows of the encoding grid, Y columns.
GHResult gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  const GhOptions& opts = {});

namespace detail {

// Distances of both spaces brought to a common denominator so the search
// compares plain integers. t[p * (m*n) + q] = | |x_i x_i'| - |y_j y_j'| |
// scaled, where p = i*n + j and q = i'*n + j'.
template <typename IntT>
struct DisTable {
  std::size_t m = 0, n = 0;
  std::vector<IntT> t;
  IntT lower_bound = 0; // scaled |diam X - diam Y|
};

struct ScaledProblem {
  bool use64 = false;
  DisTable<std::int64_t> t64;
  DisTable<BigInt> tbig;
  BigInt denom; // scale factor applied to all distances
};

ScaledProblem build_tables(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

struct ScanHit {
  bool found = false;
  std::int64_t dis = 0;
  std::uint64_t code = 0;
};

// Reference kernel: ascending scan over all encodings.
ScanHit exhaustive_serial(const DisTable<std::int64_t>& T);
// Same scan fanned out over disjoint encoding ranges with OpenMP; merges
// per-chunk minima lexicographically by (distortion, code), so the result is
// identical to the serial kernel for any thread count.
ScanHit exhaustive_parallel(const DisTable<std::int64_t>& T);

struct BigScanHit {
  bool found = false;
  BigInt dis{0};
  std::uint64_t code = 0;
};
BigScanHit exhaustive_serial_big(const DisTable<BigInt>& T);

} // namespace detail

} // namespace ghpath
