#pragma once

#include "ghpath/gh.hpp"

namespace ghpath {

// Partition of X induced by a low-distortion correspondence with a center
// space M: block i collects the points of X related to center point i. Well
// defined whenever dis(R) < s(M) — each point of X then relates to exactly
// one center point.
struct BlockPartition {
  std::size_t center_size = 0;
  std::vector<std::vector<std::size_t>> blocks; // X indices per center point
  Relation source;
};

// The distortion of a block-structured correspondence splits into three
// exact terms whose maximum is dis(R):
//   diam_term    = max_i diam(X_i)
//   excess_term  = max_{i!=j} ( max-cross-distance(X_i, X_j) - |ij| )
//   deficit_term = max_{i!=j} ( |ij| - min-cross-distance(X_i, X_j) )
// Terms over an empty index set (single block) are reported as 0; excess and
// deficit may individually be negative while the maximum stays correct.
struct DecomposedDistortion {
  Rat diam_term;
  Rat excess_term;
  Rat deficit_term;
  Rat total() const { return max(diam_term, max(excess_term, deficit_term)); }
};

BlockPartition partition_from(const Relation& R, const FiniteMetricSpace& M,
                              const FiniteMetricSpace& X);

DecomposedDistortion distortion_decomposed(const BlockPartition& P, const FiniteMetricSpace& M,
                                           const FiniteMetricSpace& X);

// Everything the separation property promises for a center M with
// gh(M, X) < d <= s(M)/2, re-checked rather than assumed:
//  1. some correspondence has distortion < 2d (the optimum qualifies);
//  2. it induces a partition of X into blocks;
//  3. every cross distance differs from the matching center distance by < 2d;
//  4. every block has diameter < 2d;
//  5. when d <= s(M)/4, every correspondence of distortion < 2d induces the
//     same partition (checked by filtered enumeration);
//  6. when d <= min(s(M), e(M))/4, that correspondence is unique and optimal
//     with distortion exactly 2*gh(M, X).
struct SeparationReport {
  Rat gh;
  Rat d;
  Relation witness;
  Rat witness_distortion;
  BlockPartition partition;
  bool cross_bounds_ok = false; // item 3
  bool block_diams_ok = false;  // item 4
  bool partition_unique_checked = false;
  bool partition_unique = false; // item 5
  bool uniqueness_checked = false;
  bool unique_optimal = false; // item 6
  std::size_t low_distortion_count = 0;
};

SeparationReport check_separation(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                                  const Rat& d, const GhOptions& opts = {});

// For a generic center M with gh(M, X) < min(s(M), e(M))/4: the unique
// correspondence of distortion < min(s(M), e(M))/2, which is optimal. Found
// by filtered enumeration and verified unique; throws verification error if
// the filter catches more than one (cannot happen when the preconditions
// hold).
Relation unique_optimal(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                        const GhOptions& opts = {});

} // namespace ghpath
