#pragma once

#include "ghpath/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ghpath {

// A finite metric space: distinct point labels plus a dense symmetric distance
// table with zero diagonal satisfying the triangle inequality. Instances are
// immutable after construction; every public constructor path validates the
// axioms except the explicitly named trusted() factory.
class FiniteMetricSpace {
public:
  // Validates labels (non-empty, distinct) and the metric axioms, reporting
  // the first offending entry by index. Throws error(errc::validation).
  static FiniteMetricSpace validated(std::vector<std::string> labels,
                                     std::vector<Rat> distances);

  // For constructions whose validity is guaranteed by a proven identity
  // (e.g. convex combinations of metrics on a common set). Checks shape only.
  static FiniteMetricSpace trusted(std::vector<std::string> labels,
                                   std::vector<Rat> distances);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Rat>& table() const { return d_; }
  const Rat& d(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }

  const Rat& diameter() const { return diam_; }

  bool operator==(const FiniteMetricSpace& other) const {
    return labels_ == other.labels_ && d_ == other.d_;
  }

private:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<Rat> d);

  std::vector<std::string> labels_;
  std::vector<Rat> d_; // row-major size() x size()
  Rat diam_;
};

// The one-point metric space.
FiniteMetricSpace delta1(const std::string& label = "pt");

// validate_metric: the checked entry point used by file loading and by
// constructions that promise to re-check themselves.
FiniteMetricSpace validate_metric(std::vector<std::string> labels,
                                  std::vector<Rat> distances);

// scale(X, lambda), lambda >= 0: multiplies every distance; lambda == 0 gives
// the one-point space (all points collapse).
FiniteMetricSpace scale(const FiniteMetricSpace& X, const Rat& lambda);

// combine_metrics: (1-t)*d1 + t*d2 on a common label set, t in [0,1]. Both
// tables must be metrics on the same points; the combination is then a metric
// by convexity, asserted rather than re-derived.
FiniteMetricSpace combine_metrics(const std::vector<std::string>& labels,
                                  const std::vector<Rat>& d1,
                                  const std::vector<Rat>& d2,
                                  const Rat& t);

// Hausdorff distance between two non-empty point subsets of X (by index).
Rat hausdorff_distance(const FiniteMetricSpace& X,
                       const std::vector<std::size_t>& A,
                       const std::vector<std::size_t>& B);

// Distance from X to the one-point space: diameter(X)/2.
Rat gh_to_point(const FiniteMetricSpace& X);

// True iff some bijection between the point sets preserves all distances.
// Spaces are otherwise compared by exact label + table equality only.
bool isometric(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

} // namespace ghpath
