#include "ghpath/metric_space.hpp"

#include "ghpath/errors.hpp"

#include <algorithm>
#include <set>

namespace ghpath {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<Rat> d)
    : labels_(std::move(labels)), d_(std::move(d)) {
  diam_ = 0;
  for (const Rat& v : d_) diam_ = ghpath::max(diam_, v);
}

FiniteMetricSpace FiniteMetricSpace::trusted(std::vector<std::string> labels,
                                             std::vector<Rat> distances) {
  if (labels.empty()) fail_validation("space must have at least one point");
  if (distances.size() != labels.size() * labels.size())
    fail_validation("distance table shape does not match label count");
  return FiniteMetricSpace(std::move(labels), std::move(distances));
}

FiniteMetricSpace FiniteMetricSpace::validated(std::vector<std::string> labels,
                                               std::vector<Rat> distances) {
  const std::size_t n = labels.size();
  if (n == 0) fail_validation("space must have at least one point");
  if (distances.size() != n * n)
    fail_validation("distance table shape does not match label count");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i].empty()) fail_validation("empty label at index " + std::to_string(i));
    if (!seen.insert(labels[i]).second)
      fail_validation("duplicate label '" + labels[i] + "'");
  }

  auto at = [&](std::size_t i, std::size_t j) -> const Rat& { return distances[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0)
      fail_validation("nonzero diagonal at (" + labels[i] + "," + labels[i] + ")");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i))
        fail_validation("asymmetric entries at (" + labels[i] + "," + labels[j] + ")");
      if (at(i, j) <= 0)
        fail_validation("non-positive distance between distinct points (" + labels[i] + "," +
                        labels[j] + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, j) + at(j, k) < at(i, k))
          fail_validation("triangle violation at (" + labels[i] + "," + labels[j] + "," +
                          labels[k] + "): " + to_string(at(i, j)) + " + " + to_string(at(j, k)) +
                          " < " + to_string(at(i, k)));

  return FiniteMetricSpace(std::move(labels), std::move(distances));
}

FiniteMetricSpace validate_metric(std::vector<std::string> labels, std::vector<Rat> distances) {
  return FiniteMetricSpace::validated(std::move(labels), std::move(distances));
}

FiniteMetricSpace delta1(const std::string& label) {
  return FiniteMetricSpace::trusted({label}, {Rat(0)});
}

FiniteMetricSpace scale(const FiniteMetricSpace& X, const Rat& lambda) {
  if (lambda < 0) fail_precondition("scale factor must be non-negative");
  if (lambda == 0) return delta1(X.labels().front());
  std::vector<Rat> d = X.table();
  for (Rat& v : d) v *= lambda;
  return FiniteMetricSpace::trusted(X.labels(), std::move(d));
}

FiniteMetricSpace combine_metrics(const std::vector<std::string>& labels,
                                  const std::vector<Rat>& d1,
                                  const std::vector<Rat>& d2,
                                  const Rat& t) {
  if (t < 0 || t > 1) fail_precondition("combination parameter must lie in [0,1]");
  // Both inputs must individually be metrics on the same labels; the convex
  // combination is then a metric (each axiom is linear in the table).
  FiniteMetricSpace a = validate_metric(labels, d1);
  FiniteMetricSpace b = validate_metric(labels, d2);
  std::vector<Rat> d(d1.size());
  const Rat s = Rat(1) - t;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = s * d1[i] + t * d2[i];
  (void)a;
  (void)b;
  return FiniteMetricSpace::trusted(labels, std::move(d));
}

Rat hausdorff_distance(const FiniteMetricSpace& X,
                       const std::vector<std::size_t>& A,
                       const std::vector<std::size_t>& B) {
  if (A.empty() || B.empty()) fail_precondition("hausdorff_distance needs non-empty subsets");
  for (std::size_t i : A)
    if (i >= X.size()) fail_precondition("subset index out of range");
  for (std::size_t j : B)
    if (j >= X.size()) fail_precondition("subset index out of range");

  auto directed = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    Rat worst = 0;
    for (std::size_t a : from) {
      Rat best = X.d(a, to.front());
      for (std::size_t b : to) best = min(best, X.d(a, b));
      worst = max(worst, best);
    }
    return worst;
  };
  return max(directed(A, B), directed(B, A));
}

Rat gh_to_point(const FiniteMetricSpace& X) { return X.diameter() / 2; }

namespace {

bool extend_isometry(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                     std::vector<std::size_t>& map, std::vector<bool>& used, std::size_t i) {
  const std::size_t n = X.size();
  if (i == n) return true;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < i && ok; ++k)
      if (X.d(i, k) != Y.d(j, map[k])) ok = false;
    if (!ok) continue;
    map[i] = j;
    used[j] = true;
    if (extend_isometry(X, Y, map, used, i + 1)) return true;
    used[j] = false;
  }
  return false;
}

} // namespace

bool isometric(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  if (X.size() != Y.size()) return false;
  std::vector<Rat> mx = X.table(), my = Y.table();
  std::sort(mx.begin(), mx.end());
  std::sort(my.begin(), my.end());
  if (mx != my) return false;
  std::vector<std::size_t> map(X.size());
  std::vector<bool> used(X.size(), false);
  return extend_isometry(X, Y, map, used, 0);
}

} // namespace ghpath
