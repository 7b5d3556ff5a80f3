#include "ghpath/curves.hpp"

#include "ghpath/characteristics.hpp"
#include "ghpath/errors.hpp"

#include <algorithm>

namespace ghpath {

namespace {

void check_unit_interval(const Rat& t) {
  if (t < 0 || t > 1) fail_precondition("curve parameter must lie in [0,1]");
}

} // namespace

FiniteMetricSpace geodesic_point(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                 const Relation& R, const Rat& t, bool check_optimal,
                                 const GhOptions& opts) {
  check_unit_interval(t);
  if (R.m != X.size() || R.n != Y.size())
    fail_precondition("correspondence shape does not match the spaces");
  if (!is_correspondence(R)) fail_precondition("geodesic needs a correspondence");
  if (check_optimal) {
    if (distortion(R, X, Y) != 2 * gh_exact(X, Y, opts).value)
      fail_precondition("geodesic needs an optimal correspondence");
  }

  // The zero-distance classes at the ends are exactly the fibers of the two
  // projections, so the quotients are the original spaces.
  if (t == 0) return X;
  if (t == 1) return Y;

  std::vector<std::string> labels;
  labels.reserve(R.pairs.size());
  for (auto [i, j] : R.pairs) labels.push_back(X.labels()[i] + "|" + Y.labels()[j]);

  const std::size_t k = R.pairs.size();
  std::vector<Rat> d(k * k, Rat(0));
  const Rat s = Rat(1) - t;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      auto [x1, y1] = R.pairs[a];
      auto [x2, y2] = R.pairs[b];
      Rat v = s * X.d(x1, x2) + t * Y.d(y1, y2);
      d[a * k + b] = v;
      d[b * k + a] = std::move(v);
    }
  // Interior points of the segment between two metrics on the pair set are
  // metrics again (each axiom is linear; distinct pairs differ in some
  // coordinate, and both terms vanish only for equal pairs).
  return FiniteMetricSpace::trusted(std::move(labels), std::move(d));
}

SampledCurve geodesic_curve(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                            std::size_t samples, const GhOptions& opts) {
  if (samples < 2) fail_precondition("a sampled curve needs at least 2 samples");
  GHResult gh = gh_exact(X, Y, opts);
  Relation R = prune_redundant_pairs(gh.witness); // still optimal: subsets never distort more

  SampledCurve curve;
  curve.construction = "geodesic";
  curve.lipschitz = gh.value;
  for (std::size_t k = 0; k < samples; ++k) {
    Rat t(k, samples - 1);
    curve.samples.push_back({t, geodesic_point(X, Y, R, t, false), std::nullopt});
  }
  return curve;
}

Rat curve_length_estimate(const SampledCurve& curve, std::size_t stride, const GhOptions& opts) {
  if (stride == 0) fail_precondition("stride must be positive");
  if (curve.samples.size() < 2) fail_precondition("length estimate needs at least 2 samples");
  Rat total = 0;
  for (std::size_t i = 0; i + 1 < curve.samples.size(); i += stride) {
    std::size_t j = std::min(i + stride, curve.samples.size() - 1);
    total += gh_exact(curve.samples[i].space, curve.samples[j].space, opts).value;
  }
  return total;
}

Rat PerturbationTable::magnitude() const {
  Rat m = 0;
  for (const Rat& v : a) m = max(m, abs(v));
  return m;
}

PerturbationTable PerturbationTable::from_pair_offsets(std::size_t n,
                                                       const std::vector<Rat>& offsets) {
  if (offsets.size() != n * (n - 1) / 2)
    fail_precondition("expected one offset per unordered pair");
  PerturbationTable P;
  P.n = n;
  P.a.assign(n * n, Rat(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      P.a[i * n + j] = offsets[k];
      P.a[j * n + i] = offsets[k];
      ++k;
    }
  return P;
}

FiniteMetricSpace perturb_space(const FiniteMetricSpace& M, const PerturbationTable& table) {
  const std::size_t n = M.size();
  if (n < 3) fail_precondition("perturbation needs at least 3 points");
  if (table.n != n || table.a.size() != n * n)
    fail_precondition("perturbation table shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (table.at(i, i) != 0) fail_precondition("perturbation diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (table.at(i, j) != table.at(j, i)) fail_precondition("perturbation must be symmetric");
  }

  const Rat s = min_positive_distance(M);
  const Rat slack = min_triangle_slack(M);
  const Rat a = table.magnitude();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (abs(table.at(i, j)) >= s)
        fail_precondition("offset at (" + M.labels()[i] + "," + M.labels()[j] +
                          ") reaches the minimal distance " + to_string(s));
  if (3 * a > slack)
    fail_precondition("offset magnitude " + to_string(a) +
                      " exceeds a third of the triangle slack " + to_string(slack));

  std::vector<Rat> d = M.table();
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += table.a[k];
  // The bounds above keep every distance positive and every triangle slack
  // at least slack - 3a >= 0; validation is a re-check only.
  return validate_metric(M.labels(), std::move(d));
}

std::vector<int> all_signs(std::size_t n, int sign) {
  return std::vector<int>(n * (n - 1) / 2, sign);
}

std::vector<int> mixed_signs(std::size_t n) {
  if (n < 3) fail_precondition("a mixed sign pattern needs at least 3 points");
  std::vector<int> signs(n * (n - 1) / 2, -1);
  signs[0] = +1;
  return signs;
}

PerturbationTable sign_table(std::size_t n, const std::vector<int>& pair_signs, const Rat& r) {
  if (r <= 0) fail_precondition("sign perturbation needs a positive radius");
  std::vector<Rat> offsets;
  offsets.reserve(pair_signs.size());
  for (int s : pair_signs) {
    if (s != 1 && s != -1) fail_precondition("pair signs must be +1 or -1");
    offsets.push_back(s == 1 ? Rat(2 * r) : Rat(-2 * r));
  }
  return PerturbationTable::from_pair_offsets(n, offsets);
}

FiniteMetricSpace sign_space(const FiniteMetricSpace& M, const std::vector<int>& pair_signs,
                             const Rat& r) {
  return perturb_space(M, sign_table(M.size(), pair_signs, r));
}

FiniteMetricSpace perturbation_segment(const FiniteMetricSpace& M, const PerturbationTable& a,
                                       const PerturbationTable& b, const Rat& t) {
  check_unit_interval(t);
  if (a.n != M.size() || b.n != M.size()) fail_precondition("perturbation table shape mismatch");
  const Rat mag = a.magnitude();
  if (mag != b.magnitude())
    fail_precondition("segment endpoints must perturb with equal magnitude (" + to_string(mag) +
                      " vs " + to_string(b.magnitude()) + ")");
  perturb_space(M, a); // both endpoints must be admissible on their own
  perturb_space(M, b);

  SpaceCharacteristics ch = characteristics(M);
  if (2 * mag >= min(ch.s, ch.e))
    fail_precondition("segment magnitude " + to_string(mag) +
                      " is not below min(s, e)/2 = " + to_string(min(ch.s, ch.e) / 2));

  PerturbationTable mix;
  mix.n = M.size();
  mix.a.resize(a.a.size());
  const Rat u = Rat(1) - t;
  for (std::size_t k = 0; k < mix.a.size(); ++k) mix.a[k] = u * a.a[k] + t * b.a[k];
  return perturb_space(M, mix);
}

namespace {

void check_small_sphere_setting(const FiniteMetricSpace& M, const Rat& r) {
  SpaceCharacteristics ch = characteristics(M);
  if (!ch.generic) fail_precondition("deformations need a generic center");
  Rat bound = min(min(ch.s / 4, ch.e / 4), ch.t / 6);
  if (r <= 0 || r >= bound)
    fail_precondition("radius " + to_string(r) + " must satisfy 0 < r < min(s/4, e/4, t/6) = " +
                      to_string(bound));
}

FiniteMetricSpace revalidate(std::vector<std::string> labels, std::vector<Rat> d) {
  try {
    return validate_metric(std::move(labels), std::move(d));
  } catch (const error& e) {
    fail_verification(std::string("deformed table failed the metric re-check: ") + e.what());
  }
}

} // namespace

FiniteMetricSpace rho_deformation(const FiniteMetricSpace& X, const BlockPartition& P,
                                  const FiniteMetricSpace& M, const Rat& r, Direction dir,
                                  const Rat& t) {
  check_unit_interval(t);
  check_small_sphere_setting(M, r);
  if (P.center_size != M.size()) fail_precondition("partition does not match the center");
  if (distortion(P.source, M, X) != 2 * r)
    fail_precondition("block correspondence must have distortion exactly 2r");

  std::vector<std::size_t> owner(X.size(), SIZE_MAX);
  for (std::size_t i = 0; i < P.blocks.size(); ++i)
    for (std::size_t x : P.blocks[i]) owner[x] = i;

  const Rat shift = dir == Direction::plus ? Rat(2 * r) : Rat(-2 * r);
  const std::size_t n = X.size();
  std::vector<Rat> d = X.table();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (owner[x] == owner[y]) continue;
      Rat target = M.d(owner[x], owner[y]) + shift;
      Rat v = (Rat(1) - t) * X.d(x, y) + t * target;
      d[x * n + y] = v;
      d[y * n + x] = std::move(v);
    }
  return revalidate(X.labels(), std::move(d));
}

FiniteMetricSpace nu_deformation(const FiniteMetricSpace& X1, const BlockPartition& P,
                                 const FiniteMetricSpace& M, const Rat& r, Direction dir,
                                 const Rat& t) {
  check_unit_interval(t);
  check_small_sphere_setting(M, r);
  if (P.center_size != M.size()) fail_precondition("partition does not match the center");

  std::vector<std::size_t> owner(X1.size(), SIZE_MAX);
  for (std::size_t i = 0; i < P.blocks.size(); ++i)
    for (std::size_t x : P.blocks[i]) owner[x] = i;

  const Rat shift = dir == Direction::plus ? Rat(2 * r) : Rat(-2 * r);
  const std::size_t n = X1.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (owner[x] == owner[y]) continue;
      if (X1.d(x, y) != M.d(owner[x], owner[y]) + shift)
        fail_precondition("cross distances must already sit at |ij| " +
                          std::string(dir == Direction::plus ? "+" : "-") + " 2r");
    }

  if (t == 1) {
    // Blocks collapse to the center points; the quotient is the sign space
    // itself, labels included.
    return sign_space(M, all_signs(M.size(), dir == Direction::plus ? +1 : -1), r);
  }

  std::vector<Rat> d = X1.table();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (owner[x] != owner[y]) continue;
      Rat v = (Rat(1) - t) * X1.d(x, y);
      d[x * n + y] = v;
      d[y * n + x] = std::move(v);
    }
  return revalidate(X1.labels(), std::move(d));
}

} // namespace ghpath
