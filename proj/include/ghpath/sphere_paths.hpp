#pragma once

#include "ghpath/curves.hpp"

namespace ghpath {

// Outcome of a sphere membership test. `gh` always carries the exact
// distance from the center (the certificate may additionally pin it without
// a search, or bracket it for scaled samples).
struct MembershipReport {
  bool member = false;
  Rat gh;
  std::optional<MembershipCertificate> certificate;
};

struct SphereOptions {
  GhOptions gh{};
  // Large-sphere curves: per-sample |gh - r| <= tolerance.
  Rat tolerance = Rat(1, 1000000000);
  // Re-verify the scaling lower bound gh(G, scale(C, l)) >= gh(G, C) +
  // (l - 1)/4 * diam(G) on a 5-point grid per sample (when its hypothesis
  // 2 gh(G, C) > diam G > 0 holds).
  bool spot_check_scaling = true;
};

// Exact membership test for X on the sphere of `spec.radius` around
// `spec.center`. Single-point centers use the closed form gh = diam/2 at any
// size; otherwise gh_exact runs within its budgets. Members around a generic
// center with radius < min(s, e)/4 get a rigidity certificate (checkable
// without any search); other members get an exact one.
MembershipReport on_sphere(const SphereSpec& spec, const FiniteMetricSpace& X,
                           const SphereOptions& opts = {});

// Curve on the sphere of radius r around the single-point space, from A to B
// (both must have diameter exactly 2r): a geodesic between A and B,
// renormalized at each sample so the diameter stays exactly 2r. Every sample
// certifies gh(point, sample) = r exactly. Lipschitz bound: 6 * gh(A, B).
SampledCurve path_delta1(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Rat& r,
                         std::size_t samples, const SphereOptions& opts = {});

// Curve on the sphere of radius r around a center G with diam G < r, from
// member A to member B. Construction: normalize A, B onto the radius-r/2
// sphere around the point, connect there, then rescale each sample by the
// root t in [1, 3] of gh(G, t * sample) = r, found by bisection (the bracket
// is re-checked at every sample). Interior samples carry bracket
// certificates |gh - r| <= tolerance; endpoints are A and B exactly. When
// the monotonicity hypothesis 2 gh(G, sample) > diam G fails at a sample,
// the smallest bracketed root from a grid scan is used and the sample is
// flagged.
SampledCurve path_large_sphere(const FiniteMetricSpace& G, const FiniteMetricSpace& A,
                               const FiniteMetricSpace& B, const Rat& r, std::size_t samples,
                               const SphereOptions& opts = {});

// Which deformation direction the small-sphere path from X takes: minus iff
// the deficit term of the decomposed distortion attains 2r; plus otherwise.
Direction small_sphere_case(const FiniteMetricSpace& M, const FiniteMetricSpace& X, const Rat& r,
                            const SphereOptions& opts = {});

// Curve on the sphere of radius r around a generic center M (with
// 0 < r < min(s/4, e/4, t/6)) from member X to the canonical anchor: the
// cross-block slide (first half) followed by the block collapse (second
// half), ending at M with all distances shifted by +2r or -2r. Every sample
// carries a rigidity certificate with witness distortion exactly 2r.
SampledCurve path_small_sphere(const FiniteMetricSpace& M, const FiniteMetricSpace& X, const Rat& r,
                               std::size_t samples, const SphereOptions& opts = {});

// Full certified chain from X to Y on the small sphere: path_small_sphere(X),
// then (when the anchors differ) a two-segment bridge through the mixed-sign
// shift space, then the reverse of path_small_sphere(Y).
SampledCurve connect_on_small_sphere(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                                     const FiniteMetricSpace& Y, const Rat& r, std::size_t samples,
                                     const SphereOptions& opts = {});

// --- curve verification -------------------------------------------------

struct VerifyIssue {
  std::size_t sample; // SIZE_MAX for curve-level issues
  std::string what;
};

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyIssue> issues;
  std::size_t certificates_checked = 0;
  std::size_t gh_recomputed = 0;
  std::size_t lipschitz_gaps_checked = 0;
};

// Re-checks a curve from its data alone: sample tables are valid metrics,
// the parameter grid is strictly increasing from 0 to 1, every certificate
// holds (rigidity and single-point-center certificates without a search;
// bracket ones by an exact gh computation within budget), and consecutive
// samples respect the stored Lipschitz bound. With recheck_gh, additionally
// recomputes gh(center, sample) for every certified sample where budgets
// allow.
VerifyReport verify_curve(const SampledCurve& curve, bool recheck_gh = false,
                          const SphereOptions& opts = {});

} // namespace ghpath
