#pragma once

#include "ghpath/blocks.hpp"

#include <optional>
#include <string>

namespace ghpath {

// --- certified curves -------------------------------------------------------

struct SphereSpec {
  FiniteMetricSpace center;
  Rat radius;
};

// Proof payload that a sample lies on (or within tolerance of) the sphere.
//   exact     gh(center, X) was computed exactly and equals the radius;
//             the witness is an optimal correspondence.
//   rigidity  the witness has distortion exactly 2r and the center is generic
//             with r < min(s, e)/4; the unique-low-distortion property then
//             pins gh(center, X) = r without a search.
//   bracket   X = scale(C, t*) where the exact values at the stored scale
//             bracket straddle the radius; |gh - r| <= tolerance.
enum class CertKind { exact, rigidity, bracket };

struct MembershipCertificate {
  CertKind kind = CertKind::exact;
  Rat radius;
  Relation witness;
  Rat tolerance;   // bracket only
  Rat bracket_lo;  // bracket only: scale interval ends
  Rat bracket_hi;
  bool flagged = false; // a guaranteed hypothesis failed and a scan was used
  std::string note;
};

struct CurveSample {
  Rat t;
  FiniteMetricSpace space;
  std::optional<MembershipCertificate> certificate;
};

// A polygonally sampled curve in the space of finite metric spaces. When
// `sphere` is set, every sample is certified to lie on it. The Lipschitz
// field promises gh(sample_i, sample_j) <= lipschitz * |t_i - t_j|.
struct SampledCurve {
  std::string construction;
  std::optional<SphereSpec> sphere;
  std::vector<CurveSample> samples;
  Rat lipschitz;
};

// --- geodesics --------------------------------------------------------------

// Point at parameter t of the straight-line curve through correspondence R:
// the pair set of R carries the metric (1-t)|xx'| + t|yy'|. At t = 0 and 1
// the zero-distance pairs are collapsed, giving back X and Y exactly. R must
// be an optimal correspondence for the curve to be a shortest path; this is
// re-checked (pass check_optimal = false to skip when the caller already
// knows).
FiniteMetricSpace geodesic_point(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                 const Relation& R, const Rat& t, bool check_optimal = true,
                                 const GhOptions& opts = {});

// Uniform grid of `samples` >= 2 points along a shortest curve from X to Y
// through a redundancy-pruned optimal correspondence. Its length is
// gh_exact(X, Y); lipschitz = that value.
SampledCurve geodesic_curve(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                            std::size_t samples, const GhOptions& opts = {});

// Inscribed-polygon length: sum of gh_exact over sample pairs `stride` grid
// steps apart (the final shorter hop included). A lower bound for the curve
// length; never decreases when stride shrinks to a divisor.
Rat curve_length_estimate(const SampledCurve& curve, std::size_t stride = 1,
                          const GhOptions& opts = {});

// --- distance perturbations -------------------------------------------------

// Symmetric table of signed offsets with zero diagonal, added entrywise to a
// distance table.
struct PerturbationTable {
  std::size_t n = 0;
  std::vector<Rat> a; // n*n

  const Rat& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  Rat magnitude() const;

  // Offsets for unordered pairs in lexicographic order (0,1), (0,2), ...
  static PerturbationTable from_pair_offsets(std::size_t n, const std::vector<Rat>& offsets);
};

// M_rho with rho(i,j) = |ij| + a_ij. Requires |a_ij| < s(M) entrywise and
// magnitude <= t(M)/3, which guarantee rho is again a metric; the result is
// still re-validated. When magnitude/2 < min(s, e)/4 the identity
// correspondence certifies gh(M, M_rho) = magnitude/2.
FiniteMetricSpace perturb_space(const FiniteMetricSpace& M, const PerturbationTable& table);

enum class Direction { plus, minus };

// Full-magnitude signed perturbation: a_ij = sign_ij * 2r. pair_signs uses
// +1/-1 in the same lexicographic pair order as from_pair_offsets.
FiniteMetricSpace sign_space(const FiniteMetricSpace& M, const std::vector<int>& pair_signs,
                             const Rat& r);
PerturbationTable sign_table(std::size_t n, const std::vector<int>& pair_signs, const Rat& r);
std::vector<int> all_signs(std::size_t n, int sign);
// One + on the first pair, - elsewhere: shares a full-magnitude entry with
// both the all-plus and the all-minus tables (needs n >= 3).
std::vector<int> mixed_signs(std::size_t n);

// Point at parameter t of the linear segment between two perturbations of the
// same magnitude: offsets (1-t)a + t a'. If the tables share an entry of full
// magnitude, every point of the segment keeps gh(M, .) = magnitude/2.
FiniteMetricSpace perturbation_segment(const FiniteMetricSpace& M, const PerturbationTable& a,
                                       const PerturbationTable& b, const Rat& t);

// --- block deformations -----------------------------------------------------

// Cross-block distances slide linearly from |x_i x_j| toward |ij| + 2r
// (plus) or |ij| - 2r (minus); within-block distances stay. Defined in the
// small-sphere setting: M generic, 0 < r < min(s/4, e/4, t/6), and the block
// correspondence of P must have distortion exactly 2r.
FiniteMetricSpace rho_deformation(const FiniteMetricSpace& X, const BlockPartition& P,
                                  const FiniteMetricSpace& M, const Rat& r, Direction dir,
                                  const Rat& t);

// Follow-up stage for a rho endpoint (cross distances exactly |ij| +- 2r):
// within-block distances shrink by the factor (1-t); at t = 1 the blocks
// collapse and the result is exactly sign_space(M, all +-, r) on M's labels.
FiniteMetricSpace nu_deformation(const FiniteMetricSpace& X1, const BlockPartition& P,
                                 const FiniteMetricSpace& M, const Rat& r, Direction dir,
                                 const Rat& t);

} // namespace ghpath
