#include "ghpath/sphere_paths.hpp"

#include "ghpath/characteristics.hpp"
#include "ghpath/errors.hpp"

#include <algorithm>
#include <utility>

namespace ghpath {

namespace {

Rat grid_param(std::size_t k, std::size_t samples) { return Rat(k, samples - 1); }

// Can membership on this sphere be pinned without a search? Needs a generic
// center within the permutation budget and a radius below min(s, e)/4: any
// correspondence of distortion exactly 2r is then the unique optimum.
bool rigidity_applicable(const FiniteMetricSpace& center, const Rat& r) {
  CharacteristicsOptions copts;
  if (center.size() < 3 || center.size() > copts.permutation_budget) return false;
  SpaceCharacteristics ch = characteristics(center, copts);
  return ch.generic && r < min(ch.s, ch.e) / 4;
}

MembershipCertificate rigidity_cert(const FiniteMetricSpace& M, const FiniteMetricSpace& S,
                                    Relation W, const Rat& r) {
  if (distortion(W, M, S) != 2 * r)
    fail_verification("sample witness distortion is not exactly twice the radius");
  MembershipCertificate c;
  c.kind = CertKind::rigidity;
  c.radius = r;
  c.witness = std::move(W);
  return c;
}

} // namespace

MembershipReport on_sphere(const SphereSpec& spec, const FiniteMetricSpace& X,
                           const SphereOptions& opts) {
  if (spec.radius <= 0) fail_precondition("sphere radius must be positive");
  MembershipReport rep;
  if (spec.center.size() == 1) {
    // Closed form: the distance to the single-point space is diam/2, and the
    // unique correspondence (everything related to the point) witnesses it.
    rep.gh = X.diameter() / 2;
    rep.member = rep.gh == spec.radius;
    if (rep.member) {
      MembershipCertificate c;
      c.kind = CertKind::exact;
      c.radius = spec.radius;
      c.witness = product_relation(1, X.size());
      rep.certificate = std::move(c);
    }
    return rep;
  }
  GHResult g = gh_exact(spec.center, X, opts.gh);
  rep.gh = g.value;
  rep.member = g.value == spec.radius;
  if (!rep.member) return rep;
  MembershipCertificate c;
  c.kind = rigidity_applicable(spec.center, spec.radius) ? CertKind::rigidity : CertKind::exact;
  c.radius = spec.radius;
  c.witness = g.witness;
  rep.certificate = std::move(c);
  return rep;
}

SampledCurve path_delta1(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const Rat& r,
                         std::size_t samples, const SphereOptions& opts) {
  if (r <= 0) fail_precondition("sphere radius must be positive");
  if (samples < 2) fail_precondition("a sampled curve needs at least 2 samples");
  if (A.diameter() != 2 * r)
    fail_precondition("first endpoint is off the sphere: diameter " + to_string(A.diameter()) +
                      ", expected " + to_string(2 * r));
  if (B.diameter() != 2 * r)
    fail_precondition("second endpoint is off the sphere: diameter " + to_string(B.diameter()) +
                      ", expected " + to_string(2 * r));

  GHResult g = gh_exact(A, B, opts.gh);
  Relation R = prune_redundant_pairs(g.witness);

  SampledCurve curve;
  curve.construction = "delta1";
  curve.sphere = SphereSpec{delta1(), r};
  // Normalization at most doubles the geodesic speed and contributes at most
  // 4 gh(A, B) per unit parameter on top, since diam stays within [r, 2r].
  curve.lipschitz = 6 * g.value;
  for (std::size_t k = 0; k < samples; ++k) {
    Rat t = grid_param(k, samples);
    FiniteMetricSpace gt = geodesic_point(A, B, R, t, false);
    Rat dg = gt.diameter();
    if (dg < r)
      fail_verification("geodesic diameter dipped below the radius at t = " + to_string(t));
    FiniteMetricSpace S = scale(gt, 2 * r / dg); // diameter exactly 2r; = A/B at the ends
    MembershipCertificate c;
    c.kind = CertKind::exact;
    c.radius = r;
    c.witness = product_relation(1, S.size());
    curve.samples.push_back({std::move(t), std::move(S), std::move(c)});
  }
  return curve;
}

namespace {

// Root data for gh(G, t * C) = r on t in [1, 3].
struct RootResult {
  Rat lo, hi, mid;  // final bracket and the emitted scale
  Rat achieved;     // exact gh(G, mid * C)
  Relation witness; // optimal correspondence at the emitted scale
  bool exact = false;
  bool flagged = false;       // grid scan used
  bool hypothesis_ok = false; // 2 gh(G, C) > diam G (or diam G = 0)
  Rat gh_at_one;              // gh(G, C)
};

RootResult solve_scale(const FiniteMetricSpace& G, const FiniteMetricSpace& C, const Rat& r,
                       const Rat& tol, const GhOptions& gopts) {
  auto F = [&](const Rat& t) { return gh_exact(G, scale(C, t), gopts); };
  RootResult res;

  GHResult f1 = F(Rat(1));
  GHResult f3 = F(Rat(3));
  if (!(f1.value <= r && r <= f3.value))
    fail_verification("scale bracket failed: gh is " + to_string(f1.value) + " at scale 1 and " +
                      to_string(f3.value) + " at scale 3, radius " + to_string(r));
  res.gh_at_one = f1.value;
  const Rat dG = G.diameter();
  // Scaling is strictly monotone when 2 gh(G, C) > diam G; a single-point
  // G makes gh(G, tC) = t diam C / 2, monotone outright.
  res.hypothesis_ok = dG == 0 || 2 * f1.value > dG;

  auto exact_hit = [&](const Rat& t, GHResult&& f) {
    res.lo = res.hi = res.mid = t;
    res.achieved = r;
    res.exact = true;
    res.witness = std::move(f.witness);
    return res;
  };
  if (f1.value == r) return exact_hit(Rat(1), std::move(f1));
  if (res.hypothesis_ok && f3.value == r) return exact_hit(Rat(3), std::move(f3));

  Rat lo = 1, hi = 3;
  if (!res.hypothesis_ok) {
    // No monotonicity guarantee: take the first sign-change cell of a uniform
    // grid (bisection inside such a cell is sound regardless), flag the
    // sample. Roots that enter and leave within one cell can be missed.
    res.flagged = true;
    const std::size_t cells = 128;
    Rat prevT = 1;
    Rat prevV = f1.value;
    bool found = false;
    for (std::size_t i = 1; i <= cells && !found; ++i) {
      Rat ti = 1 + Rat(2 * i, cells);
      GHResult fi = F(ti);
      if (fi.value == r) return exact_hit(ti, std::move(fi));
      if (prevV <= r && r <= fi.value) {
        lo = prevT;
        hi = ti;
        found = true;
      } else {
        prevT = ti;
        prevV = fi.value;
      }
    }
    if (!found)
      fail_verification("no sign change found on the scale grid despite a valid bracket");
  }

  for (int iter = 0; iter < 200; ++iter) {
    Rat mid = (lo + hi) / 2;
    GHResult fm = F(mid);
    if (fm.value == r) return exact_hit(mid, std::move(fm));
    if (abs(fm.value - r) <= tol) {
      res.lo = std::move(lo);
      res.hi = std::move(hi);
      res.mid = std::move(mid);
      res.achieved = fm.value;
      res.witness = std::move(fm.witness);
      return res;
    }
    if (fm.value < r)
      lo = std::move(mid);
    else
      hi = std::move(mid);
  }
  fail_verification("scale bisection did not reach the tolerance in 200 steps");
}

} // namespace

SampledCurve path_large_sphere(const FiniteMetricSpace& G, const FiniteMetricSpace& A,
                               const FiniteMetricSpace& B, const Rat& r, std::size_t samples,
                               const SphereOptions& opts) {
  if (samples < 2) fail_precondition("a sampled curve needs at least 2 samples");
  if (opts.tolerance <= 0) fail_precondition("tolerance must be positive");
  const Rat dG = G.diameter();
  if (!(r > dG))
    fail_precondition("radius " + to_string(r) + " must exceed the center diameter " +
                      to_string(dG));

  SphereSpec sphere{G, r};
  MembershipReport memA = on_sphere(sphere, A, opts);
  if (!memA.member)
    fail_precondition("first endpoint is off the sphere: gh = " + to_string(memA.gh) +
                      ", radius " + to_string(r));
  MembershipReport memB = on_sphere(sphere, B, opts);
  if (!memB.member)
    fail_precondition("second endpoint is off the sphere: gh = " + to_string(memB.gh) +
                      ", radius " + to_string(r));

  // Normalize both endpoints onto the radius-r/2 sphere around the point and
  // connect them there; diam A, diam B lie in (r, 3r) so the back-scales
  // diam/r stay inside (1, 3).
  FiniteMetricSpace A1 = scale(A, r / A.diameter());
  FiniteMetricSpace B1 = scale(B, r / B.diameter());
  SampledCurve inner = path_delta1(A1, B1, r / 2, samples, opts);

  SampledCurve curve;
  curve.construction = "large";
  curve.sphere = sphere;
  bool anyFlagged = false;

  for (std::size_t k = 0; k < samples; ++k) {
    Rat t = grid_param(k, samples);
    if (k == 0) {
      curve.samples.push_back({std::move(t), A, std::move(memA.certificate)});
      continue;
    }
    if (k + 1 == samples) {
      curve.samples.push_back({std::move(t), B, std::move(memB.certificate)});
      continue;
    }
    const FiniteMetricSpace& C = inner.samples[k].space; // diam C = r exactly
    RootResult root = solve_scale(G, C, r, opts.tolerance, opts.gh);
    anyFlagged = anyFlagged || root.flagged;

    if (opts.spot_check_scaling && root.hypothesis_ok && dG > 0) {
      // Quantitative scaling bound on the 5-point grid 1, 3/2, ..., 3.
      for (int num = 2; num <= 6; ++num) {
        Rat lam(num, 2);
        Rat lhs = gh_exact(G, scale(C, lam), opts.gh).value;
        if (!(lhs >= root.gh_at_one + (lam - 1) / 4 * dG))
          fail_verification("scaling lower bound violated at scale " + to_string(lam));
      }
    }

    MembershipCertificate c;
    c.kind = CertKind::bracket;
    c.radius = r;
    c.tolerance = opts.tolerance;
    c.bracket_lo = std::move(root.lo);
    c.bracket_hi = std::move(root.hi);
    c.flagged = root.flagged;
    if (root.exact)
      c.note = "root hit exactly";
    else if (root.flagged)
      c.note = "monotonicity hypothesis failed; smallest grid-scan root";
    c.witness = std::move(root.witness);
    curve.samples.push_back({std::move(t), scale(C, root.mid), std::move(c)});
  }

  // Lipschitz bound: 3 L_inner from moving along the inner curve at scale
  // <= 3, plus the root drift; the root responds to a gh change of at most
  // 3 L_inner ds + 2 tol with slope >= diam G / 12 (single-point centers:
  // slope r/2 exactly). The tol term is folded in per grid step.
  const Rat Lg = inner.lipschitz;
  const Rat steps(samples - 1);
  Rat L = dG > 0 ? Rat((3 + 18 * r / dG) * Lg + 12 * r * opts.tolerance / dG * steps)
                 : Rat(6 * Lg + 2 * opts.tolerance * steps);
  try {
    Rat emp = 0;
    for (std::size_t k = 0; k + 1 < samples; ++k)
      emp = max(emp,
                gh_exact(curve.samples[k].space, curve.samples[k + 1].space, opts.gh).value * steps);
    if (emp > L) {
      if (!anyFlagged)
        fail_verification("observed curve speed " + to_string(emp) +
                          " exceeds the derived Lipschitz bound " + to_string(L));
      L = emp; // grid-scan roots may jump; record what actually happened
    }
  } catch (const error& e) {
    if (e.kind() != errc::budget) throw; // over-budget gaps keep the derived bound
  }
  curve.lipschitz = std::move(L);
  return curve;
}

namespace {

struct SmallSetup {
  Direction dir = Direction::plus;
  BlockPartition partition;
};

SmallSetup small_setup(const FiniteMetricSpace& M, const FiniteMetricSpace& X, const Rat& r,
                       const SphereOptions& opts) {
  SpaceCharacteristics ch = characteristics(M);
  if (!ch.generic)
    fail_precondition("center is not generic: s = " + to_string(ch.s) + ", t = " + to_string(ch.t) +
                      ", e = " + to_string(ch.e));
  Rat bound = min(min(ch.s / 4, ch.e / 4), ch.t / 6);
  if (!(r > 0 && r < bound))
    fail_precondition("radius " + to_string(r) + " is outside (0, min(s/4, e/4, t/6)) = (0, " +
                      to_string(bound) + ")");
  GHResult g = gh_exact(M, X, opts.gh);
  if (g.value != r)
    fail_precondition("not on the sphere: gh(center, X) = " + to_string(g.value) + ", radius " +
                      to_string(r));

  SmallSetup s;
  s.partition = partition_from(unique_optimal(M, X, opts.gh), M, X);
  DecomposedDistortion D = distortion_decomposed(s.partition, M, X);
  // The minus route is taken exactly when the deficit term attains the
  // distortion; the other two cases share the plus route.
  s.dir = D.deficit_term == 2 * r ? Direction::minus : Direction::plus;
  return s;
}

std::vector<CurveSample> rho_piece(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                                   const SmallSetup& su, const Rat& r, std::size_t K) {
  std::vector<CurveSample> out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    Rat t = grid_param(k, K);
    FiniteMetricSpace S = rho_deformation(X, su.partition, M, r, su.dir, t);
    MembershipCertificate c = rigidity_cert(M, S, su.partition.source, r);
    out.push_back({std::move(t), std::move(S), std::move(c)});
  }
  return out;
}

std::vector<CurveSample> nu_piece(const FiniteMetricSpace& M, const FiniteMetricSpace& X1,
                                  const SmallSetup& su, const Rat& r, std::size_t K) {
  std::vector<CurveSample> out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    Rat t = grid_param(k, K);
    FiniteMetricSpace S = nu_deformation(X1, su.partition, M, r, su.dir, t);
    // The final collapse lands on the shift of M itself; the witness becomes
    // the identity on M's points.
    Relation W = k + 1 == K ? identity_relation(M.size()) : su.partition.source;
    MembershipCertificate c = rigidity_cert(M, S, std::move(W), r);
    out.push_back({std::move(t), std::move(S), std::move(c)});
  }
  return out;
}

std::vector<CurveSample> segment_piece(const FiniteMetricSpace& M, const PerturbationTable& a,
                                       const PerturbationTable& b, const Rat& r, std::size_t K) {
  std::vector<CurveSample> out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    Rat t = grid_param(k, K);
    FiniteMetricSpace S = perturbation_segment(M, a, b, t);
    MembershipCertificate c = rigidity_cert(M, S, identity_relation(M.size()), r);
    out.push_back({std::move(t), std::move(S), std::move(c)});
  }
  return out;
}

// Concatenate pieces (each on a local [0,1] grid) into one curve on [0,1],
// dropping the duplicated joint samples after checking they coincide exactly.
SampledCurve compose(std::string construction, SphereSpec sphere,
                     std::vector<std::vector<CurveSample>> pieces, const Rat& maxLocalL) {
  SampledCurve c;
  c.construction = std::move(construction);
  c.sphere = std::move(sphere);
  const std::size_t P = pieces.size();
  c.lipschitz = Rat(P) * maxLocalL; // each piece is traversed P times faster
  for (std::size_t p = 0; p < P; ++p) {
    for (CurveSample& s : pieces[p]) {
      if (p > 0 && s.t == 0) {
        if (!(c.samples.back().space == s.space))
          fail_verification("piece joints do not coincide");
        continue;
      }
      Rat global = (Rat(p) + s.t) / Rat(P);
      c.samples.push_back({std::move(global), std::move(s.space), std::move(s.certificate)});
    }
  }
  return c;
}

} // namespace

Direction small_sphere_case(const FiniteMetricSpace& M, const FiniteMetricSpace& X, const Rat& r,
                            const SphereOptions& opts) {
  return small_setup(M, X, r, opts).dir;
}

SampledCurve path_small_sphere(const FiniteMetricSpace& M, const FiniteMetricSpace& X, const Rat& r,
                               std::size_t samples, const SphereOptions& opts) {
  if (samples < 2) fail_precondition("a sampled curve needs at least 2 samples");
  SmallSetup su = small_setup(M, X, r, opts);
  FiniteMetricSpace X1 = rho_deformation(X, su.partition, M, r, su.dir, Rat(1));

  std::vector<std::vector<CurveSample>> pieces;
  pieces.push_back(rho_piece(M, X, su, r, samples));
  pieces.push_back(nu_piece(M, X1, su, r, samples));
  return compose("small", SphereSpec{M, r}, std::move(pieces), 2 * r);
}

SampledCurve connect_on_small_sphere(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                                     const FiniteMetricSpace& Y, const Rat& r, std::size_t samples,
                                     const SphereOptions& opts) {
  if (samples < 2) fail_precondition("a sampled curve needs at least 2 samples");
  SmallSetup sx = small_setup(M, X, r, opts);
  SmallSetup sy = small_setup(M, Y, r, opts);
  FiniteMetricSpace X1 = rho_deformation(X, sx.partition, M, r, sx.dir, Rat(1));
  FiniteMetricSpace Y1 = rho_deformation(Y, sy.partition, M, r, sy.dir, Rat(1));

  std::vector<std::vector<CurveSample>> pieces;
  pieces.push_back(rho_piece(M, X, sx, r, samples));
  pieces.push_back(nu_piece(M, X1, sx, r, samples));

  if (sx.dir != sy.dir) {
    // Bridge between the two full shifts through the mixed-sign shift. Each
    // leg shares a full-magnitude entry with both of its ends, which keeps
    // the identity witness at distortion exactly 2r along the leg.
    const std::size_t n = M.size();
    PerturbationTable plus = sign_table(n, all_signs(n, +1), r);
    PerturbationTable minus = sign_table(n, all_signs(n, -1), r);
    PerturbationTable mixed = sign_table(n, mixed_signs(n), r);
    const PerturbationTable& from = sx.dir == Direction::plus ? plus : minus;
    const PerturbationTable& to = sx.dir == Direction::plus ? minus : plus;
    pieces.push_back(segment_piece(M, from, mixed, r, samples));
    pieces.push_back(segment_piece(M, mixed, to, r, samples));
  }

  auto reversed = [](std::vector<CurveSample> v) {
    std::reverse(v.begin(), v.end());
    for (CurveSample& s : v) s.t = 1 - s.t;
    return v;
  };
  pieces.push_back(reversed(nu_piece(M, Y1, sy, r, samples)));
  pieces.push_back(reversed(rho_piece(M, Y, sy, r, samples)));

  return compose("small-connect", SphereSpec{M, r}, std::move(pieces), 2 * r);
}

VerifyReport verify_curve(const SampledCurve& curve, bool recheck_gh, const SphereOptions& opts) {
  VerifyReport rep;
  auto issue = [&rep](std::size_t i, std::string what) {
    rep.ok = false;
    rep.issues.push_back({i, std::move(what)});
  };

  const std::size_t N = curve.samples.size();
  if (N < 2) {
    issue(SIZE_MAX, "curve needs at least 2 samples");
    return rep;
  }

  // Parameter grid: strictly increasing from 0 to 1.
  if (curve.samples.front().t != 0) issue(0, "parameter grid must start at 0");
  if (curve.samples.back().t != 1) issue(N - 1, "parameter grid must end at 1");
  for (std::size_t i = 0; i + 1 < N; ++i)
    if (!(curve.samples[i].t < curve.samples[i + 1].t))
      issue(i + 1, "parameter grid is not strictly increasing");

  // Every sample table must be a metric.
  for (std::size_t i = 0; i < N; ++i) {
    try {
      validate_metric(curve.samples[i].space.labels(), curve.samples[i].space.table());
    } catch (const error& e) {
      issue(i, std::string("sample is not a valid metric space: ") + e.what());
    }
  }

  // Certificates.
  const FiniteMetricSpace* center = curve.sphere ? &curve.sphere->center : nullptr;
  for (std::size_t i = 0; i < N; ++i) {
    const CurveSample& s = curve.samples[i];
    if (!s.certificate) {
      if (center) issue(i, "sphere curve sample carries no certificate");
      continue;
    }
    ++rep.certificates_checked;
    if (!center) {
      issue(i, "certificate present but the curve names no sphere");
      continue;
    }
    const MembershipCertificate& c = *s.certificate;
    const Rat& r = curve.sphere->radius;
    if (c.radius != r) {
      issue(i, "certificate radius differs from the sphere radius");
      continue;
    }

    auto witness_ok = [&]() {
      if (c.witness.m != center->size() || c.witness.n != s.space.size() ||
          !is_correspondence(c.witness)) {
        issue(i, "certificate witness is not a correspondence of the right shape");
        return false;
      }
      if (distortion(c.witness, *center, s.space) != 2 * r) {
        issue(i, "certificate witness distortion is not exactly twice the radius");
        return false;
      }
      return true;
    };
    auto recompute = [&](bool hard) {
      try {
        ++rep.gh_recomputed;
        return std::optional<Rat>(gh_exact(*center, s.space, opts.gh).value);
      } catch (const error& e) {
        if (e.kind() != errc::budget) throw;
        --rep.gh_recomputed;
        if (hard) issue(i, "certificate cannot be re-verified within the search budget");
        return std::optional<Rat>();
      }
    };

    switch (c.kind) {
    case CertKind::exact: {
      if (!witness_ok()) break;
      if (center->size() == 1) {
        // dis(witness) = diam(sample) = 2r already pins gh = r; recompute
        // only on request.
        if (recheck_gh) {
          if (auto v = recompute(false); v && *v != r)
            issue(i, "recomputed distance differs from the radius");
        }
        break;
      }
      if (auto v = recompute(true); v && *v != r)
        issue(i, "recomputed distance differs from the radius");
      break;
    }
    case CertKind::rigidity: {
      if (center->size() < 3) {
        issue(i, "rigidity certificate around a center of fewer than 3 points");
        break;
      }
      try {
        SpaceCharacteristics ch = characteristics(*center);
        if (!ch.generic) {
          issue(i, "rigidity certificate around a non-generic center");
          break;
        }
        if (!(r < min(ch.s, ch.e) / 4)) {
          issue(i, "rigidity certificate radius is not below min(s, e)/4");
          break;
        }
      } catch (const error& e) {
        issue(i, std::string("center characteristics unavailable: ") + e.what());
        break;
      }
      if (!witness_ok()) break;
      if (recheck_gh) {
        if (auto v = recompute(false); v && *v != r)
          issue(i, "recomputed distance differs from the radius");
      }
      break;
    }
    case CertKind::bracket: {
      if (c.tolerance <= 0) {
        issue(i, "bracket certificate with non-positive tolerance");
        break;
      }
      if (!(c.bracket_lo <= c.bracket_hi)) {
        issue(i, "bracket certificate interval is inverted");
        break;
      }
      if (auto v = recompute(true); v && abs(*v - r) > c.tolerance)
        issue(i, "recomputed distance misses the radius by more than the tolerance");
      break;
    }
    }
  }

  // Lipschitz gaps.
  for (std::size_t i = 0; i + 1 < N; ++i) {
    Rat dt = curve.samples[i + 1].t - curve.samples[i].t;
    try {
      Rat v = gh_exact(curve.samples[i].space, curve.samples[i + 1].space, opts.gh).value;
      ++rep.lipschitz_gaps_checked;
      if (v > curve.lipschitz * dt)
        issue(i, "gap to the next sample exceeds the Lipschitz bound: " + to_string(v) + " > " +
                     to_string(curve.lipschitz * dt));
    } catch (const error& e) {
      if (e.kind() != errc::budget) throw;
      issue(i, "gap to the next sample cannot be checked within the search budget");
    }
  }

  return rep;
}

} // namespace ghpath
