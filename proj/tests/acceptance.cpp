// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every numeric expectation here is exact rational arithmetic unless a
// tolerance is part of the property itself.

#include "ghpath/characteristics.hpp"
#include "ghpath/cli_app.hpp"
#include "ghpath/curves.hpp"
#include "ghpath/generators.hpp"
#include "ghpath/gh.hpp"
#include "ghpath/io.hpp"
#include "ghpath/metric_space.hpp"
#include "ghpath/relation.hpp"
#include "ghpath/sphere_paths.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace ghpath;

namespace {

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw check_failure(what);
}

FiniteMetricSpace m3() {
  return validate_metric({"p1", "p2", "p3"},
                         {Rat(0), Rat(3), Rat(4), Rat(3), Rat(0), Rat(5), Rat(4), Rat(5), Rat(0)});
}

FiniteMetricSpace two(const Rat& d) {
  return validate_metric({"a", "b"}, {Rat(0), d, d, Rat(0)});
}

FiniteMetricSpace eq3(const Rat& d) {
  return validate_metric({"u", "v", "w"}, {Rat(0), d, d, d, Rat(0), d, d, d, Rat(0)});
}

// Random space of n points with distances in [10, 19]: the range keeps every
// triangle inequality automatic, so any draw is a metric.
FiniteMetricSpace random_space(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("r" + std::to_string(i));
  std::vector<Rat> d(n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // Denominator first, numerator spanning [10, 20] at that denominator:
      // max/min distance stays at most 2, so every triangle closes.
      std::uint64_t den = 1 + eng() % 3;
      Rat v(10 * den + eng() % (10 * den + 1), den);
      d[i * n + j] = v;
      d[j * n + i] = std::move(v);
    }
  return validate_metric(std::move(labels), std::move(d));
}

Rat brute_force_e(const FiniteMetricSpace& X) {
  std::vector<std::size_t> perm(X.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rat best(-1);
  while (std::next_permutation(perm.begin(), perm.end())) {
    Rat d = permutation_distortion(X, perm);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

// 1 ---------------------------------------------------------------------------

void axioms_and_estimates() {
  std::vector<FiniteMetricSpace> spaces;
  for (std::size_t i = 0; i < 200; ++i) spaces.push_back(random_space(1 + i % 4, 1000 + i));

  for (const FiniteMetricSpace& X : spaces)
    expect(gh_exact(X, X).value == 0, "gh(X, X) must vanish");

  for (std::size_t i = 0; i + 1 < 200; i += 2) {
    const FiniteMetricSpace& X = spaces[i];
    const FiniteMetricSpace& Y = spaces[i + 1];
    Rat g = gh_exact(X, Y).value;
    expect(gh_exact(Y, X).value == g, "gh must be symmetric");
    expect(2 * g <= max(X.diameter(), Y.diameter()),
           "2 gh must be at most the larger diameter");
    expect(abs(X.diameter() - Y.diameter()) <= 2 * g,
           "diameters may differ by at most 2 gh");
    expect(g >= 0, "gh must be nonnegative");
  }

  for (std::size_t k = 0; k < 100; ++k) {
    const FiniteMetricSpace& A = spaces[k];
    const FiniteMetricSpace& B = spaces[(k + 67) % 200];
    const FiniteMetricSpace& C = spaces[(k + 134) % 200];
    expect(gh_exact(A, C).value <= gh_exact(A, B).value + gh_exact(B, C).value,
           "gh must satisfy the triangle inequality");
  }
}

// 2 ---------------------------------------------------------------------------

void closed_forms_and_scaling() {
  std::vector<FiniteMetricSpace> fixtures = {m3(),
                                             two(Rat(1)),
                                             eq3(Rat(1)),
                                             delta1(),
                                             gen_geometric_progression(4, Rat(5)),
                                             gen_wellorder_graph(2, Rat(1, 10)),
                                             gen_distinct_random(5, 3, Rat(1, 100))};
  for (std::size_t i = 0; i < 8; ++i) fixtures.push_back(random_space(1 + i % 4, 2000 + i));

  for (const FiniteMetricSpace& X : fixtures) {
    GHResult r = gh_exact(delta1(), X);
    expect(2 * r.value == X.diameter(), "distance to the one-point space must be diam/2");
    expect(r.method == "closed-form", "one-point centers must use the closed form");
  }

  for (std::size_t k = 0; k < 50; ++k) {
    FiniteMetricSpace X = random_space(2 + k % 3, 3000 + k);
    Rat l1(1 + k % 5, 1 + (k / 5) % 3);
    Rat l2(1 + (k + 2) % 7, 2);
    Rat g = gh_exact(scale(X, l1), scale(X, l2)).value;
    expect(2 * g == abs(l1 - l2) * X.diameter(),
           "two scalings of one space must sit at |l1 - l2| diam / 2");
  }

  for (std::size_t k = 0; k < 50; ++k) {
    FiniteMetricSpace X = random_space(2 + k % 3, 4000 + k);
    FiniteMetricSpace Y = random_space(2 + (k + 1) % 3, 5000 + k);
    Rat l(1 + k % 6, 1 + k % 4);
    expect(gh_exact(scale(X, l), scale(Y, l)).value == l * gh_exact(X, Y).value,
           "gh must be homogeneous under a common scaling");
  }
}

// 3 ---------------------------------------------------------------------------

void simplex_oracle() {
  FiniteMetricSpace A = two(Rat(1));
  FiniteMetricSpace B = eq3(Rat(1));
  std::vector<Relation> all;
  for_each_correspondence(2, 3, [&](std::uint64_t code) {
    all.push_back(Relation::from_encoding(2, 3, code));
    return true;
  });
  expect(all.size() == 25, "2 x 3 has exactly 25 correspondences");
  Rat best(-1);
  for (const Relation& R : all) {
    Rat d = distortion(R, A, B);
    if (best < 0 || d < best) best = d;
  }
  expect(best == Rat(1), "the best distortion over all 25 must be 1");
  GHResult g = gh_exact(A, B);
  expect(g.value == Rat(1, 2), "gh(two-point, equilateral-3) must be 1/2");
  expect(g.method == "exhaustive", "the search must have been exhaustive");
}

// 4 ---------------------------------------------------------------------------

void geodesic_law() {
  for (std::size_t k = 0; k < 20; ++k) {
    FiniteMetricSpace X = random_space(2 + k % 3, 6000 + k);
    FiniteMetricSpace Y = random_space(2 + (k + 2) % 3, 7000 + k);
    Rat g = gh_exact(X, Y).value;
    SampledCurve c = geodesic_curve(X, Y, 9);
    expect(c.samples.size() == 9, "geodesic grid must have 9 samples");
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = i + 1; j < 9; ++j) {
        Rat dij = gh_exact(c.samples[i].space, c.samples[j].space).value;
        expect(dij == (c.samples[j].t - c.samples[i].t) * g,
               "gh between geodesic samples must be |s - t| gh(X, Y)");
      }
    expect(curve_length_estimate(c) == g, "the polygonal length must equal gh(X, Y)");
  }
}

// 5 ---------------------------------------------------------------------------

void separation_suite() {
  FiniteMetricSpace M = m3();
  SpaceCharacteristics ch = characteristics(M);
  expect(ch.s == Rat(3) && ch.t == Rat(2) && ch.e == Rat(1) && ch.generic,
         "the 3-4-5 triangle must have characteristics (3, 2, 1)");
  expect(brute_force_e(M) == Rat(1), "a 5-permutation scan must confirm e = 1");

  const Rat r(1, 5);
  const Rat d(1, 4); // gh = 1/5 < d = 1/4 = min(s, e)/4
  for (SpherePointMode mode :
       {SpherePointMode::split, SpherePointMode::excess, SpherePointMode::deficit}) {
    FiniteMetricSpace X = gen_sphere_point(M, r, mode, 0);
    SeparationReport rep = check_separation(M, X, d);
    expect(rep.gh == r, "the fixture must sit at gh exactly 1/5");
    expect(rep.witness_distortion < 2 * d, "item 1: some correspondence has distortion < 2d");
    expect(rep.partition.blocks.size() == M.size(), "item 2: one block per center point");
    expect(rep.cross_bounds_ok, "item 3: cross distances within 2d of center distances");
    expect(rep.block_diams_ok, "item 4: block diameters below 2d");
    expect(rep.partition_unique_checked && rep.partition_unique,
           "item 5: every low-distortion correspondence induces the same partition");
    expect(rep.uniqueness_checked && rep.unique_optimal,
           "item 6: the low-distortion correspondence is unique and optimal");
    expect(rep.low_distortion_count == 1, "exactly one correspondence below the threshold");
    expect(rep.witness_distortion == 2 * r, "the unique witness has distortion exactly 2r");
    expect(unique_optimal(M, X) == rep.witness,
           "the uniqueness filter must return the same witness");

    std::size_t doubled = 0, empty = 0;
    for (const auto& b : rep.partition.blocks) {
      doubled += b.size() == 2;
      empty += b.empty();
    }
    expect(empty == 0, "no block may be empty");
    expect(doubled == (mode == SpherePointMode::split ? 1u : 0u),
           "only the split fixture doubles a center point");
  }
}

// 6 ---------------------------------------------------------------------------

void perturbation_suite() {
  FiniteMetricSpace M = m3();
  const Rat r(1, 5);
  const Rat a(2, 5);

  FiniteMetricSpace Mp = perturb_space(M, PerturbationTable::from_pair_offsets(3, {a, a, a}));
  expect(gh_exact(M, Mp).value == r, "an all-plus shift of magnitude a must sit at gh = a/2");

  PerturbationTable plus = sign_table(3, all_signs(3, +1), r);
  PerturbationTable mixed = sign_table(3, mixed_signs(3), r);
  PerturbationTable minus = sign_table(3, all_signs(3, -1), r);
  const std::vector<std::pair<const PerturbationTable*, const PerturbationTable*>> legs = {
      {&plus, &mixed}, {&mixed, &minus}};
  for (auto [from, to] : legs) {
    for (int k = 0; k <= 32; ++k) {
      FiniteMetricSpace S = perturbation_segment(M, *from, *to, Rat(k, 32));
      expect(gh_exact(M, S).value == r,
             "every sample of a full-magnitude sign segment must stay at gh = r");
    }
  }
}

// 7 ---------------------------------------------------------------------------

void delta1_sphere_curve() {
  FiniteMetricSpace A = two(Rat(2));
  FiniteMetricSpace B = eq3(Rat(2));
  SampledCurve c = path_delta1(A, B, Rat(1), 33);
  expect(c.samples.size() == 33, "the curve must carry 33 samples");
  expect(c.samples.front().space == A && c.samples.back().space == B,
         "the endpoints must be reproduced exactly");
  for (const CurveSample& s : c.samples) {
    expect(s.space.diameter() == Rat(2), "every sample must have diameter exactly 2");
    expect(gh_to_point(s.space) == Rat(1), "every sample must sit at distance 1 from the point");
  }
  expect(verify_curve(c, true).ok, "the curve must pass full verification");
}

// 8 ---------------------------------------------------------------------------

void large_sphere_curve() {
  FiniteMetricSpace G = two(Rat(1));
  FiniteMetricSpace A = two(Rat(7));
  FiniteMetricSpace B = eq3(Rat(6));
  const Rat r(3);
  const Rat tol(1, 1000000000);

  expect(gh_exact(G, A).value == r && gh_exact(G, B).value == r,
         "both endpoints must sit at distance exactly 3");

  SampledCurve c = path_large_sphere(G, A, B, r, 33);
  expect(c.samples.size() == 33, "the curve must carry 33 samples");
  expect(c.samples.front().space == A && c.samples.back().space == B,
         "the endpoints must be reproduced exactly");
  for (const CurveSample& s : c.samples) {
    Rat g = gh_exact(G, s.space).value;
    expect(abs(g - r) <= tol, "every sample must be within tolerance of the radius");
    expect(2 * g > G.diameter(), "the monotonicity hypothesis must hold at every sample");
    expect(s.certificate && !s.certificate->flagged, "no sample may be flagged");
  }

  // The bracket that the root search relies on, re-checked from scratch on
  // the normalized inner curve.
  SampledCurve inner =
      path_delta1(scale(A, r / A.diameter()), scale(B, r / B.diameter()), r / 2, 33);
  for (const CurveSample& s : inner.samples) {
    Rat at1 = gh_exact(G, s.space).value;
    Rat at3 = gh_exact(G, scale(s.space, Rat(3))).value;
    expect(at1 <= r && r <= at3, "the scale bracket [1, 3] must straddle the radius");
    for (int num = 2; num <= 6; ++num) {
      Rat lam(num, 2);
      expect(gh_exact(G, scale(s.space, lam)).value >= at1 + (lam - 1) / 4 * G.diameter(),
             "the quantitative scaling lower bound must hold on the 5-point grid");
    }
  }
  expect(verify_curve(c, true).ok, "the curve must pass full verification");
}

// 9 ---------------------------------------------------------------------------

void small_sphere_chains() {
  FiniteMetricSpace M = m3();
  const Rat r(1, 5);
  const std::vector<SpherePointMode> modes = {SpherePointMode::split, SpherePointMode::excess,
                                              SpherePointMode::deficit};

  auto check_chain = [&](const SampledCurve& c) {
    for (const CurveSample& s : c.samples) {
      expect(s.certificate.has_value(), "every sample must carry a certificate");
      expect(distortion(s.certificate->witness, M, s.space) == 2 * r,
             "every witness must have distortion exactly 2r");
      expect(gh_exact(M, s.space).value == r, "an exhaustive recheck must confirm gh = r");
    }
    expect(verify_curve(c, true).ok, "the chain must pass full verification");
  };

  for (SpherePointMode mode : modes) {
    FiniteMetricSpace X = gen_sphere_point(M, r, mode, 0);
    SampledCurve c = path_small_sphere(M, X, r, 17);
    expect(c.samples.front().space == X, "the chain must start at the given member");
    check_chain(c);
  }
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      FiniteMetricSpace X = gen_sphere_point(M, r, modes[i], 0);
      FiniteMetricSpace Y = gen_sphere_point(M, r, modes[j], 1);
      SampledCurve c = connect_on_small_sphere(M, X, Y, r, 9);
      expect(c.samples.front().space == X && c.samples.back().space == Y,
             "the chain must join the two given members");
      check_chain(c);
    }
}

// 10 --------------------------------------------------------------------------

void generator_suite() {
  FiniteMetricSpace P = gen_geometric_progression(4, Rat(5));
  expect(min_positive_distance(P) == Rat(5), "progression: s must be 5");
  expect(min_triangle_slack(P) == Rat(1), "progression: t must be 1");
  expect(brute_force_e(P) >= Rat(4), "progression: brute-force e must be at least 4");

  FiniteMetricSpace E = extend_one_point(m3(), Rat(6));
  expect(characteristics(E).generic, "a one-point extension must stay generic");

  const Rat eps(1, 10);
  FiniteMetricSpace G = gen_wellorder_graph(2, eps);
  expect(min_positive_distance(G) == Rat(1), "graph gadget: s must be 1");
  expect(min_triangle_slack(G) == 1 - eps, "graph gadget: t must be 1 - eps");
  Rat e2 = brute_force_e(G);
  expect(e2 == eps,
         "graph gadget at n = 2: brute-force e is " + to_string(e2) + ", not eps = " +
             to_string(eps) + "; the terminal base vertex and the pendant vertex of its own "
             "gadget are twin leaves on the same hub, and swapping them moves no distance");
}

// 11 --------------------------------------------------------------------------

void solver_equivalence() {
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
      {2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}, {4, 4}, {2, 5}, {3, 5}, {4, 5}, {2, 6}};
  for (std::size_t k = 0; k < 100; ++k) {
    auto [m, n] = shapes[k % shapes.size()];
    FiniteMetricSpace X = random_space(m, 8000 + k);
    FiniteMetricSpace Y = random_space(n, 9000 + k);

    GhOptions ex, bb;
    ex.mode = GhMode::exhaustive;
    bb.mode = GhMode::branch_and_bound;
    GHResult a = gh_exact(X, Y, ex);
    GHResult b = gh_exact(X, Y, bb);
    expect(a.value == b.value, "both solvers must agree on the value");
    expect(a.witness == b.witness, "both solvers must pick the same tie-broken witness");
  }
}

// 12 --------------------------------------------------------------------------

void cli_round_trip() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ghpath_acceptance";
  fs::create_directories(dir);
  auto at = [&](const std::string& f) { return (dir / f).string(); };

  auto run = [&](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (code != 0)
      throw check_failure("cli exited with " + std::to_string(code) + " for '" + args[0] +
                          "': " + err.str());
    return out.str();
  };

  save_space(at("two2.json"), two(Rat(2)));
  save_space(at("eq32.json"), eq3(Rat(2)));
  save_space(at("two1.json"), two(Rat(1)));
  save_space(at("two7.json"), two(Rat(7)));
  save_space(at("eq36.json"), eq3(Rat(6)));
  save_space(at("m3.json"), m3());
  run({"gen", "sphere-point", "--center", at("m3.json"), "--radius", "1/5", "--mode", "split",
       "-o", at("x.json")});
  run({"gen", "sphere-point", "--center", at("m3.json"), "--radius", "1/5", "--mode", "deficit",
       "-o", at("y.json")});

  const std::vector<std::pair<std::string, std::vector<std::string>>> curves = {
      {"c7.json",
       {"sphere-path", "delta1", at("two2.json"), at("eq32.json"), "--radius", "1", "--samples",
        "33", "-o", at("c7.json")}},
      {"c8.json",
       {"sphere-path", "large", at("two7.json"), at("eq36.json"), "--center", at("two1.json"),
        "--radius", "3", "--samples", "33", "--tol", "1e-9", "-o", at("c8.json")}},
      {"c9.json",
       {"sphere-path", "small", at("x.json"), at("y.json"), "--center", at("m3.json"), "--radius",
        "1/5", "--samples", "17", "-o", at("c9.json")}}};

  for (const auto& [file, args] : curves) {
    run(args);
    std::string first = read_text_file(at(file));

    std::string verdict = run({"verify", at(file), "--recheck-gh"});
    expect(verdict.find("ok\n") != std::string::npos &&
               verdict.find("invalid") == std::string::npos,
           "verification of " + file + " must report ok");

    run(args); // repeat byte-for-byte
    expect(read_text_file(at(file)) == first, file + " must be byte-identical across runs");
  }
}

// harness ----------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  std::function<void()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "distance axioms and diameter estimates", axioms_and_estimates},
      {2, "closed forms for one-point centers and scalings", closed_forms_and_scaling},
      {3, "two-point vs equilateral-3 by full enumeration", simplex_oracle},
      {4, "geodesic speed law and polygonal length", geodesic_law},
      {5, "separation property around a generic center", separation_suite},
      {6, "sign perturbations and segments stay on the sphere", perturbation_suite},
      {7, "certified curve on a sphere around the one-point space", delta1_sphere_curve},
      {8, "certified curve on a large sphere around a bounded center", large_sphere_curve},
      {9, "certified chains on a small sphere", small_sphere_chains},
      {10, "example generators and their characteristics", generator_suite},
      {11, "branch-and-bound matches exhaustive search", solver_equivalence},
      {12, "cli round-trip and byte determinism", cli_round_trip},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      c.run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (detail.empty()) {
      std::cout << "pass | " << c.id << " | " << c.name << " (" << ms << " ms)\n";
    } else {
      ++failures;
      std::cout << "FAIL | " << c.id << " | " << c.name << " (" << ms << " ms): " << detail
                << "\n";
    }
  }
  if (failures)
    std::cout << failures << " of " << criteria.size() << " criteria failed\n";
  else
    std::cout << "all " << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
