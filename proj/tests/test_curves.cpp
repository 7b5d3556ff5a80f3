#include <doctest.h>

#include "ghpath/curves.hpp"
#include "ghpath/errors.hpp"
#include "ghpath/gh.hpp"

#include "helpers.hpp"

#include <algorithm>

using namespace ghpath;
using ghtest::eq3;
using ghtest::from_upper;
using ghtest::m3;
using ghtest::two;

namespace {

std::vector<Rat> sorted_offdiag(const FiniteMetricSpace& X) {
  std::vector<Rat> v;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j) v.push_back(X.d(i, j));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("geodesic between two-point spaces interpolates the gap linearly") {
  SampledCurve c = geodesic_curve(two(Rat(1)), two(Rat(3)), 5);
  CHECK(c.construction == "geodesic");
  CHECK(c.lipschitz == Rat(1));
  REQUIRE(c.samples.size() == 5);

  const Rat expected[] = {Rat(1), Rat(3, 2), Rat(2), Rat(5, 2), Rat(3)};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(c.samples[k].t == Rat(k, 4));
    REQUIRE(c.samples[k].space.size() == 2);
    CHECK(c.samples[k].space.diameter() == expected[k]);
  }
  CHECK(c.samples.front().space == two(Rat(1)));
  CHECK(c.samples.back().space == two(Rat(3)));

  SUBCASE("sample-to-sample speed matches the distance exactly") {
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a + 1; b < 5; ++b) {
        Rat d = gh_exact(c.samples[a].space, c.samples[b].space).value;
        CHECK(d == (c.samples[b].t - c.samples[a].t) * Rat(1));
      }
  }
  SUBCASE("polygonal length equals the distance at every stride") {
    CHECK(curve_length_estimate(c) == Rat(1));
    CHECK(curve_length_estimate(c, 2) == Rat(1));
    CHECK(curve_length_estimate(c, 10) == Rat(1));
  }
}

TEST_CASE("geodesic midpoint between a triangle and a segment") {
  FiniteMetricSpace X = eq3(Rat(2));
  FiniteMetricSpace Y = two(Rat(2));
  GHResult g = gh_exact(X, Y);
  CHECK(g.value == Rat(1));

  FiniteMetricSpace mid = geodesic_point(X, Y, g.witness, Rat(1, 2));
  REQUIRE(mid.size() == 3);
  CHECK(sorted_offdiag(mid) == std::vector<Rat>{Rat(1), Rat(2), Rat(2)});
  CHECK(gh_exact(X, mid).value == Rat(1, 2));
  CHECK(gh_exact(mid, Y).value == Rat(1, 2));
}

TEST_CASE("geodesic endpoints are returned exactly, labels included") {
  FiniteMetricSpace X = m3();
  FiniteMetricSpace Y = eq3(Rat(4));
  GHResult g = gh_exact(X, Y);
  CHECK(geodesic_point(X, Y, g.witness, Rat(0)) == X);
  CHECK(geodesic_point(X, Y, g.witness, Rat(1)) == Y);
}

TEST_CASE("geodesic guards") {
  FiniteMetricSpace X = two(Rat(1));
  FiniteMetricSpace Y = two(Rat(3));
  GHResult g = gh_exact(X, Y);

  SUBCASE("parameter outside [0,1]") {
    CHECK_THROWS_AS(geodesic_point(X, Y, g.witness, Rat(2)), error);
  }
  SUBCASE("non-optimal correspondences are rejected unless the check is waived") {
    Relation full = product_relation(2, 2);
    REQUIRE(distortion(full, X, Y) > 2 * g.value);
    try {
      geodesic_point(X, Y, full, Rat(1, 2));
      FAIL("expected an error");
    } catch (const error& e) {
      CHECK(e.kind() == errc::precondition);
    }
    FiniteMetricSpace mid = geodesic_point(X, Y, full, Rat(1, 2), /*check_optimal=*/false);
    CHECK(mid.size() == 4); // every related pair becomes a point
  }
  SUBCASE("a sampled curve needs at least two samples") {
    CHECK_THROWS_AS(geodesic_curve(X, Y, 1), error);
  }
}

TEST_CASE("uniform perturbations of the 3-4-5 triangle") {
  FiniteMetricSpace M = m3();
  const Rat a(2, 5);

  SUBCASE("all distances raised") {
    FiniteMetricSpace P = perturb_space(M, PerturbationTable::from_pair_offsets(3, {a, a, a}));
    CHECK(sorted_offdiag(P) == std::vector<Rat>{Rat(17, 5), Rat(22, 5), Rat(27, 5)});
    CHECK(gh_exact(M, P).value == Rat(1, 5)); // half the magnitude
  }
  SUBCASE("all distances lowered") {
    FiniteMetricSpace P = perturb_space(M, PerturbationTable::from_pair_offsets(3, {-a, -a, -a}));
    CHECK(sorted_offdiag(P) == std::vector<Rat>{Rat(13, 5), Rat(18, 5), Rat(23, 5)});
    CHECK(gh_exact(M, P).value == Rat(1, 5));
  }
  SUBCASE("mixed signs at full magnitude") {
    FiniteMetricSpace P = sign_space(M, mixed_signs(3), Rat(1, 5));
    CHECK(sorted_offdiag(P) == std::vector<Rat>{Rat(17, 5), Rat(18, 5), Rat(23, 5)});
    CHECK(gh_exact(M, P).value == Rat(1, 5));
  }
  SUBCASE("sign helpers agree with explicit offset tables") {
    CHECK(all_signs(3, 1) == std::vector<int>{1, 1, 1});
    CHECK(mixed_signs(3) == std::vector<int>{1, -1, -1});
    FiniteMetricSpace via_signs = sign_space(M, all_signs(3, 1), Rat(1, 5));
    FiniteMetricSpace via_table = perturb_space(M, sign_table(3, all_signs(3, 1), Rat(1, 5)));
    CHECK(via_signs == via_table);
  }
}

TEST_CASE("perturbation guards") {
  FiniteMetricSpace M = m3(); // s = 3, t = 2

  SUBCASE("entry at or above the smallest distance") {
    auto big = PerturbationTable::from_pair_offsets(3, {Rat(3), Rat(0), Rat(0)});
    CHECK_THROWS_AS(perturb_space(M, big), error);
  }
  SUBCASE("magnitude above a third of the slack") {
    auto wide = PerturbationTable::from_pair_offsets(3, {Rat(7, 10), Rat(0), Rat(0)});
    try {
      perturb_space(M, wide);
      FAIL("expected an error");
    } catch (const error& e) {
      CHECK(e.kind() == errc::precondition);
    }
  }
  SUBCASE("offset count must match the pair count") {
    CHECK_THROWS_AS(PerturbationTable::from_pair_offsets(3, {Rat(1)}), error);
  }
  SUBCASE("tiny spaces cannot be perturbed") {
    CHECK_THROWS_AS(
        perturb_space(two(Rat(1)), PerturbationTable::from_pair_offsets(2, {Rat(1, 10)})), error);
  }
}

TEST_CASE("segments between equal-magnitude perturbations") {
  FiniteMetricSpace M = m3();
  const Rat a(2, 5);
  PerturbationTable plus = sign_table(3, all_signs(3, 1), Rat(1, 5));
  PerturbationTable mixed = sign_table(3, mixed_signs(3), Rat(1, 5));

  FiniteMetricSpace at0 = perturbation_segment(M, plus, mixed, Rat(0));
  FiniteMetricSpace at1 = perturbation_segment(M, plus, mixed, Rat(1));
  CHECK(at0 == perturb_space(M, plus));
  CHECK(at1 == perturb_space(M, mixed));

  FiniteMetricSpace mid = perturbation_segment(M, plus, mixed, Rat(1, 2));
  CHECK(sorted_offdiag(mid) == std::vector<Rat>{Rat(17, 5), Rat(4), Rat(5)});
  CHECK(gh_exact(M, mid).value == Rat(1, 5));

  // The shared full-magnitude entry keeps the distance pinned along the
  // whole segment.
  for (int k = 0; k <= 8; ++k) {
    FiniteMetricSpace S = perturbation_segment(M, plus, mixed, Rat(k, 8));
    CHECK(gh_exact(M, S).value == Rat(1, 5));
  }

  SUBCASE("magnitude mismatch is rejected") {
    PerturbationTable small = sign_table(3, all_signs(3, 1), Rat(1, 10));
    CHECK_THROWS_AS(perturbation_segment(M, plus, small, Rat(1, 2)), error);
  }
  SUBCASE("parameter outside [0,1]") {
    CHECK_THROWS_AS(perturbation_segment(M, plus, mixed, Rat(3, 2)), error);
  }
}

TEST_CASE("length estimates refuse a zero stride") {
  SampledCurve c = geodesic_curve(two(Rat(1)), two(Rat(3)), 3);
  CHECK_THROWS_AS(curve_length_estimate(c, 0), error);
}
