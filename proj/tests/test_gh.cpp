#include <doctest.h>

#include "ghpath/errors.hpp"
#include "ghpath/gh.hpp"

#include "helpers.hpp"

#include <random>
#include <vector>

using namespace ghpath;
using ghtest::eq3;
using ghtest::from_upper;
using ghtest::m3;
using ghtest::two;

namespace {

// Deterministic random metric: all distances inside [base, 2*base - 1], which
// satisfies every triangle inequality outright.
FiniteMetricSpace random_space(std::mt19937_64& eng, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("r" + std::to_string(i));
  std::vector<Rat> d(n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat v(10 + static_cast<long long>(eng() % 10));
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  return FiniteMetricSpace::validated(std::move(labels), std::move(d));
}

GhOptions exhaustive_opts() {
  GhOptions o;
  o.mode = GhMode::exhaustive;
  return o;
}

}  // namespace

TEST_CASE("identical spaces are at distance zero") {
  GHResult r = gh_exact(m3(), m3());
  CHECK(r.value == Rat(0));
  CHECK(is_correspondence(r.witness));
  CHECK(distortion(r.witness, m3(), m3()) == Rat(0));
}

TEST_CASE("one-point spaces use the closed form") {
  GHResult r = gh_exact(delta1(), m3());
  CHECK(r.value == Rat(5, 2));
  CHECK(r.method == "closed-form");
  CHECK(r.witness == product_relation(1, 3));
  CHECK(gh_exact(m3(), delta1()).value == Rat(5, 2));
  // Large spaces are fine against a point: no search happens.
  GhOptions opts;
  std::vector<std::string> labels;
  std::vector<Rat> d(20 * 20, Rat(0));
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = i + 1; j < 20; ++j) d[i * 20 + j] = d[j * 20 + i] = Rat(10 + ((i + j) % 5));
  for (std::size_t i = 0; i < 20; ++i) labels.push_back("b" + std::to_string(i));
  FiniteMetricSpace big = FiniteMetricSpace::validated(labels, d);
  CHECK(gh_exact(delta1(), big, opts).value * 2 == big.diameter());
}

TEST_CASE("two two-point spaces differ by half the gap") {
  GHResult r = gh_exact(two(Rat(1)), two(Rat(3)));
  CHECK(r.value == Rat(1));
  CHECK(r.method == "exhaustive");
}

TEST_CASE("two points against an equilateral triangle: pigeonhole forces 1/2") {
  GHResult r = gh_exact(two(Rat(1)), eq3(Rat(1)), exhaustive_opts());
  CHECK(r.value == Rat(1, 2));

  // Independent oracle: minimize distortion over all 25 enumerated
  // correspondences directly.
  Rat best(-1);
  std::size_t seen = 0;
  for_each_correspondence(2, 3, [&](std::uint64_t code) {
    Rat d = distortion(Relation::from_encoding(2, 3, code), two(Rat(1)), eq3(Rat(1)));
    if (best < 0 || d < best) best = d;
    ++seen;
    return true;
  });
  CHECK(seen == 25);
  CHECK(best == 2 * r.value);
}

TEST_CASE("every optimal correspondence can be collected") {
  GhOptions opts = exhaustive_opts();
  opts.want_all = true;
  GHResult r = gh_exact(two(Rat(1)), eq3(Rat(1)), opts);
  // All 25 correspondences have distortion exactly 1 here, so all are optimal.
  CHECK(r.all_optimal.size() == 25);
  CHECK(r.witness == Relation::from_encoding(2, 3, 14));
  CHECK(r.all_optimal.front() == r.witness);
  for (const Relation& w : r.all_optimal) {
    CHECK(is_correspondence(w));
    CHECK(distortion(w, two(Rat(1)), eq3(Rat(1))) == 2 * r.value);
  }
  for (std::size_t k = 0; k + 1 < r.all_optimal.size(); ++k)
    CHECK(r.all_optimal[k].encoding() < r.all_optimal[k + 1].encoding());
}

TEST_CASE("scaling laws hold exactly") {
  FiniteMetricSpace X = m3();
  FiniteMetricSpace Y = eq3(Rat(2));
  Rat base = gh_exact(X, Y).value;
  for (Rat lam : {Rat(2, 3), Rat(7, 5), Rat(3)}) {
    CHECK(gh_exact(scale(X, lam), scale(Y, lam)).value == lam * base);
    CHECK(2 * gh_exact(scale(X, lam), X).value == abs(lam - 1) * X.diameter());
  }
  CHECK(2 * gh_exact(scale(X, Rat(1, 2)), scale(X, Rat(5, 2))).value == Rat(2) * X.diameter());
}

TEST_CASE("metric axioms and diameter estimates on seeded random spaces") {
  std::mt19937_64 eng(20240817);
  std::vector<FiniteMetricSpace> pool;
  for (std::size_t k = 0; k < 24; ++k) pool.push_back(random_space(eng, 2 + k % 3));

  for (std::size_t k = 0; k < pool.size(); ++k) {
    const FiniteMetricSpace& X = pool[k];
    const FiniteMetricSpace& Y = pool[(k + 1) % pool.size()];
    CHECK(gh_exact(X, X).value == Rat(0));
    Rat xy = gh_exact(X, Y).value;
    CHECK(xy == gh_exact(Y, X).value);
    CHECK(2 * xy <= max(X.diameter(), Y.diameter()));
    CHECK(abs(X.diameter() - Y.diameter()) <= 2 * xy);
  }
  for (std::size_t k = 0; k + 2 < pool.size(); k += 3) {
    const FiniteMetricSpace& X = pool[k];
    const FiniteMetricSpace& Y = pool[k + 1];
    const FiniteMetricSpace& Z = pool[k + 2];
    CHECK(gh_exact(X, Z).value <= gh_exact(X, Y).value + gh_exact(Y, Z).value);
  }
}

TEST_CASE("serial and parallel scan kernels agree bit for bit") {
  std::mt19937_64 eng(7);
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 4}, {4, 4}, {4, 5}}) {
    FiniteMetricSpace X = random_space(eng, m);
    FiniteMetricSpace Y = random_space(eng, n);
    detail::ScaledProblem sp = detail::build_tables(X, Y);
    REQUIRE(sp.use64);
    detail::ScanHit serial = detail::exhaustive_serial(sp.t64);
    detail::ScanHit parallel = detail::exhaustive_parallel(sp.t64);
    REQUIRE(serial.found);
    REQUIRE(parallel.found);
    CHECK(serial.dis == parallel.dis);
    CHECK(serial.code == parallel.code);
  }
}

TEST_CASE("branch-and-bound reproduces exhaustive value and witness") {
  std::mt19937_64 eng(99);
  for (std::size_t trial = 0; trial < 30; ++trial) {
    std::size_t m = 2 + trial % 3;        // 2..4
    std::size_t n = 2 + (trial / 3) % 3;  // 2..4
    FiniteMetricSpace X = random_space(eng, m);
    FiniteMetricSpace Y = random_space(eng, n);

    GhOptions ex = exhaustive_opts();
    GhOptions bb;
    bb.mode = GhMode::branch_and_bound;
    GHResult a = gh_exact(X, Y, ex);
    GHResult b = gh_exact(X, Y, bb);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
    CHECK(b.method == "branch-and-bound");

    GhOptions fast = bb;
    fast.value_only = true;
    GHResult c = gh_exact(X, Y, fast);
    CHECK(c.value == a.value);
    CHECK(is_correspondence(c.witness));
    CHECK(distortion(c.witness, X, Y) == 2 * c.value);
  }
}

TEST_CASE("search budgets are enforced and reported") {
  std::mt19937_64 eng(5);
  FiniteMetricSpace six = random_space(eng, 6);
  FiniteMetricSpace six2 = random_space(eng, 6);

  SUBCASE("exhaustive refuses 36 grid bits") {
    try {
      gh_exact(six, six2, exhaustive_opts());
      FAIL("expected an error");
    } catch (const error& e) {
      CHECK(e.kind() == errc::budget);
    }
  }
  SUBCASE("automatic mode falls back to branch-and-bound") {
    GHResult r = gh_exact(six, six2);
    CHECK(r.method == "branch-and-bound");
    CHECK(distortion(r.witness, six, six2) == 2 * r.value);
  }
  SUBCASE("both engines out of budget") {
    FiniteMetricSpace nine = random_space(eng, 9);
    FiniteMetricSpace nine2 = random_space(eng, 9);
    try {
      gh_exact(nine, nine2);
      FAIL("expected an error");
    } catch (const error& e) {
      CHECK(e.kind() == errc::budget);
    }
  }
  SUBCASE("collecting all minimizers needs the exhaustive budget") {
    GhOptions opts;
    opts.want_all = true;
    try {
      gh_exact(six, six2, opts);
      FAIL("expected an error");
    } catch (const error& e) {
      CHECK(e.kind() == errc::budget);
    }
  }
}
