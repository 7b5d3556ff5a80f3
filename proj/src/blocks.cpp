#include "ghpath/blocks.hpp"

#include "ghpath/characteristics.hpp"
#include "ghpath/errors.hpp"

namespace ghpath {

BlockPartition partition_from(const Relation& R, const FiniteMetricSpace& M,
                              const FiniteMetricSpace& X) {
  if (R.m != M.size() || R.n != X.size())
    fail_precondition("relation shape does not match center and target");
  if (!is_correspondence(R)) fail_precondition("partition_from needs a correspondence");

  const Rat s = min_positive_distance(M);
  const Rat dis = distortion(R, M, X);
  if (dis >= s)
    fail_precondition("correspondence distortion " + to_string(dis) +
                      " is not below the center separation " + to_string(s));

  BlockPartition P;
  P.center_size = M.size();
  P.blocks.assign(M.size(), {});
  std::vector<std::size_t> owner(X.size(), SIZE_MAX);
  for (auto [i, j] : R.pairs) {
    if (owner[j] != SIZE_MAX && owner[j] != i)
      fail_verification("point " + X.labels()[j] + " relates to two center points");
    owner[j] = i;
    P.blocks[i].push_back(j);
  }
  P.source = R;
  return P;
}

DecomposedDistortion distortion_decomposed(const BlockPartition& P, const FiniteMetricSpace& M,
                                           const FiniteMetricSpace& X) {
  if (P.center_size != M.size() || P.blocks.size() != M.size())
    fail_precondition("partition does not match the center space");

  DecomposedDistortion out{Rat(0), Rat(0), Rat(0)};
  for (const auto& block : P.blocks)
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = a + 1; b < block.size(); ++b)
        out.diam_term = max(out.diam_term, X.d(block[a], block[b]));

  bool first = true;
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j) {
      if (P.blocks[i].empty() || P.blocks[j].empty())
        fail_precondition("partition has an empty block");
      Rat lo = X.d(P.blocks[i][0], P.blocks[j][0]);
      Rat hi = lo;
      for (std::size_t a : P.blocks[i])
        for (std::size_t b : P.blocks[j]) {
          lo = min(lo, X.d(a, b));
          hi = max(hi, X.d(a, b));
        }
      Rat excess = hi - M.d(i, j);
      Rat deficit = M.d(i, j) - lo;
      if (first) {
        out.excess_term = excess;
        out.deficit_term = deficit;
        first = false;
      } else {
        out.excess_term = max(out.excess_term, excess);
        out.deficit_term = max(out.deficit_term, deficit);
      }
    }
  return out;
}

SeparationReport check_separation(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                                  const Rat& d, const GhOptions& opts) {
  if (M.size() < 3) fail_precondition("check_separation needs a center with at least 3 points");
  const Rat s = min_positive_distance(M);
  if (d <= 0 || 2 * d > s)
    fail_precondition("separation scale d = " + to_string(d) + " must satisfy 0 < d <= s/2 = " +
                      to_string(s / 2));

  SeparationReport rep;
  rep.d = d;
  GHResult gh = gh_exact(M, X, opts);
  rep.gh = gh.value;
  if (!(gh.value < d))
    fail_precondition("gh(M, X) = " + to_string(gh.value) + " is not below d = " + to_string(d));

  rep.witness = gh.witness;
  rep.witness_distortion = 2 * gh.value;
  rep.partition = partition_from(rep.witness, M, X);

  DecomposedDistortion terms = distortion_decomposed(rep.partition, M, X);
  rep.cross_bounds_ok = terms.excess_term < 2 * d && terms.deficit_term < 2 * d;
  rep.block_diams_ok = terms.diam_term < 2 * d;

  if (4 * d <= s) {
    rep.partition_unique_checked = true;
    rep.partition_unique = true;
    const Rat threshold = 2 * d;
    for_each_correspondence(
        M.size(), X.size(),
        [&](std::uint64_t code) {
          Relation rel = Relation::from_encoding(M.size(), X.size(), code);
          if (distortion(rel, M, X) < threshold) {
            ++rep.low_distortion_count;
            if (partition_from(rel, M, X).blocks != rep.partition.blocks)
              rep.partition_unique = false;
          }
          return true;
        },
        EnumerationOptions{opts.exhaustive_bit_budget});

    const Rat e = characteristics(M).e;
    if (4 * d <= min(s, e)) {
      rep.uniqueness_checked = true;
      rep.unique_optimal =
          rep.low_distortion_count == 1 && rep.witness_distortion == 2 * rep.gh;
    }
  }
  return rep;
}

Relation unique_optimal(const FiniteMetricSpace& M, const FiniteMetricSpace& X,
                        const GhOptions& opts) {
  if (M.size() < 3) fail_precondition("unique_optimal needs a center with at least 3 points");
  SpaceCharacteristics ch = characteristics(M);
  if (!ch.generic) fail_precondition("unique_optimal needs a generic center");

  GHResult gh = gh_exact(M, X, opts);
  const Rat bound = min(ch.s, ch.e) / 4;
  if (!(gh.value < bound))
    fail_precondition("gh(M, X) = " + to_string(gh.value) +
                      " is not below min(s, e)/4 = " + to_string(bound));

  const Rat threshold = 2 * bound;
  std::size_t count = 0;
  Relation found;
  for_each_correspondence(
      M.size(), X.size(),
      [&](std::uint64_t code) {
        Relation rel = Relation::from_encoding(M.size(), X.size(), code);
        if (distortion(rel, M, X) < threshold) {
          ++count;
          found = std::move(rel);
        }
        return true;
      },
      EnumerationOptions{opts.exhaustive_bit_budget});

  if (count != 1)
    fail_verification("expected exactly one low-distortion correspondence, found " +
                      std::to_string(count));
  if (!(found == gh.witness) || distortion(found, M, X) != 2 * gh.value)
    fail_verification("the unique low-distortion correspondence is not the optimum");
  return found;
}

} // namespace ghpath
