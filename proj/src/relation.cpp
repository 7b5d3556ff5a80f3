#include "ghpath/relation.hpp"

#include "ghpath/errors.hpp"

#include <algorithm>

namespace ghpath {

Relation Relation::from_encoding(std::size_t m, std::size_t n, std::uint64_t code) {
  Relation rel;
  rel.m = m;
  rel.n = n;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (code >> (i * n + j) & 1) rel.pairs.emplace_back(i, j);
  return rel;
}

std::uint64_t Relation::encoding() const {
  if (m * n > 64) fail_budget("relation too large for 64-bit encoding");
  std::uint64_t code = 0;
  for (auto [i, j] : pairs) code |= std::uint64_t(1) << (i * n + j);
  return code;
}

Relation identity_relation(std::size_t n) {
  Relation rel;
  rel.m = rel.n = n;
  for (std::size_t i = 0; i < n; ++i) rel.pairs.emplace_back(i, i);
  return rel;
}

Relation product_relation(std::size_t m, std::size_t n) {
  Relation rel;
  rel.m = m;
  rel.n = n;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) rel.pairs.emplace_back(i, j);
  return rel;
}

bool is_correspondence(const Relation& rel) {
  if (rel.m == 0 || rel.n == 0) return false;
  std::vector<bool> row(rel.m, false), col(rel.n, false);
  for (auto [i, j] : rel.pairs) {
    if (i >= rel.m || j >= rel.n) return false;
    row[i] = true;
    col[j] = true;
  }
  return std::all_of(row.begin(), row.end(), [](bool b) { return b; }) &&
         std::all_of(col.begin(), col.end(), [](bool b) { return b; });
}

Rat distortion(const Relation& rel, const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  if (rel.pairs.empty()) fail_precondition("distortion of an empty relation");
  if (rel.m != X.size() || rel.n != Y.size())
    fail_precondition("relation shape does not match the spaces");
  for (auto [i, j] : rel.pairs)
    if (i >= rel.m || j >= rel.n) fail_precondition("relation pair out of range");
  Rat worst = 0;
  for (std::size_t a = 0; a < rel.pairs.size(); ++a)
    for (std::size_t b = a + 1; b < rel.pairs.size(); ++b) {
      auto [x1, y1] = rel.pairs[a];
      auto [x2, y2] = rel.pairs[b];
      worst = max(worst, abs(X.d(x1, x2) - Y.d(y1, y2)));
    }
  return worst;
}

BigInt count_correspondences(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) fail_precondition("count_correspondences needs non-empty sets");
  // Inclusion-exclusion over the rows and columns forced to stay uncovered.
  auto choose = [](std::size_t nn, std::size_t kk) {
    BigInt c = 1;
    for (std::size_t i = 0; i < kk; ++i) c = c * BigInt(nn - i) / BigInt(i + 1);
    return c;
  };
  BigInt total = 0;
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      BigInt term = choose(m, i) * choose(n, j) * (BigInt(1) << ((m - i) * (n - j)));
      total += ((i + j) % 2 == 0) ? term : -term;
    }
  return total;
}

void for_each_correspondence(std::size_t m, std::size_t n,
                             const std::function<bool(std::uint64_t)>& fn,
                             const EnumerationOptions& opts) {
  if (m == 0 || n == 0) fail_precondition("enumeration needs non-empty sets");
  const std::size_t bits = m * n;
  if (bits > opts.bit_budget)
    fail_budget("enumeration over " + std::to_string(bits) + " grid bits exceeds budget " +
                std::to_string(opts.bit_budget));
  const std::uint64_t colMask = (std::uint64_t(1) << n) - 1;
  const std::uint64_t end = std::uint64_t(1) << bits;
  for (std::uint64_t code = 1; code < end; ++code) {
    std::uint64_t cover = colMask;
    bool rows = true;
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t chunk = code >> (i * n) & colMask;
      if (chunk == 0) {
        rows = false;
        break;
      }
      acc |= chunk;
    }
    if (!rows || acc != cover) continue;
    if (!fn(code)) return;
  }
}

Relation prune_redundant_pairs(const Relation& rel) {
  if (!is_correspondence(rel)) fail_precondition("prune_redundant_pairs needs a correspondence");
  std::vector<std::size_t> rowCount(rel.m, 0), colCount(rel.n, 0);
  for (auto [i, j] : rel.pairs) {
    ++rowCount[i];
    ++colCount[j];
  }
  // A pair is redundant when neither its row nor its column depends on it.
  // Dropping set bits from the top first yields the least surviving encoding,
  // and a pair seen non-redundant stays so as the counts only shrink.
  std::vector<bool> keep(rel.pairs.size(), true);
  for (std::size_t a = rel.pairs.size(); a-- > 0;) {
    auto [i, j] = rel.pairs[a];
    if (rowCount[i] >= 2 && colCount[j] >= 2) {
      keep[a] = false;
      --rowCount[i];
      --colCount[j];
    }
  }
  Relation out;
  out.m = rel.m;
  out.n = rel.n;
  for (std::size_t a = 0; a < rel.pairs.size(); ++a)
    if (keep[a]) out.pairs.push_back(rel.pairs[a]);
  return out;
}

} // namespace ghpath
