#pragma once

#include "ghpath/metric_space.hpp"

#include <string>
#include <vector>

namespace ghtest {

using ghpath::FiniteMetricSpace;
using ghpath::Rat;

// Builds a validated space from the strict upper triangle in lexicographic
// pair order (0,1), (0,2), ..., (n-2,n-1).
inline FiniteMetricSpace from_upper(std::vector<std::string> labels, const std::vector<Rat>& upper) {
  const std::size_t n = labels.size();
  std::vector<Rat> d(n * n, Rat(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = upper[k];
      d[j * n + i] = upper[k];
      ++k;
    }
  return FiniteMetricSpace::validated(std::move(labels), std::move(d));
}

// The 3-4-5 triangle: the workhorse generic fixture (s=3, t=2, e=1).
inline FiniteMetricSpace m3() { return from_upper({"p1", "p2", "p3"}, {Rat(3), Rat(4), Rat(5)}); }

// Two points at distance d.
inline FiniteMetricSpace two(const Rat& d) { return from_upper({"a", "b"}, {d}); }

// Equilateral triangle with side d.
inline FiniteMetricSpace eq3(const Rat& d) { return from_upper({"u", "v", "w"}, {d, d, d}); }

}  // namespace ghtest
