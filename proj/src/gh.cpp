#include "ghpath/gh.hpp"

#include "ghpath/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#include <atomic>
#endif

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

namespace ghpath {
namespace detail {

ScaledProblem build_tables(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;

  const std::size_t m = X.size(), n = Y.size();
  BigInt L = 1;
  for (const Rat& v : X.table()) L = boost::multiprecision::lcm(L, BigInt(denominator(v)));
  for (const Rat& v : Y.table()) L = boost::multiprecision::lcm(L, BigInt(denominator(v)));

  auto scaled = [&](const Rat& v) -> BigInt { return numerator(v) * (L / denominator(v)); };
  std::vector<BigInt> sx(m * m), sy(n * n);
  for (std::size_t i = 0; i < m * m; ++i) sx[i] = scaled(X.table()[i]);
  for (std::size_t j = 0; j < n * n; ++j) sy[j] = scaled(Y.table()[j]);

  const std::size_t cells = m * n;
  ScaledProblem P;
  P.denom = L;
  P.tbig.m = m;
  P.tbig.n = n;
  P.tbig.t.resize(cells * cells);
  BigInt top = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          BigInt v = sx[i * m + i2] - sy[j * n + j2];
          if (v < 0) v = -v;
          if (v > top) top = v;
          P.tbig.t[(i * n + j) * cells + (i2 * n + j2)] = std::move(v);
        }
  {
    BigInt lb = scaled(X.diameter()) - scaled(Y.diameter());
    if (lb < 0) lb = -lb;
    P.tbig.lower_bound = lb;
  }

  P.use64 = top < (BigInt(1) << 62);
  if (P.use64) {
    P.t64.m = m;
    P.t64.n = n;
    P.t64.t.resize(cells * cells);
    for (std::size_t k = 0; k < P.tbig.t.size(); ++k)
      P.t64.t[k] = P.tbig.t[k].convert_to<std::int64_t>();
    P.t64.lower_bound = P.tbig.lower_bound.convert_to<std::int64_t>();
  }
  return P;
}

namespace {

// Scans encodings in [lo, hi), keeping the lexicographic minimum of
// (distortion, code) over the correspondences found. `bound` lets a caller
// inject an outside upper bound: codes whose distortion provably exceeds it
// are abandoned mid-computation, which never affects the merged result.
template <typename IntT, typename Bound>
void scan_range(const DisTable<IntT>& T, std::uint64_t lo, std::uint64_t hi, Bound outside_bound,
                bool& found, IntT& bestDis, std::uint64_t& bestCode) {
  const std::size_t m = T.m, n = T.n, cells = m * n;
  const std::uint64_t colMask = (std::uint64_t(1) << n) - 1;
  std::array<unsigned, 64> pos;
  for (std::uint64_t code = lo; code < hi; ++code) {
    std::uint64_t acc = 0;
    bool rows = true;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t chunk = code >> (i * n) & colMask;
      if (chunk == 0) {
        rows = false;
        break;
      }
      acc |= chunk;
    }
    if (!rows || acc != colMask) continue;

    unsigned k = 0;
    for (std::uint64_t c = code; c; c &= c - 1) pos[k++] = unsigned(std::countr_zero(c));

    IntT dis{0};
    bool aborted = false;
    for (unsigned a = 0; a < k && !aborted; ++a) {
      const IntT* row = T.t.data() + std::size_t(pos[a]) * cells;
      for (unsigned b = a + 1; b < k; ++b) {
        const IntT& v = row[pos[b]];
        if (v > dis) {
          dis = v;
          // A later code never wins a tie, so >= prunes safely against our own
          // best; the outside bound must stay strict (a tie elsewhere can
          // still lose to this smaller code).
          if ((found && dis >= bestDis) || outside_bound(dis)) {
            aborted = true;
            break;
          }
        }
      }
    }
    if (aborted) continue;
    if (!found || dis < bestDis) {
      found = true;
      bestDis = dis;
      bestCode = code;
      if (bestDis <= T.lower_bound) return; // nothing in this range can beat it
    }
  }
}

} // namespace

ScanHit exhaustive_serial(const DisTable<std::int64_t>& T) {
  ScanHit hit;
  const std::uint64_t end = std::uint64_t(1) << (T.m * T.n);
  scan_range(T, 1, end, [](std::int64_t) { return false; }, hit.found, hit.dis, hit.code);
  return hit;
}

ScanHit exhaustive_parallel(const DisTable<std::int64_t>& T) {
#ifndef _OPENMP
  return exhaustive_serial(T);
#else
  const std::uint64_t end = std::uint64_t(1) << (T.m * T.n);
  const int chunks = std::max(1, omp_get_max_threads()) * 8;
  std::vector<ScanHit> hits(chunks);
  std::atomic<std::int64_t> shared{std::numeric_limits<std::int64_t>::max()};

#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t span = end - 1;
    const std::uint64_t lo = 1 + span * std::uint64_t(c) / chunks;
    const std::uint64_t hi = 1 + span * std::uint64_t(c + 1) / chunks;
    ScanHit local;
    auto bound = [&](std::int64_t v) { return v > shared.load(std::memory_order_relaxed); };
    scan_range(T, lo, hi, bound, local.found, local.dis, local.code);
    if (local.found) {
      std::int64_t seen = shared.load(std::memory_order_relaxed);
      while (local.dis < seen &&
             !shared.compare_exchange_weak(seen, local.dis, std::memory_order_relaxed)) {
      }
    }
    hits[c] = local;
  }

  ScanHit best;
  for (const ScanHit& h : hits)
    if (h.found && (!best.found || h.dis < best.dis || (h.dis == best.dis && h.code < best.code)))
      best = h;
  return best;
#endif
}

BigScanHit exhaustive_serial_big(const DisTable<BigInt>& T) {
  BigScanHit hit;
  const std::uint64_t end = std::uint64_t(1) << (T.m * T.n);
  scan_range(T, 1, end, [](const BigInt&) { return false; }, hit.found, hit.dis, hit.code);
  return hit;
}

namespace {

// Branch-and-bound over row assignments. Rows take non-empty column subsets;
// column coverage is forced only where it becomes binding (the last row to be
// assigned must absorb whatever is still missing — every correspondence is
// still reachable because earlier rows range over all subsets). Phase one
// establishes the optimal value from a repaired greedy incumbent; phase two
// re-searches in encoding order for the least witness.
template <typename IntT>
class BnbSearch {
public:
  explicit BnbSearch(const DisTable<IntT>& T)
      : T_(T), m_(T.m), n_(T.n), cells_(T.m * T.n),
        colMask_((std::uint64_t(1) << T.n) - 1), chosen_(T.m, 0) {}

  void run(bool value_only) {
    seed_incumbent();
    if (incumbent_ > T_.lower_bound) dfs_value(0, IntT{0}, 0);
    if (!value_only) witnessCode_ = least_witness();
  }

  IntT value() const { return incumbent_; }
  std::uint64_t witness() const { return witnessCode_; }

private:
  const DisTable<IntT>& T_;
  std::size_t m_, n_, cells_;
  std::uint64_t colMask_;
  std::vector<std::uint64_t> chosen_;
  IntT incumbent_{};
  std::uint64_t witnessCode_ = 0;
  bool stop_ = false;

  const IntT& cell(std::size_t p, std::size_t q) const { return T_.t[p * cells_ + q]; }

  // Distortion contribution of assigning subset S to row r, against the rows
  // listed in `others` (their current masks); aborts once `cap` is reached
  // (cap == nullptr scans in full).
  template <typename Rows>
  IntT increment(std::size_t r, std::uint64_t S, const Rows& others, const IntT* cap,
                 bool& capped) const {
    IntT worst{0};
    capped = false;
    std::array<unsigned, 64> js;
    unsigned k = 0;
    for (std::uint64_t c = S; c; c &= c - 1) js[k++] = unsigned(std::countr_zero(c));
    for (unsigned a = 0; a < k; ++a)
      for (unsigned b = a + 1; b < k; ++b) {
        const IntT& v = cell(r * n_ + js[a], r * n_ + js[b]);
        if (v > worst) {
          worst = v;
          if (cap && worst >= *cap) {
            capped = true;
            return worst;
          }
        }
      }
    for (auto [rr, mask] : others) {
      for (std::uint64_t c = mask; c; c &= c - 1) {
        const std::size_t q = rr * n_ + unsigned(std::countr_zero(c));
        for (unsigned a = 0; a < k; ++a) {
          const IntT& v = cell(r * n_ + js[a], q);
          if (v > worst) {
            worst = v;
            if (cap && worst >= *cap) {
              capped = true;
              return worst;
            }
          }
        }
      }
    }
    return worst;
  }

  std::vector<std::pair<std::size_t, std::uint64_t>> assigned_below(std::size_t r) const {
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    for (std::size_t rr = 0; rr < r; ++rr) out.emplace_back(rr, chosen_[rr]);
    return out;
  }

  std::uint64_t encode() const {
    std::uint64_t code = 0;
    for (std::size_t r = 0; r < m_; ++r) code |= chosen_[r] << (r * n_);
    return code;
  }

  IntT full_distortion(const std::vector<std::uint64_t>& rows) const {
    std::array<unsigned, 64> pos;
    unsigned k = 0;
    for (std::size_t r = 0; r < m_; ++r)
      for (std::uint64_t c = rows[r]; c; c &= c - 1)
        pos[k++] = unsigned(r * n_ + unsigned(std::countr_zero(c)));
    IntT worst{0};
    for (unsigned a = 0; a < k; ++a)
      for (unsigned b = a + 1; b < k; ++b) worst = std::max(worst, cell(pos[a], pos[b]));
    return worst;
  }

  void consider_seed(const std::vector<std::uint64_t>& rows, bool& have) {
    IntT dis = full_distortion(rows);
    std::uint64_t code = 0;
    for (std::size_t r = 0; r < m_; ++r) code |= rows[r] << (r * n_);
    if (!have || dis < incumbent_ || (dis == incumbent_ && code < witnessCode_)) {
      incumbent_ = dis;
      witnessCode_ = code;
      have = true;
    }
  }

  void seed_incumbent() {
    bool have = false;
    // full product
    consider_seed(std::vector<std::uint64_t>(m_, colMask_), have);
    // identity pairing when square
    if (m_ == n_) {
      std::vector<std::uint64_t> rows(m_);
      for (std::size_t r = 0; r < m_; ++r) rows[r] = std::uint64_t(1) << r;
      consider_seed(rows, have);
    }
    // greedy rows + repair pass for uncovered columns
    {
      std::vector<std::uint64_t> rows(m_, 0);
      for (std::size_t r = 0; r < m_; ++r) {
        IntT bestInc{};
        std::size_t bestJ = 0;
        bool first = true;
        for (std::size_t j = 0; j < n_; ++j) {
          std::vector<std::pair<std::size_t, std::uint64_t>> others;
          for (std::size_t rr = 0; rr < r; ++rr) others.emplace_back(rr, rows[rr]);
          bool capped = false;
          IntT inc = increment(r, std::uint64_t(1) << j, others, nullptr, capped);
          if (first || inc < bestInc) {
            bestInc = inc;
            bestJ = j;
            first = false;
          }
        }
        rows[r] = std::uint64_t(1) << bestJ;
      }
      std::uint64_t covered = 0;
      for (std::size_t r = 0; r < m_; ++r) covered |= rows[r];
      for (std::size_t j = 0; j < n_; ++j) {
        if (covered >> j & 1) continue;
        IntT bestDis{};
        std::size_t bestR = 0;
        bool first = true;
        for (std::size_t r = 0; r < m_; ++r) {
          std::vector<std::uint64_t> trial = rows;
          trial[r] |= std::uint64_t(1) << j;
          IntT dis = full_distortion(trial);
          if (first || dis < bestDis) {
            bestDis = dis;
            bestR = r;
            first = false;
          }
        }
        rows[bestR] |= std::uint64_t(1) << j;
      }
      consider_seed(rows, have);
    }
  }

  void dfs_value(std::size_t r, IntT cur, std::uint64_t covered) {
    if (stop_) return;
    const bool last = r + 1 == m_;
    for (std::uint64_t S = 1; S <= colMask_; ++S) {
      if (last && (covered | S) != colMask_) continue;
      bool capped = false;
      IntT inc = increment(r, S, assigned_below(r), &incumbent_, capped);
      if (capped) continue;
      IntT nxt = std::max(cur, inc);
      if (nxt >= incumbent_) continue;
      chosen_[r] = S;
      if (last) {
        incumbent_ = nxt;
        witnessCode_ = encode();
        if (incumbent_ <= T_.lower_bound) {
          stop_ = true;
          return;
        }
      } else {
        dfs_value(r + 1, nxt, covered | S);
        if (stop_) return;
      }
    }
    chosen_[r] = 0;
  }

  // Encodings compare by their most significant differing bit, i.e.
  // lexicographically on the row masks read from the last row down. Exploring
  // rows from the top with subsets ascending therefore reaches the least
  // optimal witness first.
  std::uint64_t least_witness() {
    std::vector<std::uint64_t> rows(m_, 0);
    std::uint64_t out = 0;
    [[maybe_unused]] bool ok = witness_dfs(m_, IntT{0}, 0, rows, out);
    return out;
  }

  bool witness_dfs(std::size_t level, IntT cur, std::uint64_t covered,
                   std::vector<std::uint64_t>& rows, std::uint64_t& out) {
    const std::size_t r = level - 1;
    const bool last = r == 0;
    for (std::uint64_t S = 1; S <= colMask_; ++S) {
      if (last && (covered | S) != colMask_) continue;
      std::vector<std::pair<std::size_t, std::uint64_t>> others;
      for (std::size_t rr = r + 1; rr < m_; ++rr) others.emplace_back(rr, rows[rr]);
      bool capped = false;
      IntT bound = incumbent_;
      ++bound; // allow == incumbent, prune strictly greater
      IntT inc = increment(r, S, others, &bound, capped);
      if (capped) continue;
      IntT nxt = std::max(cur, inc);
      if (nxt > incumbent_) continue;
      rows[r] = S;
      if (last) {
        std::uint64_t code = 0;
        for (std::size_t rr = 0; rr < m_; ++rr) code |= rows[rr] << (rr * n_);
        out = code;
        return true;
      }
      if (witness_dfs(level - 1, nxt, covered | S, rows, out)) return true;
      rows[r] = 0;
    }
    return false;
  }
};

} // namespace

} // namespace detail

GHResult gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const GhOptions& opts) {
  using namespace detail;
  const std::size_t m = X.size(), n = Y.size();

  // A single point on either side leaves exactly one correspondence: the full
  // product, whose distortion is the other diameter.
  if (m == 1 || n == 1) {
    GHResult out;
    out.value = (m == 1 ? Y.diameter() : X.diameter()) / 2;
    out.witness = product_relation(m, n);
    out.method = "closed-form";
    if (opts.want_all) out.all_optimal = {out.witness};
    return out;
  }

  const std::size_t bits = m * n;
  GhMode mode = opts.mode;
  if (mode == GhMode::automatic) {
    if (bits <= opts.exhaustive_bit_budget)
      mode = GhMode::exhaustive;
    else if (std::max(m, n) <= opts.bnb_size_budget)
      mode = GhMode::branch_and_bound;
    else
      fail_budget("gh_exact: " + std::to_string(m) + "x" + std::to_string(n) +
                  " exceeds both search budgets");
  }
  if (mode == GhMode::exhaustive && bits > opts.exhaustive_bit_budget)
    fail_budget("gh_exact exhaustive: " + std::to_string(bits) + " grid bits exceed budget " +
                std::to_string(opts.exhaustive_bit_budget));
  if (mode == GhMode::branch_and_bound &&
      (std::max(m, n) > opts.bnb_size_budget || bits > 64))
    fail_budget("gh_exact branch-and-bound: side " + std::to_string(std::max(m, n)) +
                " exceeds budget " + std::to_string(opts.bnb_size_budget));
  if (opts.want_all && bits > opts.exhaustive_bit_budget)
    fail_budget("gh_exact: collecting all minimizers needs the exhaustive budget");

  ScaledProblem P = build_tables(X, Y);

  GHResult out;
  BigInt bestDis;
  std::uint64_t bestCode = 0;

  if (mode == GhMode::exhaustive) {
    out.method = "exhaustive";
    if (P.use64) {
      bool parallel = opts.kernel == GhKernel::parallel;
      if (opts.kernel == GhKernel::automatic) parallel = bits >= 18;
      ScanHit hit = parallel ? exhaustive_parallel(P.t64) : exhaustive_serial(P.t64);
      bestDis = hit.dis;
      bestCode = hit.code;
    } else {
      BigScanHit hit = exhaustive_serial_big(P.tbig);
      bestDis = hit.dis;
      bestCode = hit.code;
    }
  } else {
    out.method = "branch-and-bound";
    if (P.use64) {
      BnbSearch<std::int64_t> bnb(P.t64);
      bnb.run(opts.value_only);
      bestDis = bnb.value();
      bestCode = bnb.witness();
    } else {
      BnbSearch<BigInt> bnb(P.tbig);
      bnb.run(opts.value_only);
      bestDis = bnb.value();
      bestCode = bnb.witness();
    }
  }

  out.value = Rat(bestDis, 2 * P.denom);
  out.witness = Relation::from_encoding(m, n, bestCode);

  if (opts.want_all) {
    // Second ascending scan keeping every minimizer.
    const std::uint64_t colMask = (std::uint64_t(1) << n) - 1;
    const std::uint64_t end = std::uint64_t(1) << bits;
    for (std::uint64_t code = 1; code < end; ++code) {
      std::uint64_t acc = 0;
      bool rows = true;
      for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t chunk = code >> (i * n) & colMask;
        if (chunk == 0) {
          rows = false;
          break;
        }
        acc |= chunk;
      }
      if (!rows || acc != colMask) continue;
      Relation rel = Relation::from_encoding(m, n, code);
      if (distortion(rel, X, Y) == 2 * out.value) out.all_optimal.push_back(std::move(rel));
    }
  }
  return out;
}

} // namespace ghpath
