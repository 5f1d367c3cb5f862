#include "chaincx/rank_optimizer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <utility>

namespace chaincx {

namespace {

// Backward value table. value(i, p) is the best achievable
// sum_{j >= i} w_j(r_{j-1}, r_j) given r_{i-1} = p, for i in [1, n + 1]
// and p in [0, bound(i - 1)]; bound(0) = 0 encodes the sentinel r_0.
class ChainTable {
 public:
  explicit ChainTable(const ComplexShape& shape) : shape_(shape), n_(shape.length()) {
    value_.resize(n_ + 2);
    value_[n_ + 1].assign(static_cast<std::size_t>(bound(n_)) + 1, 0);
    for (std::size_t i = n_; i >= 1; --i) {
      auto& row = value_[i];
      row.assign(static_cast<std::size_t>(bound(i - 1)) + 1, 0);
      for (Index p = 0; p <= bound(i - 1); ++p) {
        Index best = std::numeric_limits<Index>::min();
        for (Index q = 0; q <= max_next(i, p); ++q) best = std::max(best, step(i, p, q));
        row[static_cast<std::size_t>(p)] = best;
      }
    }
  }

  std::size_t length() const noexcept { return n_; }
  Index optimum() const { return value_[1][0]; }
  Index value(std::size_t i, Index p) const { return value_[i][static_cast<std::size_t>(p)]; }

  /// min(a_{i-1}, a_i) for i in [1, n]; 0 for the sentinel i = 0.
  Index bound(std::size_t i) const noexcept { return i == 0 ? 0 : rank_upper_bound(shape_, i); }

  /// Largest r_i allowed after r_{i-1} = p.
  Index max_next(std::size_t i, Index p) const noexcept {
    return std::min(bound(i), shape_[i - 1] - p);
  }

  Index step(std::size_t i, Index p, Index q) const {
    return q * (shape_[i - 1] + shape_[i] - p - q) + value_[i + 1][static_cast<std::size_t>(q)];
  }

  bool optimal(std::size_t i, Index p, Index q) const { return step(i, p, q) == value(i, p); }

 private:
  const ComplexShape& shape_;
  std::size_t n_;
  std::vector<std::vector<Index>> value_;
};

BigCount count_optimal_paths(const ChainTable& table) {
  const std::size_t n = table.length();
  std::vector<BigCount> next(static_cast<std::size_t>(table.bound(n)) + 1, BigCount(1));
  for (std::size_t i = n; i >= 1; --i) {
    std::vector<BigCount> current(static_cast<std::size_t>(table.bound(i - 1)) + 1);
    for (Index p = 0; p <= table.bound(i - 1); ++p) {
      BigCount total = 0;
      for (Index q = 0; q <= table.max_next(i, p); ++q) {
        if (table.optimal(i, p, q)) total += next[static_cast<std::size_t>(q)];
      }
      current[static_cast<std::size_t>(p)] = std::move(total);
    }
    next = std::move(current);
  }
  return next[0];
}

// Depth-first walk over optimal transitions; q ascends at every level, so
// maximizers come out in lexicographic order.
void collect_maximizers(const ChainTable& table, std::uint64_t cap,
                        std::vector<RankVector>& out) {
  const std::size_t n = table.length();
  std::vector<Index> prefix(n, 0);
  std::function<bool(std::size_t, Index)> descend = [&](std::size_t i, Index p) {
    if (i > n) {
      if (out.size() >= cap) return false;
      out.emplace_back(prefix);
      return true;
    }
    for (Index q = 0; q <= table.max_next(i, p); ++q) {
      if (!table.optimal(i, p, q)) continue;
      prefix[i - 1] = q;
      if (!descend(i + 1, q)) return false;
    }
    return true;
  };
  descend(1, 0);
}

MaximizerReport finish_report(const ComplexShape& shape, MaximizerReport report) {
  report.betti_spectrum.reserve(report.maximizers.size());
  for (const auto& r : report.maximizers) {
    report.betti_spectrum.push_back(betti_from_ranks(shape, r));
  }
  report.truncated = report.maximizer_count > report.enumeration_cap;
  return report;
}

}  // namespace

DpMaximum maximize_dp(const ComplexShape& shape) {
  const ChainTable table(shape);
  std::vector<Index> witness(shape.length(), 0);
  Index p = 0;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    Index q = 0;
    while (!table.optimal(i, p, q)) ++q;
    witness[i - 1] = q;
    p = q;
  }
  return {table.optimum(), RankVector(std::move(witness))};
}

std::uint64_t brute_force_candidates(const ComplexShape& shape) noexcept {
  std::uint64_t total = 1;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    const auto width = static_cast<std::uint64_t>(rank_upper_bound(shape, i)) + 1;
    if (total > std::numeric_limits<std::uint64_t>::max() / width) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= width;
  }
  return total;
}

MaximizerReport brute_force_maximize(const ComplexShape& shape, std::uint64_t work_cap) {
  const std::uint64_t candidates = brute_force_candidates(shape);
  if (candidates > work_cap) {
    throw WorkCapExceeded("brute force over shape " + to_string(shape) + " needs " +
                              std::to_string(candidates) + " candidates",
                          work_cap);
  }
  const std::size_t n = shape.length();
  MaximizerReport report;
  report.enumeration_cap = work_cap;
  report.max_dimension = -1;

  // Odometer over the box, last coordinate fastest: lexicographic order.
  RankVector r(std::vector<Index>(n, 0));
  while (true) {
    if (is_feasible(shape, r)) {
      const Index d = stratum_dimension(shape, r);
      if (d > report.max_dimension) {
        report.max_dimension = d;
        report.maximizers.clear();
      }
      if (d == report.max_dimension) report.maximizers.push_back(r);
    }
    std::size_t k = n;
    while (k > 0 && r[k - 1] == rank_upper_bound(shape, k)) {
      r[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
    ++r[k - 1];
  }
  report.maximizer_count = report.maximizers.size();
  return finish_report(shape, std::move(report));
}

MaximizerReport enumerate_maximizers(const ComplexShape& shape, std::uint64_t cap) {
  if (cap == 0) throw ContractViolation("enumeration cap must be positive");
  const ChainTable table(shape);
  MaximizerReport report;
  report.enumeration_cap = cap;
  report.max_dimension = table.optimum();
  report.maximizer_count = count_optimal_paths(table);
  collect_maximizers(table, cap, report.maximizers);
  return finish_report(shape, std::move(report));
}

std::vector<BettiVector> betti_spectrum(const ComplexShape& shape, std::uint64_t cap) {
  return enumerate_maximizers(shape, cap).betti_spectrum;
}

BettiSumRange maximizer_betti_sum_range(const ComplexShape& shape) {
  // sum beta = sum a - 2 sum r, so track the range of sum r along optimal paths.
  const ChainTable table(shape);
  const std::size_t n = table.length();
  std::vector<Index> lo(static_cast<std::size_t>(table.bound(n)) + 1, 0);
  std::vector<Index> hi = lo;
  for (std::size_t i = n; i >= 1; --i) {
    const auto width = static_cast<std::size_t>(table.bound(i - 1)) + 1;
    std::vector<Index> next_lo(width, std::numeric_limits<Index>::max());
    std::vector<Index> next_hi(width, std::numeric_limits<Index>::min());
    for (Index p = 0; p <= table.bound(i - 1); ++p) {
      const auto ps = static_cast<std::size_t>(p);
      for (Index q = 0; q <= table.max_next(i, p); ++q) {
        if (!table.optimal(i, p, q)) continue;
        const auto qs = static_cast<std::size_t>(q);
        next_lo[ps] = std::min(next_lo[ps], q + lo[qs]);
        next_hi[ps] = std::max(next_hi[ps], q + hi[qs]);
      }
    }
    lo = std::move(next_lo);
    hi = std::move(next_hi);
  }
  Index total_dims = 0;
  for (Index a : shape.dims()) total_dims += a;
  return {total_dims - 2 * hi[0], total_dims - 2 * lo[0]};
}

}  // namespace chaincx
