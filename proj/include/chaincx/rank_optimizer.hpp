// Maximization of the stratum dimension d(a, r) over feasible rank vectors.
//
// The maximizers are exactly the rank vectors that a random complex attains
// with positive probability. The objective splits into consecutive-pair terms
//
//   d(a, r) = sum_i w_i(r_{i-1}, r_i),   w_i(p, q) = q (a_{i-1} + a_i - p - q),
//
// and the feasible region is cut out by the pairwise constraints
// r_{i-1} + r_i <= a_{i-1}, so a chain dynamic program over r_i in
// [0, min(a_{i-1}, a_i)] solves it exactly in O(n A^2) time with A = max a_i.
#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chaincx/complex_core.hpp"

namespace chaincx {

/// Exact count of maximizers; can grow exponentially with n.
using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000;
inline constexpr std::uint64_t kDefaultBruteForceCap = 100'000'000;

struct MaximizerReport {
  Index max_dimension = 0;
  BigCount maximizer_count = 0;
  /// Lexicographically ascending; at most enumeration_cap entries.
  std::vector<RankVector> maximizers;
  /// betti_spectrum[k] = betti_from_ranks(shape, maximizers[k]).
  std::vector<BettiVector> betti_spectrum;
  bool truncated = false;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

struct DpMaximum {
  Index max_dimension = 0;
  /// The lexicographically smallest maximizer.
  RankVector witness;
};

/// Range of sum_i beta_i over all maximizers.
struct BettiSumRange {
  Index min_total = 0;
  Index max_total = 0;
};

DpMaximum maximize_dp(const ComplexShape& shape);

/// prod_i (min(a_{i-1}, a_i) + 1), saturating at UINT64_MAX: the number of
/// candidates brute_force_maximize visits.
std::uint64_t brute_force_candidates(const ComplexShape& shape) noexcept;

/// Exhaustive scan of the rank box; never truncated. Throws WorkCapExceeded
/// when brute_force_candidates(shape) > work_cap.
MaximizerReport brute_force_maximize(const ComplexShape& shape,
                                     std::uint64_t work_cap = kDefaultBruteForceCap);

/// All maximizers in lexicographic order, listing at most `cap` of them.
/// maximizer_count is exact regardless of the cap.
MaximizerReport enumerate_maximizers(const ComplexShape& shape,
                                     std::uint64_t cap = kDefaultEnumerationCap);

/// Betti vectors of the (capped) maximizer list.
std::vector<BettiVector> betti_spectrum(const ComplexShape& shape,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// Exact min and max of total Betti number across every maximizer, without
/// enumerating them.
BettiSumRange maximizer_betti_sum_range(const ComplexShape& shape);

}  // namespace chaincx
