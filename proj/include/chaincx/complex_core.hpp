// Exact integer arithmetic on bounded chain complexes
//
//   0 <- A_0 <-d_1- A_1 <-d_2- ... <-d_n- A_n <- 0
//
// described only by their dimension vector a = (a_0, ..., a_n) and the ranks
// r = (r_1, ..., r_n) of the boundary maps. The sentinels r_0 = r_{n+1} = 0
// are implicit everywhere; they are never stored.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "chaincx/errors.hpp"

namespace chaincx {

using Index = std::int64_t;

/// Largest admissible space dimension. Keeps every derived quantity in int64.
inline constexpr Index kMaxDimension = Index{1} << 20;
/// Largest admissible number of boundary maps.
inline constexpr std::size_t kMaxLength = std::size_t{1} << 10;

/// Dimension vector (a_0, ..., a_n) of a chain complex. Zero entries are legal.
class ComplexShape {
 public:
  ComplexShape(std::initializer_list<Index> dims);
  explicit ComplexShape(std::vector<Index> dims);

  /// Number of boundary maps n; the shape has n + 1 entries.
  std::size_t length() const noexcept { return dims_.size() - 1; }
  std::size_t size() const noexcept { return dims_.size(); }

  Index operator[](std::size_t i) const noexcept { return dims_[i]; }
  /// a_i for i in [0, n]; 0 for any index outside that range.
  Index dim_or_zero(std::ptrdiff_t i) const noexcept;

  std::span<const Index> dims() const noexcept { return dims_; }
  ComplexShape reversed() const;

  auto operator<=>(const ComplexShape&) const = default;

 private:
  std::vector<Index> dims_;
};

/// Ranks (r_1, ..., r_n) of the boundary maps. Storage is 0-based; use
/// rank(i) for the 1-based, sentinel-aware view.
class RankVector {
 public:
  RankVector() = default;
  RankVector(std::initializer_list<Index> ranks);
  explicit RankVector(std::vector<Index> ranks);

  std::size_t size() const noexcept { return ranks_.size(); }
  bool empty() const noexcept { return ranks_.empty(); }

  /// r_i for i in [1, n]; the sentinels r_0 and r_{n+1} read as 0.
  Index rank(std::size_t i) const noexcept;

  Index operator[](std::size_t k) const noexcept { return ranks_[k]; }
  Index& operator[](std::size_t k) noexcept { return ranks_[k]; }
  std::span<const Index> values() const noexcept { return ranks_; }
  RankVector reversed() const;

  auto operator<=>(const RankVector&) const = default;

 private:
  std::vector<Index> ranks_;
};

/// Homology dimensions (beta_0, ..., beta_n).
class BettiVector {
 public:
  BettiVector() = default;
  BettiVector(std::initializer_list<Index> bettis);
  explicit BettiVector(std::vector<Index> bettis);

  std::size_t size() const noexcept { return bettis_.size(); }
  Index operator[](std::size_t i) const noexcept { return bettis_[i]; }
  std::span<const Index> values() const noexcept { return bettis_; }

  Index total() const noexcept;
  Index alternating_sum() const noexcept;

  auto operator<=>(const BettiVector&) const = default;

 private:
  std::vector<Index> bettis_;
};

std::string to_string(std::span<const Index> values);
inline std::string to_string(const ComplexShape& s) { return to_string(s.dims()); }
inline std::string to_string(const RankVector& r) { return to_string(r.values()); }
inline std::string to_string(const BettiVector& b) { return to_string(b.values()); }

/// chi = sum_i (-1)^i a_i.
Index euler_characteristic(const ComplexShape& shape) noexcept;

/// True iff r_i + r_{i+1} <= a_i for every i = 0..n (with sentinels). This is
/// exactly the condition for a complex with these dimensions and ranks to exist.
/// Throws ContractViolation if the rank vector does not have n entries.
bool is_feasible(const ComplexShape& shape, const RankVector& ranks);

/// d(a, r) = sum_{i=1}^n r_i (a_i + a_{i-1} - r_{i-1} - r_i), the dimension
/// of the stratum of complexes with ranks r. Throws DomainError when infeasible.
Index stratum_dimension(const ComplexShape& shape, const RankVector& ranks);

/// N = sum_{i=1}^n a_{i-1} a_i, the dimension of the space of all n-tuples of maps.
Index ambient_dimension(const ComplexShape& shape) noexcept;

/// beta_i = a_i - r_i - r_{i+1}. Throws DomainError when infeasible.
BettiVector betti_from_ranks(const ComplexShape& shape, const RankVector& ranks);

/// Inverse of betti_from_ranks: r_1 = a_0 - beta_0, r_{i+1} = a_i - beta_i - r_i.
/// Throws NoRealizingRanks when the recursion does not close up on r_{n+1} = 0
/// or produces an infeasible vector.
RankVector ranks_from_betti(const ComplexShape& shape, const BettiVector& bettis);

/// |chi|, the triangle-inequality lower bound on sum_i beta_i.
Index betti_lower_bound(const ComplexShape& shape) noexcept;

/// Upper bound min(a_{i-1}, a_i) on r_i, for i in [1, n].
Index rank_upper_bound(const ComplexShape& shape, std::size_t i) noexcept;

}  // namespace chaincx
