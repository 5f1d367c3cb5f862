#include "chaincx/complex_core.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "checked.hpp"

namespace chaincx {

namespace {

void validate_dims(const std::vector<Index>& dims) {
  if (dims.empty()) {
    throw ContractViolation("shape must contain at least one dimension");
  }
  if (dims.size() - 1 > kMaxLength) {
    throw ContractViolation("shape has " + std::to_string(dims.size() - 1) +
                            " maps; at most " + std::to_string(kMaxLength) + " are supported");
  }
  for (Index a : dims) {
    if (a < 0) throw ContractViolation("shape entries must be non-negative");
    if (a > kMaxDimension) {
      throw ContractViolation("shape entry " + std::to_string(a) + " exceeds 2^20");
    }
  }
}

void require_matching_length(const ComplexShape& shape, const RankVector& ranks) {
  if (ranks.size() != shape.length()) {
    throw ContractViolation("rank vector has " + std::to_string(ranks.size()) +
                            " entries but shape " + to_string(shape) + " has " +
                            std::to_string(shape.length()) + " maps");
  }
}

void require_feasible(const ComplexShape& shape, const RankVector& ranks) {
  if (!is_feasible(shape, ranks)) {
    throw DomainError("rank vector " + to_string(ranks) + " is infeasible for shape " +
                      to_string(shape));
  }
}

}  // namespace

ComplexShape::ComplexShape(std::initializer_list<Index> dims)
    : ComplexShape(std::vector<Index>(dims)) {}

ComplexShape::ComplexShape(std::vector<Index> dims) : dims_(std::move(dims)) {
  validate_dims(dims_);
}

Index ComplexShape::dim_or_zero(std::ptrdiff_t i) const noexcept {
  if (i < 0 || static_cast<std::size_t>(i) >= dims_.size()) return 0;
  return dims_[static_cast<std::size_t>(i)];
}

ComplexShape ComplexShape::reversed() const {
  return ComplexShape(std::vector<Index>(dims_.rbegin(), dims_.rend()));
}

RankVector::RankVector(std::initializer_list<Index> ranks)
    : RankVector(std::vector<Index>(ranks)) {}

RankVector::RankVector(std::vector<Index> ranks) : ranks_(std::move(ranks)) {
  for (Index r : ranks_) {
    if (r < 0) throw ContractViolation("ranks must be non-negative");
  }
}

Index RankVector::rank(std::size_t i) const noexcept {
  if (i == 0 || i > ranks_.size()) return 0;
  return ranks_[i - 1];
}

RankVector RankVector::reversed() const {
  return RankVector(std::vector<Index>(ranks_.rbegin(), ranks_.rend()));
}

BettiVector::BettiVector(std::initializer_list<Index> bettis)
    : BettiVector(std::vector<Index>(bettis)) {}

BettiVector::BettiVector(std::vector<Index> bettis) : bettis_(std::move(bettis)) {
  for (Index b : bettis_) {
    if (b < 0) throw ContractViolation("Betti numbers must be non-negative");
  }
}

Index BettiVector::total() const noexcept {
  Index sum = 0;
  for (Index b : bettis_) sum += b;
  return sum;
}

Index BettiVector::alternating_sum() const noexcept {
  Index sum = 0;
  for (std::size_t i = 0; i < bettis_.size(); ++i) sum += (i % 2 == 0) ? bettis_[i] : -bettis_[i];
  return sum;
}

std::string to_string(std::span<const Index> values) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out << ',';
    out << values[i];
  }
  out << ')';
  return out.str();
}

Index euler_characteristic(const ComplexShape& shape) noexcept {
  Index chi = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) chi += (i % 2 == 0) ? shape[i] : -shape[i];
  return chi;
}

bool is_feasible(const ComplexShape& shape, const RankVector& ranks) {
  require_matching_length(shape, ranks);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (ranks.rank(i) + ranks.rank(i + 1) > shape[i]) return false;
  }
  return true;
}

Index stratum_dimension(const ComplexShape& shape, const RankVector& ranks) {
  require_feasible(shape, ranks);
  Index d = 0;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    const Index r = ranks.rank(i);
    const Index free_dims = shape[i] + shape[i - 1] - ranks.rank(i - 1) - r;
    d = detail::checked_add(d, detail::checked_mul(r, free_dims));
  }
  return d;
}

Index ambient_dimension(const ComplexShape& shape) noexcept {
  Index n = 0;
  for (std::size_t i = 1; i < shape.size(); ++i) n += shape[i - 1] * shape[i];
  return n;
}

BettiVector betti_from_ranks(const ComplexShape& shape, const RankVector& ranks) {
  require_feasible(shape, ranks);
  std::vector<Index> bettis(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    bettis[i] = shape[i] - ranks.rank(i) - ranks.rank(i + 1);
  }
  return BettiVector(std::move(bettis));
}

RankVector ranks_from_betti(const ComplexShape& shape, const BettiVector& bettis) {
  if (bettis.size() != shape.size()) {
    throw ContractViolation("Betti vector has " + std::to_string(bettis.size()) +
                            " entries but shape " + to_string(shape) + " has " +
                            std::to_string(shape.size()));
  }
  auto fail = [&] {
    return NoRealizingRanks("no realizing rank vector for Betti numbers " +
                            to_string(bettis) + " on shape " + to_string(shape));
  };
  std::vector<Index> ranks(shape.length());
  Index previous = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const Index next = shape[i] - bettis[i] - previous;
    if (next < 0) throw fail();
    if (i == shape.length()) {
      if (next != 0) throw fail();
    } else {
      ranks[i] = next;
    }
    previous = next;
  }
  RankVector result(std::move(ranks));
  if (!is_feasible(shape, result)) throw fail();
  return result;
}

Index betti_lower_bound(const ComplexShape& shape) noexcept {
  return std::abs(euler_characteristic(shape));
}

Index rank_upper_bound(const ComplexShape& shape, std::size_t i) noexcept {
  assert(i >= 1 && i <= shape.length());
  return std::min(shape[i - 1], shape[i]);
}

}  // namespace chaincx
