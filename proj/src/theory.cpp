#include "chaincx/theory.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace chaincx {

namespace {

Prediction not_applicable(TheoremSource source) {
  Prediction p;
  p.source = source;
  return p;
}

Prediction set_prediction(TheoremSource source, std::vector<BettiVector> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  Prediction p;
  p.source = source;
  p.applicable = true;
  p.predicted_set_size = set.size();
  p.predicted_betti_set = std::move(set);
  return p;
}

Prediction sum_prediction(TheoremSource source, Index sum) {
  Prediction p;
  p.source = source;
  p.applicable = true;
  p.predicted_sum = sum;
  return p;
}

std::optional<Index> common_dimension(const ComplexShape& shape) {
  const Index m = shape[0];
  for (Index a : shape.dims()) {
    if (a != m) return std::nullopt;
  }
  if (m < 1) return std::nullopt;
  return m;
}

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  BigCount result = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;
  }
  return result;
}

template <typename Visit>
bool for_each_shape(std::size_t max_length, Index max_entry, std::uint64_t cap,
                    std::uint64_t& visited, Visit&& visit) {
  for (std::size_t n = 0; n <= max_length; ++n) {
    std::vector<Index> dims(n + 1, 0);
    while (true) {
      if (visited >= cap) return false;
      ++visited;
      visit(ComplexShape(dims));
      std::size_t k = dims.size();
      while (k > 0 && dims[k - 1] == max_entry) {
        dims[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
      ++dims[k - 1];
    }
  }
  return true;
}

void tally(ScanReport& report, Verdict verdict, std::uint64_t weight) {
  switch (verdict) {
    case Verdict::Match: report.match_count += weight; break;
    case Verdict::Mismatch: report.mismatch_count += weight; break;
    case Verdict::NotApplicable: report.not_applicable_count += weight; break;
  }
}

}  // namespace

std::string_view to_string(TheoremSource source) noexcept {
  switch (source) {
    case TheoremSource::NoMaps: return "NoMaps";
    case TheoremSource::Length1: return "Length1";
    case TheoremSource::Length2: return "Length2";
    case TheoremSource::Length3Sum: return "Length3Sum";
    case TheoremSource::EqualOdd: return "EqualOdd";
    case TheoremSource::EqualEvenSum: return "EqualEvenSum";
    case TheoremSource::EqualEvenSpread: return "EqualEvenSpread";
    case TheoremSource::Conjecture: return "Conjecture";
  }
  return "Unknown";
}

std::string_view to_string(HypothesisReading reading) noexcept {
  return reading == HypothesisReading::Sentinel ? "sentinel" : "interior";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Match: return "Match";
    case Verdict::Mismatch: return "Mismatch";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

bool dimension_hypothesis_holds(const ComplexShape& shape, HypothesisReading reading) noexcept {
  const auto n = static_cast<std::ptrdiff_t>(shape.length());
  const std::ptrdiff_t first = reading == HypothesisReading::Sentinel ? -1 : 0;
  const std::ptrdiff_t last = reading == HypothesisReading::Sentinel ? n - 1 : n - 2;
  for (std::ptrdiff_t i = first; i <= last; ++i) {
    if (shape.dim_or_zero(i) + shape.dim_or_zero(i + 2) < shape.dim_or_zero(i + 1)) return false;
  }
  return true;
}

Prediction predict_no_maps(const ComplexShape& shape) {
  if (shape.length() != 0) return not_applicable(TheoremSource::NoMaps);
  return set_prediction(TheoremSource::NoMaps, {BettiVector{shape[0]}});
}

Prediction predict_length1(const ComplexShape& shape) {
  if (shape.length() != 1) return not_applicable(TheoremSource::Length1);
  const Index a0 = shape[0], a1 = shape[1];
  if (a0 <= a1) return set_prediction(TheoremSource::Length1, {BettiVector{0, a1 - a0}});
  return set_prediction(TheoremSource::Length1, {BettiVector{a0 - a1, 0}});
}

std::vector<Length2Case> length2_cases(const ComplexShape& shape) {
  std::vector<Length2Case> cases;
  if (shape.length() != 2) return cases;
  const Index a0 = shape[0], a1 = shape[1], a2 = shape[2];
  const Index chi = euler_characteristic(shape);
  if (a0 >= a1 + a2) cases.push_back({1, {BettiVector{a0 - a1, 0, a2}}});
  // Printed in the source table as (a_0, 0, a_1 - a_2), which is negative in
  // this regime; (a_0, 0, a_2 - a_1) is the value at the optimum r = (0, a_1).
  if (a2 >= a0 + a1) cases.push_back({2, {BettiVector{a0, 0, a2 - a1}}});
  if (a1 >= a0 + a2) cases.push_back({3, {BettiVector{0, a1 - a0 - a2, 0}}});
  const bool balanced = a2 - a1 <= a0 && a0 <= a1 + a2 && a1 <= a0 + a2;
  if (balanced && chi % 2 == 0) cases.push_back({4, {BettiVector{chi / 2, 0, chi / 2}}});
  if (balanced && chi % 2 != 0) {
    cases.push_back({5, {BettiVector{(chi - 1) / 2, 0, (chi + 1) / 2},
                         BettiVector{(chi + 1) / 2, 0, (chi - 1) / 2}}});
  }
  return cases;
}

Prediction predict_length2(const ComplexShape& shape) {
  const auto cases = length2_cases(shape);
  if (cases.empty()) return not_applicable(TheoremSource::Length2);
  return set_prediction(TheoremSource::Length2, cases.front().betti_set);
}

Prediction predict_length3_sum(const ComplexShape& shape, HypothesisReading reading) {
  if (shape.length() != 3 || !dimension_hypothesis_holds(shape, reading)) {
    return not_applicable(TheoremSource::Length3Sum);
  }
  return sum_prediction(TheoremSource::Length3Sum, betti_lower_bound(shape));
}

Prediction predict_equal_dim(const ComplexShape& shape, std::uint64_t cap) {
  const std::size_t n = shape.length();
  const auto source = n % 2 == 1 ? TheoremSource::EqualOdd : TheoremSource::EqualEvenSpread;
  const auto m = common_dimension(shape);
  if (!m) return not_applicable(source);
  if (n % 2 == 1) return set_prediction(source, {BettiVector(std::vector<Index>(n + 1, 0))});

  const std::size_t slots = n / 2 + 1;
  const Index floor_value = *m / static_cast<Index>(slots);
  const auto ceil_count = static_cast<std::size_t>(*m % static_cast<Index>(slots));

  // Ascending 0/1 patterns under next_permutation give lexicographically
  // ascending Betti vectors.
  std::vector<int> pattern(slots, 0);
  std::fill(pattern.end() - static_cast<std::ptrdiff_t>(ceil_count), pattern.end(), 1);
  Prediction p;
  p.source = source;
  p.applicable = true;
  p.predicted_set_size = binomial(slots, ceil_count);
  do {
    if (p.predicted_betti_set.size() >= cap) break;
    std::vector<Index> betti(n + 1, 0);
    for (std::size_t k = 0; k < slots; ++k) betti[2 * k] = floor_value + pattern[k];
    p.predicted_betti_set.emplace_back(std::move(betti));
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return p;
}

Prediction predict_equal_even_sum(const ComplexShape& shape) {
  const auto m = common_dimension(shape);
  if (!m || shape.length() % 2 != 0) return not_applicable(TheoremSource::EqualEvenSum);
  return sum_prediction(TheoremSource::EqualEvenSum, betti_lower_bound(shape));
}

Prediction predict_conjecture(const ComplexShape& shape, HypothesisReading reading) {
  if (!dimension_hypothesis_holds(shape, reading)) return not_applicable(TheoremSource::Conjecture);
  return sum_prediction(TheoremSource::Conjecture, betti_lower_bound(shape));
}

bool is_equal_even_spread_vector(Index m, std::size_t n, const BettiVector& betti) noexcept {
  if (n % 2 != 0 || betti.size() != n + 1 || m < 1) return false;
  const auto slots = static_cast<Index>(n / 2 + 1);
  const Index lo = m / slots;
  const Index hi = (m + slots - 1) / slots;
  for (std::size_t i = 0; i <= n; ++i) {
    if (i % 2 == 1 && betti[i] != 0) return false;
    if (i % 2 == 0 && betti[i] != lo && betti[i] != hi) return false;
  }
  return betti.total() == m;
}

std::vector<Prediction> applicable_predictions(const ComplexShape& shape,
                                               HypothesisReading reading,
                                               bool include_conjecture, std::uint64_t cap) {
  std::vector<Prediction> all = {predict_no_maps(shape),
                                 predict_length1(shape),
                                 predict_length2(shape),
                                 predict_length3_sum(shape, reading),
                                 predict_equal_dim(shape, cap),
                                 predict_equal_even_sum(shape)};
  if (include_conjecture) all.push_back(predict_conjecture(shape, reading));
  std::erase_if(all, [](const Prediction& p) { return !p.applicable; });
  return all;
}

Verdict compare(const Prediction& prediction, const MaximizerReport& observed,
                const BettiSumRange& observed_sum) {
  if (!prediction.applicable) return Verdict::NotApplicable;
  if (prediction.predicted_sum) {
    const Index expected = *prediction.predicted_sum;
    const bool ok = observed_sum.min_total == expected && observed_sum.max_total == expected;
    if (!ok) return Verdict::Mismatch;
  }
  if (prediction.predicted_set_size == 0) return Verdict::Match;

  if (observed.maximizer_count != prediction.predicted_set_size) return Verdict::Mismatch;
  const auto& predicted = prediction.predicted_betti_set;
  const bool predicted_complete = prediction.predicted_set_size == predicted.size();
  for (const auto& betti : observed.betti_spectrum) {
    bool admitted = false;
    if (predicted_complete) {
      admitted = std::binary_search(predicted.begin(), predicted.end(), betti);
    } else if (prediction.source == TheoremSource::EqualEvenSpread && !predicted.empty()) {
      const Index m = predicted.front().total();
      admitted = is_equal_even_spread_vector(m, betti.size() - 1, betti);
    }
    if (!admitted) return Verdict::Mismatch;
  }
  // Distinct maximizers have distinct Betti vectors, so equal counts plus
  // containment of the full observed list is set equality.
  return Verdict::Match;
}

ComparisonResult check_shape(const ComplexShape& shape, HypothesisReading reading,
                             bool include_conjecture, std::uint64_t cap) {
  ComparisonResult result;
  result.shape = shape;
  result.observed = enumerate_maximizers(shape, cap);
  result.observed_sum = maximizer_betti_sum_range(shape);
  bool any_match = false;
  bool any_mismatch = false;
  for (auto& prediction : applicable_predictions(shape, reading, include_conjecture, cap)) {
    const Verdict v = compare(prediction, result.observed, result.observed_sum);
    any_match |= v == Verdict::Match;
    any_mismatch |= v == Verdict::Mismatch;
    result.checks.push_back({std::move(prediction), v});
  }
  result.verdict = any_mismatch ? Verdict::Mismatch
                   : any_match  ? Verdict::Match
                                : Verdict::NotApplicable;
  return result;
}

ScanReport conjecture_scan(std::size_t max_length, Index max_entry, HypothesisReading reading,
                           std::uint64_t shape_cap) {
  if (max_entry < 0) throw ContractViolation("max_entry must be non-negative");
  ScanReport report;
  const bool complete = for_each_shape(
      max_length, max_entry, shape_cap, report.shapes_visited, [&](const ComplexShape& shape) {
        if (!dimension_hypothesis_holds(shape, reading)) {
          ++report.not_applicable_count;
          return;
        }
        ++report.hypothesis_shapes;
        const ComplexShape mirror = shape.reversed();
        // d(a, r) is symmetric under reversal; the smaller orientation was
        // already evaluated and tallied for both.
        if (mirror < shape) return;
        const std::uint64_t weight = mirror == shape ? 1 : 2;

        const BettiSumRange range = maximizer_betti_sum_range(shape);
        const Index bound = betti_lower_bound(shape);
        if (range.min_total == bound && range.max_total == bound) {
          report.match_count += weight;
          return;
        }
        report.mismatch_count += weight;
        for (const ComplexShape& oriented : {shape, mirror}) {
          ComparisonResult failure;
          failure.shape = oriented;
          failure.observed = enumerate_maximizers(oriented);
          failure.observed_sum = maximizer_betti_sum_range(oriented);
          failure.checks.push_back({predict_conjecture(oriented, reading), Verdict::Mismatch});
          failure.verdict = Verdict::Mismatch;
          report.failures.push_back(std::move(failure));
          if (weight == 1) break;
        }
      });
  report.truncated = !complete;
  return report;
}

ScanReport theorem_sweep(std::size_t max_length, Index max_entry, HypothesisReading reading,
                         std::uint64_t shape_cap) {
  if (max_entry < 0) throw ContractViolation("max_entry must be non-negative");
  ScanReport report;
  const bool complete = for_each_shape(
      max_length, max_entry, shape_cap, report.shapes_visited, [&](const ComplexShape& shape) {
        ComparisonResult result = check_shape(shape, reading, /*include_conjecture=*/false);
        if (result.verdict != Verdict::NotApplicable) ++report.hypothesis_shapes;
        tally(report, result.verdict, 1);
        if (result.verdict == Verdict::Mismatch) report.failures.push_back(std::move(result));
      });
  report.truncated = !complete;
  return report;
}

Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> equal_dim_quadratic_form(std::size_t n) {
  if (n < 1) throw ContractViolation("quadratic form needs at least one rank");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> hessian =
      Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic>::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    hessian(i, i) = -2;
    if (i + 1 < size) hessian(i, i + 1) = hessian(i + 1, i) = -1;
  }
  return hessian;
}

std::vector<Index> leading_principal_minors(
    const Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic>& matrix) {
  if (matrix.rows() != matrix.cols()) throw ContractViolation("matrix must be square");
  std::vector<Index> minors;
  for (Eigen::Index k = 1; k <= matrix.rows(); ++k) {
    Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> a = matrix.topLeftCorner(k, k);
    Index sign = 1;
    Index previous_pivot = 1;
    Index det = 0;
    bool singular = false;
    // Bareiss: every intermediate entry is itself a minor, so division is exact.
    for (Eigen::Index col = 0; col < k && !singular; ++col) {
      Eigen::Index pivot_row = col;
      while (pivot_row < k && a(pivot_row, col) == 0) ++pivot_row;
      if (pivot_row == k) {
        singular = true;
        break;
      }
      if (pivot_row != col) {
        a.row(pivot_row).swap(a.row(col));
        sign = -sign;
      }
      for (Eigen::Index i = col + 1; i < k; ++i) {
        for (Eigen::Index j = col + 1; j < k; ++j) {
          a(i, j) = (a(i, j) * a(col, col) - a(i, col) * a(col, j)) / previous_pivot;
        }
      }
      previous_pivot = a(col, col);
    }
    if (!singular) det = sign * a(k - 1, k - 1);
    minors.push_back(det);
  }
  return minors;
}

std::optional<bool> spread_identity_check(std::size_t n, Index m, const RankVector& ranks) {
  if (n % 2 != 0 || n == 0 || m < 1 || ranks.size() != n) return std::nullopt;
  const ComplexShape shape(std::vector<Index>(n + 1, m));
  if (!is_feasible(shape, ranks)) return std::nullopt;
  for (std::size_t i = 1; i < n; i += 2) {
    if (ranks.rank(i) + ranks.rank(i + 1) != m) return std::nullopt;
  }
  const BettiVector betti = betti_from_ranks(shape, ranks);
  Index squares = 0;
  for (Index b : betti.values()) squares += b * b;
  Index f = 0;
  for (std::size_t i = 1; i <= n; ++i) f += ranks.rank(i) * (ranks.rank(i - 1) + ranks.rank(i));
  const auto len = static_cast<Index>(n);
  return squares == 2 * f - len * m * m + m * m;
}

}  // namespace chaincx
