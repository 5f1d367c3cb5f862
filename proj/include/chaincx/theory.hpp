// Closed-form predictions for the almost-sure Betti numbers of random chain
// complexes, and harnesses that compare them against the exact optimizer.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "chaincx/complex_core.hpp"
#include "chaincx/rank_optimizer.hpp"

namespace chaincx {

enum class TheoremSource {
  NoMaps,           // n = 0: beta_0 = a_0
  Length1,          // n = 1
  Length2,          // n = 2, five-case table
  Length3Sum,       // n = 3 under the dimension hypothesis: sum beta = |chi|
  EqualOdd,         // all a_i = m, n odd: exact complex
  EqualEvenSum,     // all a_i = m, n even: sum beta = |chi| = m, odd beta vanish
  EqualEvenSpread,  // all a_i = m, n even: even beta in {floor, ceil}(m / (n/2 + 1))
  Conjecture,       // any n under the dimension hypothesis: sum beta = |chi|
};

std::string_view to_string(TheoremSource source) noexcept;

/// How to read the hypothesis a_i + a_{i+2} >= a_{i+1} at the ends of the shape.
enum class HypothesisReading {
  /// i runs over -1..n-1 with a_{-1} = a_{n+1} = 0; the end conditions become
  /// a_1 >= a_0 and a_{n-1} >= a_n.
  Sentinel,
  /// Only i with all three indices inside [0, n], i.e. i = 0..n-2.
  Interior,
};

std::string_view to_string(HypothesisReading reading) noexcept;

bool dimension_hypothesis_holds(const ComplexShape& shape, HypothesisReading reading) noexcept;

struct Prediction {
  TheoremSource source = TheoremSource::Conjecture;
  bool applicable = false;
  /// Lexicographically ascending; may be a prefix when the set is huge.
  std::vector<BettiVector> predicted_betti_set;
  /// Exact size of the full predicted set (0 for sum-only predictions).
  BigCount predicted_set_size = 0;
  std::optional<Index> predicted_sum;
};

Prediction predict_no_maps(const ComplexShape& shape);
Prediction predict_length1(const ComplexShape& shape);
Prediction predict_length2(const ComplexShape& shape);
Prediction predict_length3_sum(const ComplexShape& shape,
                               HypothesisReading reading = HypothesisReading::Sentinel);
/// EqualOdd for odd n, EqualEvenSpread for even n; NotApplicable unless every
/// entry equals the same m >= 1.
Prediction predict_equal_dim(const ComplexShape& shape,
                             std::uint64_t cap = kDefaultEnumerationCap);
Prediction predict_equal_even_sum(const ComplexShape& shape);
Prediction predict_conjecture(const ComplexShape& shape,
                              HypothesisReading reading = HypothesisReading::Sentinel);

/// Every case of the length-2 table whose inequalities hold, as
/// (case number 1..5, predicted set). Overlapping cases must agree.
struct Length2Case {
  int case_number = 0;
  std::vector<BettiVector> betti_set;
};
std::vector<Length2Case> length2_cases(const ComplexShape& shape);

/// True iff betti has zero odd entries, even entries in
/// {floor(m / (n/2 + 1)), ceil(m / (n/2 + 1))}, and total m.
bool is_equal_even_spread_vector(Index m, std::size_t n, const BettiVector& betti) noexcept;

/// Every theorem applicable to the shape (closed forms and the conjecture).
std::vector<Prediction> applicable_predictions(const ComplexShape& shape,
                                               HypothesisReading reading,
                                               bool include_conjecture = true,
                                               std::uint64_t cap = kDefaultEnumerationCap);

enum class Verdict { Match, Mismatch, NotApplicable };
std::string_view to_string(Verdict verdict) noexcept;

struct PredictionCheck {
  Prediction prediction;
  Verdict verdict = Verdict::NotApplicable;
};

struct ComparisonResult {
  ComplexShape shape{0};
  std::vector<PredictionCheck> checks;
  MaximizerReport observed;
  /// Observed range of sum beta across all maximizers.
  BettiSumRange observed_sum;
  /// Mismatch if any check mismatches, else Match if any check applies.
  Verdict verdict = Verdict::NotApplicable;
};

Verdict compare(const Prediction& prediction, const MaximizerReport& observed,
                const BettiSumRange& observed_sum);

/// Evaluates every applicable prediction against the optimizer.
ComparisonResult check_shape(const ComplexShape& shape,
                             HypothesisReading reading = HypothesisReading::Sentinel,
                             bool include_conjecture = true,
                             std::uint64_t cap = kDefaultEnumerationCap);

struct ScanReport {
  /// Shapes with n <= max_length and entries <= max_entry, in the order visited.
  std::uint64_t shapes_visited = 0;
  std::uint64_t hypothesis_shapes = 0;
  std::uint64_t match_count = 0;
  std::uint64_t mismatch_count = 0;
  std::uint64_t not_applicable_count = 0;
  /// Mismatches (theorem sweep) or counterexamples (conjecture scan),
  /// ordered by (length, shape).
  std::vector<ComparisonResult> failures;
  bool truncated = false;
};

/// Searches every shape satisfying the dimension hypothesis for one where a
/// maximizer has sum beta != |chi|. Shapes are canonicalized up to reversal;
/// both orientations of a counterexample are reported. Stops after visiting
/// shape_cap shapes and sets `truncated`.
ScanReport conjecture_scan(std::size_t max_length, Index max_entry,
                           HypothesisReading reading = HypothesisReading::Sentinel,
                           std::uint64_t shape_cap = kDefaultBruteForceCap);

/// check_shape over every shape in bounds, closed-form theorems only.
ScanReport theorem_sweep(std::size_t max_length, Index max_entry,
                         HypothesisReading reading = HypothesisReading::Sentinel,
                         std::uint64_t shape_cap = kDefaultBruteForceCap);

/// Hessian of d(a, r) in r when every a_i is equal: tridiagonal with -2 on
/// the diagonal and -1 beside it.
Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> equal_dim_quadratic_form(std::size_t n);

/// Exact leading principal minors det(M[0..k, 0..k]) for k = 1..size, by
/// fraction-free elimination.
std::vector<Index> leading_principal_minors(
    const Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic>& matrix);

/// With all a_i = m, n even and r_i + r_{i+1} = m for odd i, checks
/// sum beta_i^2 == 2 f(r) - n m^2 + m^2 where f(r) = sum r_i (r_{i-1} + r_i).
/// Returns nullopt when the hypothesis does not hold.
std::optional<bool> spread_identity_check(std::size_t n, Index m, const RankVector& ranks);

}  // namespace chaincx
