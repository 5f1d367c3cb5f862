#include <doctest.h>

#include <algorithm>

#include "chaincx/theory.hpp"
#include "support/oracles.hpp"

using namespace chaincx;

namespace {

std::vector<BettiVector> set_of(const Prediction& p) { return p.predicted_betti_set; }

std::vector<BettiVector> observed_set(const ComplexShape& shape) {
  auto spectrum = enumerate_maximizers(shape, 1'000'000).betti_spectrum;
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

}  // namespace

TEST_CASE("length 1") {
  CHECK(set_of(predict_length1({2, 5})) == std::vector<BettiVector>{{0, 3}});
  CHECK(set_of(predict_length1({5, 2})) == std::vector<BettiVector>{{3, 0}});
  CHECK(set_of(predict_length1({4, 4})) == std::vector<BettiVector>{{0, 0}});
  CHECK_FALSE(predict_length1({1, 2, 3}).applicable);
}

TEST_CASE("length 2 table") {
  CHECK(set_of(predict_length2({3, 1, 3})) == std::vector<BettiVector>{{2, 0, 3}, {3, 0, 2}});
  CHECK(set_of(predict_length2({1, 5, 2})) == std::vector<BettiVector>{{0, 2, 0}});
  CHECK(set_of(predict_length2({2, 2, 2})) == std::vector<BettiVector>{{1, 0, 1}});
  CHECK(set_of(predict_length2({7, 2, 3})) == std::vector<BettiVector>{{5, 0, 3}});
  CHECK(set_of(predict_length2({1, 2, 6})) == std::vector<BettiVector>{{1, 0, 4}});
  CHECK(set_of(predict_length2({3, 3, 3})) == std::vector<BettiVector>{{1, 0, 2}, {2, 0, 1}});
  CHECK_FALSE(predict_length2({1, 2}).applicable);
}

TEST_CASE("length 2 table is total and overlapping cases agree") {
  for (Index a0 = 0; a0 <= 20; ++a0) {
    for (Index a1 = 0; a1 <= 20; ++a1) {
      for (Index a2 = 0; a2 <= 20; ++a2) {
        const auto cases = length2_cases({a0, a1, a2});
        REQUIRE(!cases.empty());
        for (const auto& c : cases) {
          auto set = c.betti_set;
          std::sort(set.begin(), set.end());
          auto first = cases.front().betti_set;
          std::sort(first.begin(), first.end());
          CHECK(set == first);
          for (const auto& b : c.betti_set) CHECK(b.alternating_sum() == a0 - a1 + a2);
        }
      }
    }
  }
}

TEST_CASE("dimension hypothesis readings") {
  CHECK_FALSE(dimension_hypothesis_holds({2, 1, 1, 2}, HypothesisReading::Sentinel));
  // Only the end conditions exclude it; the interior pair is satisfied.
  CHECK(dimension_hypothesis_holds({2, 1, 1, 2}, HypothesisReading::Interior));
  CHECK(dimension_hypothesis_holds({2, 2, 2, 2}, HypothesisReading::Sentinel));
  CHECK(dimension_hypothesis_holds({3, 3, 3, 3}, HypothesisReading::Interior));
  CHECK_FALSE(dimension_hypothesis_holds({3, 2, 2, 3}, HypothesisReading::Sentinel));
  CHECK(dimension_hypothesis_holds({1, 3, 3, 1}, HypothesisReading::Sentinel));
  CHECK_FALSE(dimension_hypothesis_holds({1, 5, 1}, HypothesisReading::Interior));
  CHECK(dimension_hypothesis_holds({0}, HypothesisReading::Sentinel));
  CHECK_FALSE(dimension_hypothesis_holds({1}, HypothesisReading::Sentinel));
  CHECK(dimension_hypothesis_holds({1}, HypothesisReading::Interior));
}

TEST_CASE("length 3 sum") {
  const auto p = predict_length3_sum({2, 2, 2, 2});
  CHECK(p.applicable);
  CHECK(p.predicted_sum == 0);
  CHECK(p.predicted_betti_set.empty());
  CHECK_FALSE(predict_length3_sum({2, 1, 1, 2}).applicable);
  CHECK_FALSE(predict_length3_sum({2, 1, 1, 2}, HypothesisReading::Sentinel).applicable);
  // (3,2,2,3) has a_0 > a_1, so only the interior reading admits it.
  CHECK_FALSE(predict_length3_sum({3, 2, 2, 3}).applicable);
  const auto interior = predict_length3_sum({3, 2, 2, 3}, HypothesisReading::Interior);
  CHECK(interior.applicable);
  CHECK(interior.predicted_sum == 0);
  // ... and the optimizer disagrees there.
  CHECK(maximizer_betti_sum_range({3, 2, 2, 3}).min_total == 2);
  CHECK(maximizer_betti_sum_range({3, 2, 2, 3}).max_total == 2);
}

TEST_CASE("equal dimensions") {
  CHECK(set_of(predict_equal_dim({2, 2, 2, 2})) == std::vector<BettiVector>{{0, 0, 0, 0}});
  CHECK(predict_equal_dim({2, 2, 2, 2}).source == TheoremSource::EqualOdd);
  CHECK(set_of(predict_equal_dim({3, 3, 3})) == std::vector<BettiVector>{{1, 0, 2}, {2, 0, 1}});
  CHECK(set_of(predict_equal_dim({6, 6, 6, 6, 6})) == std::vector<BettiVector>{{2, 0, 2, 0, 2}});
  CHECK(set_of(predict_equal_dim({4})) == std::vector<BettiVector>{{4}});
  CHECK_FALSE(predict_equal_dim({1, 2, 1}).applicable);
  CHECK_FALSE(predict_equal_dim({0, 0, 0}).applicable);
  CHECK(predict_equal_even_sum({5, 5, 5, 5, 5}).predicted_sum == 5);
  CHECK_FALSE(predict_equal_even_sum({5, 5, 5, 5}).applicable);

  SUBCASE("set size is C(n/2 + 1, m mod (n/2 + 1))") {
    for (std::size_t n = 2; n <= 10; n += 2) {
      for (Index m = 1; m <= 25; ++m) {
        const auto p = predict_equal_dim(ComplexShape(std::vector<Index>(n + 1, m)));
        const std::uint64_t slots = n / 2 + 1;
        const auto ceil_slots = static_cast<std::uint64_t>(m) % slots;
        CHECK(p.predicted_set_size == oracle::binomial(slots, ceil_slots));
        CHECK(p.predicted_betti_set.size() == oracle::binomial(slots, ceil_slots));
        CHECK(std::is_sorted(p.predicted_betti_set.begin(), p.predicted_betti_set.end()));
        for (const auto& b : p.predicted_betti_set) CHECK(is_equal_even_spread_vector(m, n, b));
      }
    }
  }
  SUBCASE("m = n^2/4 + n/4 with 4 | n gives C(n/2 + 1, n/4) vectors") {
    for (std::size_t n = 4; n <= 16; n += 4) {
      const auto m = static_cast<Index>(n * n / 4 + n / 4);
      const auto p = predict_equal_dim(ComplexShape(std::vector<Index>(n + 1, m)));
      CHECK(p.predicted_set_size == oracle::binomial(n / 2 + 1, n / 4));
    }
  }
  SUBCASE("listing stops at the cap, size stays exact") {
    const auto p = predict_equal_dim(ComplexShape(std::vector<Index>(13, 39)), 5);
    CHECK(p.predicted_betti_set.size() == 5);
    CHECK(p.predicted_set_size == 35);
  }
}

TEST_CASE("spread vector predicate") {
  CHECK(is_equal_even_spread_vector(5, 4, {2, 0, 2, 0, 1}));
  CHECK_FALSE(is_equal_even_spread_vector(5, 4, {3, 0, 1, 0, 1}));
  CHECK_FALSE(is_equal_even_spread_vector(5, 4, {2, 1, 1, 0, 1}));
  CHECK_FALSE(is_equal_even_spread_vector(5, 3, {2, 0, 2, 1}));
}

TEST_CASE("predicted vectors are realizable maximizers") {
  oracle::for_each_shape(3, 6, [](const oracle::Vec& dims) {
    const ComplexShape shape(dims);
    for (const auto& p : applicable_predictions(shape, HypothesisReading::Sentinel)) {
      for (const auto& b : p.predicted_betti_set) {
        CHECK(b.alternating_sum() == euler_characteristic(shape));
        const RankVector r = ranks_from_betti(shape, b);
        CHECK(stratum_dimension(shape, r) == maximize_dp(shape).max_dimension);
      }
    }
  });
}

TEST_CASE("check_shape verdicts") {
  CHECK(check_shape({3, 1, 3}).verdict == Verdict::Match);
  CHECK(check_shape({5}).verdict == Verdict::Match);
  CHECK(check_shape({6, 6, 6, 6, 6}).verdict == Verdict::Match);
  CHECK(check_shape({7}).verdict == Verdict::Match);

  const auto forced = check_shape({2, 1, 1, 2});
  CHECK(forced.verdict == Verdict::NotApplicable);
  CHECK(forced.checks.empty());

  CHECK(check_shape({1, 2, 1, 2}).verdict == Verdict::NotApplicable);

  // (1,2,2,2,1): no closed form applies; the conjecture's hypothesis holds and
  // the observed total equals |chi| = 0.
  const auto closed = check_shape({1, 2, 2, 2, 1}, HypothesisReading::Sentinel, false);
  CHECK(closed.verdict == Verdict::NotApplicable);
  const auto with_conjecture = check_shape({1, 2, 2, 2, 1});
  REQUIRE(with_conjecture.checks.size() == 1);
  CHECK(with_conjecture.checks.front().prediction.source == TheoremSource::Conjecture);
  CHECK(with_conjecture.verdict == Verdict::Match);
  CHECK(with_conjecture.observed_sum.min_total == 0);

  // Under the interior reading (2,1,1,2) is in scope for the conjecture and fails it.
  CHECK(check_shape({2, 1, 1, 2}, HypothesisReading::Interior).verdict == Verdict::Mismatch);
}

TEST_CASE("compare detects wrong predictions") {
  const ComplexShape shape{3, 1, 3};
  const auto observed = enumerate_maximizers(shape);
  const auto sums = maximizer_betti_sum_range(shape);
  Prediction wrong_set = predict_length2(shape);
  wrong_set.predicted_betti_set = {BettiVector{2, 0, 3}, BettiVector{4, 1, 2}};
  CHECK(compare(wrong_set, observed, sums) == Verdict::Mismatch);
  Prediction too_small = predict_length2(shape);
  too_small.predicted_betti_set.pop_back();
  too_small.predicted_set_size = 1;
  CHECK(compare(too_small, observed, sums) == Verdict::Mismatch);
  const ComplexShape in_scope{1, 2, 2, 2, 1};
  Prediction wrong_sum = predict_conjecture(in_scope);
  REQUIRE(wrong_sum.applicable);
  wrong_sum.predicted_sum = 4;
  CHECK(compare(wrong_sum, enumerate_maximizers(in_scope),
                maximizer_betti_sum_range(in_scope)) == Verdict::Mismatch);
}

TEST_CASE("truncated comparisons use counts and the spread predicate") {
  const ComplexShape shape(std::vector<Index>(13, 39));
  const auto result = check_shape(shape, HypothesisReading::Sentinel, true, 7);
  CHECK(result.observed.truncated);
  CHECK(result.verdict == Verdict::Match);
}

TEST_CASE("closed forms match the optimizer on small shapes") {
  oracle::for_each_shape(3, 7, [](const oracle::Vec& dims) {
    const ComplexShape shape(dims);
    const auto result = check_shape(shape);
    CHECK_MESSAGE(result.verdict != Verdict::Mismatch, to_string(shape));
    if (shape.length() <= 2) CHECK(result.verdict == Verdict::Match);
    for (const auto& check : result.checks) {
      if (!check.prediction.predicted_betti_set.empty() &&
          check.prediction.predicted_set_size == check.prediction.predicted_betti_set.size()) {
        CHECK(check.prediction.predicted_betti_set == observed_set(shape));
      }
    }
  });
}

TEST_CASE("conjecture scan") {
  SUBCASE("sentinel reading finds nothing") {
    const auto report = conjecture_scan(4, 5);
    CHECK(report.failures.empty());
    CHECK_FALSE(report.truncated);
    CHECK(report.mismatch_count == 0);
    CHECK(report.match_count == report.hypothesis_shapes);
    CHECK(report.match_count + report.not_applicable_count == report.shapes_visited);
  }
  SUBCASE("interior reading reports both orientations of each counterexample") {
    const auto report = conjecture_scan(3, 2, HypothesisReading::Interior);
    CHECK_FALSE(report.failures.empty());
    const auto has = [&](const ComplexShape& s) {
      return std::any_of(report.failures.begin(), report.failures.end(),
                         [&](const ComparisonResult& r) { return r.shape == s; });
    };
    CHECK(has({2, 1, 1, 2}));
    for (const auto& failure : report.failures) CHECK(has(failure.shape.reversed()));
    CHECK(report.mismatch_count == report.failures.size());
  }
  SUBCASE("shape cap truncates") {
    const auto report = conjecture_scan(3, 3, HypothesisReading::Sentinel, 20);
    CHECK(report.truncated);
    CHECK(report.shapes_visited == 20);
  }
  SUBCASE("trivial bounds") {
    const auto report = conjecture_scan(1, 0);
    CHECK(report.shapes_visited == 2);
    CHECK(report.failures.empty());
  }
}

TEST_CASE("theorem sweep") {
  const auto report = theorem_sweep(3, 8);
  CHECK(report.mismatch_count == 0);
  CHECK(report.failures.empty());
  CHECK(report.shapes_visited == 9 + 81 + 729 + 6561);
  const auto trivial = theorem_sweep(1, 0);
  CHECK(trivial.shapes_visited == 2);
  CHECK(trivial.mismatch_count == 0);
}

TEST_CASE("equal-dimension quadratic form") {
  CHECK(equal_dim_quadratic_form(1)(0, 0) == -2);
  const auto h2 = equal_dim_quadratic_form(2);
  CHECK(h2(0, 0) == -2);
  CHECK(h2(0, 1) == -1);
  CHECK(h2(1, 0) == -1);
  CHECK(h2(1, 1) == -2);
  CHECK(leading_principal_minors(h2) == std::vector<Index>{-2, 3});
  CHECK(leading_principal_minors(equal_dim_quadratic_form(4)).back() == 5);
  CHECK_THROWS_AS(equal_dim_quadratic_form(0), ContractViolation);

  for (std::size_t n = 1; n <= 8; ++n) {
    const auto h = equal_dim_quadratic_form(n);
    const auto minors = leading_principal_minors(h);
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<oracle::Vec> block(k, oracle::Vec(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          block[i][j] = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
      }
      const Index expected = oracle::cofactor_det(block);
      CHECK(minors[k - 1] == expected);
      CHECK(expected == ((k % 2 == 0) ? 1 : -1) * static_cast<Index>(k + 1));
    }
  }
}

TEST_CASE("leading minors of a matrix needing row swaps") {
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> m(3, 3);
  m << 0, 1, 2, 1, 0, 3, 4, 5, 6;
  const std::vector<oracle::Vec> full = {{0, 1, 2}, {1, 0, 3}, {4, 5, 6}};
  CHECK(leading_principal_minors(m) == std::vector<Index>{0, -1, oracle::cofactor_det(full)});
}

TEST_CASE("spread identity") {
  CHECK(spread_identity_check(2, 2, {1, 1}) == true);
  CHECK(spread_identity_check(2, 2, {2, 0}) == true);
  CHECK_FALSE(spread_identity_check(2, 2, {1, 0}).has_value());
  CHECK_FALSE(spread_identity_check(3, 2, {2, 0, 2}).has_value());
  for (const auto& r : brute_force_maximize({3, 3, 3, 3, 3}).maximizers) {
    CHECK(spread_identity_check(4, 3, r) == true);
  }
  // Holds for any vector meeting the hypothesis, maximizer or not.
  oracle::for_each_candidate({4, 4, 4, 4, 4, 4, 4}, [](const oracle::Vec& r) {
    const auto verdict = spread_identity_check(6, 4, RankVector(r));
    if (verdict) CHECK(*verdict);
  });
}
