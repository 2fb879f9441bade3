#include <doctest.h>

#include <cmath>
#include <random>

#include "support/generators.hpp"
#include "treeshift/snre.hpp"

using namespace treeshift;

namespace {

TreeShiftSpec doubling_spec() {
  return parse_spec(R"({"d":2, "alphabet":["a","b"],
    "allowed":[["a",["a","a"]],["a",["b","b"]],["b",["a","b"]],["b",["b","a"]]]})");
}

TreeShiftSpec bounded_spec() {
  // allowed(a) = {(a,b),(b,a)}, allowed(b) = {(b,b)}: a_n(a) = 2^n, a_n(b) = 1.
  return parse_spec(R"({"d":2, "alphabet":["a","b"],
    "allowed":[["a",["a","b"]],["a",["b","a"]],["b",["b","b"]]]})");
}

TreeShiftSpec full_shift(int symbols, int arity) {
  std::vector<std::string> names;
  for (int i = 0; i < symbols; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::vector<ChildTuple>> tables(static_cast<std::size_t>(symbols));
  for (auto& table : tables)
    for (std::uint64_t rank = 0; rank < tuple_count(symbols, arity); ++rank)
      table.push_back(tuple_from_index(rank, symbols, arity));
  return TreeShiftSpec(Alphabet(std::move(names)), arity, std::move(tables));
}

}  // namespace

TEST_SUITE("snre") {
  TEST_CASE("build_snre requires a pruned spec") {
    const auto unpruned =
        parse_spec(R"({"d":1, "alphabet":["a","b"], "allowed":[["a",["a"]]]})");
    CHECK_THROWS_AS(build_snre(unpruned), Error);
    const Snre snre = build_snre(doubling_spec());
    CHECK(snre.arity == 2);
    CHECK(snre.initial == std::vector<std::int64_t>{2, 2});
    CHECK(snre.terms[0] == std::vector<ChildTuple>{{0, 0}, {1, 1}});
    CHECK(snre.terms[1] == std::vector<ChildTuple>{{0, 1}, {1, 0}});
  }

  TEST_CASE("exact counts: doubling system") {
    const auto levels = evaluate_exact(build_snre(doubling_spec()), 3);
    CHECK(levels[0] == std::vector<mpz_class>{2, 2});
    CHECK(levels[1] == std::vector<mpz_class>{8, 8});
    CHECK(levels[2] == std::vector<mpz_class>{128, 128});
  }

  TEST_CASE("exact counts: full shift closed form") {
    // On the full shift, a_n = k^(d + d² + … + d^n); with k = d = 2 this is
    // a_n = 2^(2^(n+1) − 2).
    const auto levels = evaluate_exact(build_snre(full_shift(2, 2)), 3);
    CHECK(levels[0] == std::vector<mpz_class>{4, 4});
    CHECK(levels[1] == std::vector<mpz_class>{64, 64});
    CHECK(levels[2] == std::vector<mpz_class>{16384, 16384});
  }

  TEST_CASE("exact counts: bounded system stays put") {
    const auto levels = evaluate_exact(build_snre(bounded_spec()), 8);
    mpz_class expected = 2;
    for (const auto& level : levels) {
      CHECK(level[0] == expected);
      CHECK(level[1] == 1);
      expected *= 2;
    }
  }

  TEST_CASE("digit budget is enforced") {
    ExactEvalOptions tiny;
    tiny.digit_budget = 10;
    CHECK_THROWS_AS(evaluate_exact(build_snre(doubling_spec()), 10, tiny), Error);
    try {
      evaluate_exact(build_snre(doubling_spec()), 10, tiny);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Budget);
    }
  }

  TEST_CASE("log trajectories track exact ones") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
      const auto spec = testsupport::random_pruned_spec(rng, 2, 2 + i % 2);
      const Snre snre = build_snre(spec);
      const auto exact = evaluate_exact(snre, 6);
      const auto logs = evaluate_log(snre, 6);
      for (std::size_t n = 0; n < exact.size(); ++n)
        for (std::size_t s = 0; s < exact[n].size(); ++s) {
          const double reference = std::log(exact[n][s].get_d());
          CHECK(std::abs(logs[n][s] - reference) <= 1e-9 * std::max(1.0, reference));
        }
    }
  }

  TEST_CASE("indicator matrix round-trips and matches the doubling system") {
    const Snre snre = build_snre(doubling_spec());
    const IndicatorMatrix indicator = indicator_matrix(snre);
    CHECK(indicator.rows == 2);
    CHECK(indicator.cols == 4);
    const auto dense = indicator.to_dense();
    CHECK(dense[0] == std::vector<std::uint8_t>{1, 0, 0, 1});
    CHECK(dense[1] == std::vector<std::uint8_t>{0, 1, 1, 0});
    CHECK(terms_from_indicator(indicator) == snre.terms);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
      const Snre random = build_snre(testsupport::random_pruned_spec(rng, 2, 3));
      CHECK(terms_from_indicator(indicator_matrix(random)) == random.terms);
    }
  }

  TEST_CASE("estimator approaches ln 2 from below on the doubling system") {
    const auto estimate = entropy_estimate(build_snre(doubling_spec()), 40);
    CHECK(!estimate.degenerate);
    CHECK(estimate.values.size() == 40);
    const double tail = estimate.values.back();
    CHECK(std::abs(tail - std::log(2.0)) < 0.05);
    CHECK(std::is_sorted(estimate.values.begin(), estimate.values.end()));
    // Both normalizations agree in the tail.
    const auto sum_logs = entropy_estimate(build_snre(doubling_spec()), 40, EstimatorVariant::SumLogs);
    CHECK(std::abs(sum_logs.values.back() - std::log(2.0)) < 0.05);
  }

  TEST_CASE("estimator flags fully degenerate systems") {
    // Single symbol, single tuple: every count is 1 forever, ln ln 1 = ln 0.
    const auto spec = parse_spec(R"({"d":2, "alphabet":["a"], "allowed":[["a",["a","a"]]]})");
    const auto estimate = entropy_estimate(build_snre(spec), 10);
    CHECK(estimate.degenerate);
    CHECK(estimate.values.empty());
  }

  TEST_CASE("essential symbols are the ones whose counts leave 1") {
    const Snre bounded = build_snre(bounded_spec());
    CHECK(essential_symbols(bounded) == std::vector<bool>{true, false});
    const Snre doubling = build_snre(doubling_spec());
    CHECK(essential_symbols(doubling) == std::vector<bool>{true, true});

    // Property: essential(i) iff the exact count exceeds 1 by level k+2.
    std::mt19937_64 rng(47);
    for (int i = 0; i < 20; ++i) {
      const Snre snre = build_snre(testsupport::random_pruned_spec(rng, 2, 3, 0.25));
      const auto essential = essential_symbols(snre);
      const auto levels = evaluate_exact(snre, snre.symbol_count() + 2);
      for (int s = 0; s < snre.symbol_count(); ++s) {
        bool grew = false;
        for (const auto& level : levels) grew = grew || level[static_cast<std::size_t>(s)] > 1;
        CHECK(essential[static_cast<std::size_t>(s)] == grew);
      }
    }
  }

  TEST_CASE("brute force equals the recursion on random specs") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 10; ++i) {
      const auto spec = testsupport::random_pruned_spec(rng, 2, 2 + i % 2);
      const auto exact = evaluate_exact(build_snre(spec), 2);
      for (int height = 2; height <= 3; ++height) {
        const auto counts = brute_force_count(spec, height);
        const auto& level = exact[static_cast<std::size_t>(height - 2)];
        CHECK(counts == level);
      }
    }
  }

  TEST_CASE("brute force budget is enforced") {
    BruteForceOptions tiny;
    tiny.enumeration_budget = 10;
    CHECK_THROWS_AS(brute_force_count(doubling_spec(), 4, tiny), Error);
  }
}
