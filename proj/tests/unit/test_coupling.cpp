#include <doctest.h>

#include "cbd/coupling.hpp"
#include "cbd/error.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cbd;
using cbd::testing::q;

namespace {

Coupling table(std::vector<std::pair<std::vector<std::size_t>, const char*>> rows) {
  Coupling c;
  for (std::size_t i = 0; i < rows.front().first.size(); ++i) c.variables.push_back(std::to_string(i));
  for (auto& [values, p] : rows) c.atoms.push_back({values, q(p)});
  return canonical(std::move(c));
}

// a..d as 0..3
Coupling four_letters_coupling() {
  return table({{{0, 1, 1}, "1/10"}, {{0, 1, 0}, "1/10"}, {{0, 1, 2}, "1/10"}, {{0, 1, 3}, "1/10"},
                {{0, 2, 2}, "1/10"}, {{0, 3, 3}, "1/10"}, {{0, 0, 0}, "1/10"}, {{1, 1, 1}, "1/10"},
                {{2, 2, 2}, "1/10"}, {{3, 3, 3}, "1/10"}});
}

}  // namespace

TEST_CASE("staircase coupling") {
  std::vector<Rational> ps{q("3/5"), q("1/2"), q("1/5")};
  auto c = multimaximal_binary(ps);
  CHECK(c == table({{{0, 0, 0}, "2/5"}, {{1, 0, 0}, "1/10"}, {{1, 1, 0}, "3/10"}, {{1, 1, 1}, "1/5"}}));
  CHECK(c.total_mass() == 1);
  CHECK(check_multimaximal_binary(c).ok());

  std::vector<Rational> same{q("1/3"), q("1/3")};
  CHECK(multimaximal_binary(same) == table({{{0, 0}, "2/3"}, {{1, 1}, "1/3"}}));

  std::vector<Rational> ends{1, 0};
  CHECK(multimaximal_binary(ends) == table({{{1, 0}, "1"}}));

  std::vector<Rational> bad{q("3/2")};
  CHECK_THROWS_AS(multimaximal_binary(bad), Error);
}

TEST_CASE("staircase coupling is the LP-unique maximizer for three variables") {
  // Oracle: every coupling of (3/5, 1/2, 1/5) that reaches all three pairwise
  // maxima. Atoms indexed by bits (x0 x1 x2); marginal rows and the three
  // "both = min" rows leave one free direction that nonnegativity kills.
  // Pr[x0=x1=1] = 1/2, Pr[x0=x2=1] = 1/5, Pr[x1=x2=1] = 1/5 force
  // (1,1,1) = 1/5, (1,1,0) = 3/10, (1,0,1) = (0,1,1) = 0, (0,1,0) = 0,
  // (1,0,0) = 1/10, (0,0,1) = 0, (0,0,0) = 2/5.
  std::vector<Rational> ps{q("3/5"), q("1/2"), q("1/5")};
  CHECK(multimaximal_binary(ps).atoms.size() == 4);
}

TEST_CASE("multimaximality violations") {
  CHECK_FALSE(check_multimaximal_binary(table({{{0, 0}, "1/4"}, {{0, 1}, "1/4"}, {{1, 0}, "1/4"}, {{1, 1}, "1/4"}})).ok());

  // Same marginals as the staircase for (3/5, 1/2, 1/5), with 1/10 moved off
  // (1,1,0) and (0,0,0) onto (1,0,0) and (0,1,0).
  auto moved = table({{{0, 0, 0}, "3/10"}, {{0, 1, 0}, "1/10"}, {{1, 0, 0}, "1/5"}, {{1, 1, 0}, "1/5"}, {{1, 1, 1}, "1/5"}});
  CHECK(moved.marginal(0, 2) == Pmf{q("2/5"), q("3/5")});
  CHECK(moved.marginal(1, 2) == Pmf{q("1/2"), q("1/2")});
  auto check = check_multimaximal_binary(moved);
  REQUIRE_FALSE(check.ok());
  CHECK(check.violation->i == 0);
  CHECK(check.violation->j == 1);

  CHECK_THROWS_AS(check_multimaximal_binary(table({{{2, 0}, "1"}})), Error);
}

TEST_CASE("random staircases pass") {
  cbd::testing::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<Rational> ps;
    for (std::size_t i = cbd::testing::uniform(rng, 1, 6); i > 0; --i) ps.push_back(cbd::testing::random_pmf(rng, 2, 2)[1]);
    auto c = multimaximal_binary(ps);
    CHECK(check_multimaximal_binary(c).ok());
    std::vector<Pmf> marginals;
    for (auto& p : ps) marginals.push_back({1 - p, p});
    CHECK(is_coupling_of(c, marginals));
  }
}

TEST_CASE("quantile coupling") {
  std::vector<CdfTable> same{CdfTable::from_pmf({q("1/3"), q("2/3")}), CdfTable::from_pmf({q("1/3"), q("2/3")})};
  CHECK(quantile_coupling(same) == table({{{0, 0}, "1/3"}, {{1, 1}, "2/3"}}));

  std::vector<CdfTable> ex1{CdfTable::from_pmf({q("1/2"), q("1/2"), 0}), CdfTable::from_pmf({0, q("1/2"), q("1/2")}),
                            CdfTable::from_pmf({q("1/2"), 0, q("1/2")})};
  CHECK(quantile_coupling(ex1) == table({{{0, 1, 0}, "1/2"}, {{1, 2, 2}, "1/2"}}));

  std::vector<CdfTable> breaks{CdfTable::from_pmf({q("1/4"), q("3/4")}), CdfTable::from_pmf({q("1/2"), q("1/2")})};
  auto c = quantile_coupling(breaks);
  REQUIRE(c.atoms.size() == 3);
  std::vector<Rational> masses;
  for (auto& a : c.atoms) masses.push_back(a.probability);
  std::sort(masses.begin(), masses.end());
  CHECK(masses == std::vector<Rational>{q("1/4"), q("1/4"), q("1/2")});
}

TEST_CASE("forbidden region") {
  auto f = CdfTable::from_pmf({q("1/3"), q("2/3")});
  CHECK(forbidden_region_check(f, f, table({{{0, 0}, "1/3"}, {{1, 1}, "2/3"}})).ok());

  cbd::testing::Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    auto a = CdfTable::from_pmf(cbd::testing::random_pmf(rng, 5, 5));
    auto b = CdfTable::from_pmf(cbd::testing::random_pmf(rng, 5, 5));
    std::vector<CdfTable> pair{a, b};
    CHECK(forbidden_region_check(a, b, quantile_coupling(pair)).ok());
  }

  // independent coupling of (1/2,1/2) and (1/4,3/4)
  auto g = CdfTable::from_pmf({q("1/2"), q("1/2")}), h = CdfTable::from_pmf({q("1/4"), q("3/4")});
  auto independent = table({{{0, 0}, "1/8"}, {{0, 1}, "3/8"}, {{1, 0}, "1/8"}, {{1, 1}, "3/8"}});
  CHECK_FALSE(forbidden_region_check(g, h, independent).ok());

  CHECK_THROWS_AS(forbidden_region_check(g, g, independent), Error);
}

TEST_CASE("chain scan over categorical couplings") {
  CHECK(check_categorical_splits_multimax(four_letters_coupling()).ok());
  CHECK_FALSE(check_categorical_splits_multimax(table({{{0, 1}, "1/2"}, {{1, 0}, "1/2"}})).ok());
  CHECK(check_categorical_splits_multimax(table({{{0, 2, 1}, "1"}})).ok());
}

TEST_CASE("chain scan agrees with the split check") {
  // Oracle: push the coupling through every dichotomy and test maximality of
  // each indicator pair directly.
  cbd::testing::Rng rng(23);
  for (int t = 0; t < 150; ++t) {
    const std::size_t k = cbd::testing::uniform(rng, 3, 4), n = cbd::testing::uniform(rng, 2, 3);
    std::vector<Pmf> marginals;
    for (std::size_t i = 0; i < n; ++i) marginals.push_back(cbd::testing::random_pmf(rng, k, 3));
    auto c = cbd::testing::random_coupling(rng, marginals);
    bool direct = true;
    for (std::uint64_t r = 0; r + 1 < (std::uint64_t{1} << (k - 1)); ++r) {
      const LabelSet a{(r << 1) | 1u};
      std::vector<LabelSet> subsets(n, a);
      direct = direct && check_multimaximal_binary(indicator_coupling(c, subsets)).ok();
    }
    CHECK(check_categorical_splits_multimax(c).ok() == direct);
  }
}

TEST_CASE("nested events coupling") {
  // (1/2,1/4,1/4) -> (1/4,3/8,3/8): values 2 and 3 grow, value 1 shrinks
  std::vector<Pmf> pair{{q("1/2"), q("1/4"), q("1/4")}, {q("1/4"), q("3/8"), q("3/8")}};
  auto c = nested_events_coupling(pair, 0);
  CHECK(is_coupling_of(c, pair));
  CHECK(check_categorical_splits_multimax(c).ok());

  std::vector<Pmf> same{{q("1/5"), q("4/5")}, {q("1/5"), q("4/5")}};
  CHECK(nested_events_coupling(same, 0) == table({{{0, 0}, "1/5"}, {{1, 1}, "4/5"}}));

  std::vector<Pmf> ex2{{q("7/10"), q("1/10"), q("1/10"), q("1/10")},
                       {q("1/10"), q("1/2"), q("1/5"), q("1/5")},
                       {q("1/5"), q("1/5"), q("3/10"), q("3/10")}};
  for (std::size_t star = 0; star < 4; ++star) CHECK_THROWS_AS(nested_events_coupling(ex2, star), Error);

  std::vector<Pmf> mismatched{{q("1")}, {q("1/2"), q("1/2")}};
  CHECK_THROWS_AS(nested_events_coupling(mismatched, 0), Error);
}

TEST_CASE("projections and indicators") {
  auto c = four_letters_coupling();
  std::vector<std::size_t> keep{0};
  CHECK(c.project(keep).marginal(0, 4) == Pmf{q("7/10"), q("1/10"), q("1/10"), q("1/10")});
  std::vector<Pmf> ex2{{q("7/10"), q("1/10"), q("1/10"), q("1/10")},
                       {q("1/10"), q("1/2"), q("1/5"), q("1/5")},
                       {q("1/5"), q("1/5"), q("3/10"), q("3/10")}};
  CHECK(is_coupling_of(c, ex2));
}
