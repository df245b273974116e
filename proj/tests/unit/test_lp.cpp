#include <doctest.h>

#include "cbd/decide.hpp"
#include "cbd/error.hpp"
#include "cbd/lp.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cbd;
using cbd::testing::corpus_system;
using cbd::testing::q;

namespace {

LpRow row(std::vector<std::pair<std::size_t, Rational>> entries, Rational rhs) {
  return {std::move(entries), std::move(rhs), RowKind::bunch, ""};
}

bool satisfies(const LpProblem& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& r : lp.rows) {
    Rational sum;
    for (const auto& [j, a] : r.entries) sum += a * x[j];
    if (sum != r.rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("solver on small problems") {
  LpProblem simple{2, {row({{0, 1}, {1, 1}}, 1), row({{0, 1}, {1, -1}}, 0)}};
  auto s = lp_feasible(simple);
  REQUIRE(s.feasible);
  CHECK(s.values == std::vector<Rational>{q("1/2"), q("1/2")});

  LpProblem clash{2, {row({{0, 1}, {1, 1}}, 1), row({{0, 1}, {1, 1}}, 2)}};
  auto c = lp_feasible(clash);
  CHECK_FALSE(c.feasible);
  CHECK(c.residual > 0);

  LpProblem negative{1, {row({{0, 1}}, -1)}};
  CHECK_FALSE(lp_feasible(negative).feasible);

  // presolve: x0 + x1 = 0 fixes both, leaving x2 = 1
  LpProblem fixed{3, {row({{0, 1}, {1, 1}}, 0), row({{0, 1}, {1, 1}, {2, 1}}, 1)}};
  auto f = lp_feasible(fixed);
  REQUIRE(f.feasible);
  CHECK(f.active_variables == 1);
  CHECK(f.values == std::vector<Rational>{0, 0, 1});

  LpProblem redundant{2, {row({{0, 1}, {1, 1}}, 1), row({{0, 2}, {1, 2}}, 2)}};
  CHECK(satisfies(redundant, lp_feasible(redundant).values));

  LpProblem empty{0, {}};
  CHECK(lp_feasible(empty).feasible);

  CHECK_THROWS_AS(lp_feasible(LpProblem{1, {row({{3, 1}}, 1)}}), Error);
}

TEST_CASE("solver agrees with vertex enumeration on random problems") {
  // A feasible basic solution exists iff some column subset solves the system
  // with nonnegative values.
  cbd::testing::Rng rng(41);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = cbd::testing::uniform(rng, 1, 5), m = cbd::testing::uniform(rng, 1, 4);
    LpProblem lp{n, {}};
    for (std::size_t i = 0; i < m; ++i) {
      LpRow r;
      for (std::size_t j = 0; j < n; ++j)
        if (auto a = static_cast<long>(cbd::testing::uniform(rng, 0, 4)) - 2; a != 0) r.entries.push_back({j, Rational(a)});
      r.rhs = Rational(static_cast<long>(cbd::testing::uniform(rng, 0, 4)) - 1);
      lp.rows.push_back(r);
    }
    bool exists = false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n) && !exists; ++mask) {
      // Gaussian elimination on the chosen columns, others at zero
      std::vector<std::vector<Rational>> a;
      for (const auto& r : lp.rows) {
        std::vector<Rational> line(n + 1);
        for (const auto& [j, v] : r.entries)
          if (mask >> j & 1) line[j] = v;
        line[n] = r.rhs;
        a.push_back(line);
      }
      std::size_t rank = 0;
      std::vector<std::size_t> pivot_of(n, SIZE_MAX);
      for (std::size_t j = 0; j < n && rank < a.size(); ++j) {
        std::size_t p = rank;
        while (p < a.size() && a[p][j] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = 0; i < a.size(); ++i)
          if (i != rank && a[i][j] != 0) {
            const Rational f = a[i][j] / a[rank][j];
            for (std::size_t k = 0; k <= n; ++k) a[i][k] -= f * a[rank][k];
          }
        pivot_of[j] = rank++;
      }
      bool consistent = true;
      for (std::size_t i = rank; i < a.size(); ++i) consistent = consistent && a[i][n] == 0;
      if (!consistent) continue;
      std::vector<Rational> x(n);
      for (std::size_t j = 0; j < n; ++j)
        if (pivot_of[j] != SIZE_MAX) x[j] = a[pivot_of[j]][n] / a[pivot_of[j]][j];
      exists = satisfies(lp, x);
    }
    auto s = lp_feasible(lp);
    CAPTURE(t);
    CHECK(s.feasible == exists);
    if (s.feasible) CHECK(satisfies(lp, s.values));
  }
}

TEST_CASE("PR box program") {
  auto pr = corpus_system("pr_box.json");
  auto built = build_feasibility_lp(pr, plan_full_categorical(pr));
  CHECK(built.atoms.size() == 4);
  CHECK(built.lp.variables == 4);
  CHECK(built.lp.count(RowKind::bunch) == 4);
  CHECK(built.lp.count(RowKind::multimaximal) == 2);
  auto s = lp_feasible(built.lp);
  CHECK_FALSE(s.feasible);
  CHECK(s.residual > 0);

  auto joint = build_feasibility_lp(pr, plan_full_categorical(pr), {MultimaxEncoding::min_joint, kDefaultMaxAtoms});
  CHECK(joint.lp.count(RowKind::multimaximal) == 2);
  CHECK_FALSE(lp_feasible(joint.lp).feasible);
}

TEST_CASE("single categorical connection program") {
  auto ex1 = corpus_system("three_values.json");
  auto built = build_feasibility_lp(ex1, plan_full_categorical(ex1));
  CHECK(built.atoms.size() == 8);
  CHECK(built.lp.count(RowKind::multimaximal) == 9);
  CHECK(built.atoms.decode(5) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("a single context is always feasible") {
  cbd::testing::Rng rng(2);
  cbd::testing::SystemShape shape{3, 1, 3, 3, ValueKind::categorical, false};
  for (int t = 0; t < 20; ++t) {
    auto s = cbd::testing::random_system(rng, shape);
    auto built = build_feasibility_lp(s, plan_full_categorical(s));
    CHECK(lp_feasible(built.lp).feasible);
  }
}

TEST_CASE("atom limit") {
  auto four = corpus_system("four_context.json");
  try {
    build_feasibility_lp(four, plan_full_categorical(four), {MultimaxEncoding::zero_mass, 3});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LpTooLarge);
  }
}
