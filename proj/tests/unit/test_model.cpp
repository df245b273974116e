#include <doctest.h>

#include "cbd/error.hpp"
#include "cbd/model.hpp"
#include "fixtures.hpp"

using namespace cbd;
using cbd::testing::corpus_system;
using cbd::testing::q;

namespace {

ErrorCode code_of(const SystemSpec& spec) {
  try {
    validate_system(spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("validated");
  return ErrorCode::ParseError;
}

SystemSpec binary_single(std::vector<AtomSpec> atoms) {
  return {{{"x", {{"0", "1"}, ValueKind::categorical, std::nullopt}}}, {{"c", {"x"}, std::move(atoms)}}};
}

}  // namespace

TEST_CASE("validation accepts the corpus systems") {
  auto pr = corpus_system("pr_box.json");
  CHECK(pr.contents().size() == 2);
  CHECK(pr.contexts().size() == 2);
  auto ex2 = corpus_system("four_letters.json");
  CHECK(ex2.contexts().size() == 3);
  CHECK(ex2.marginal(0, 1) == Pmf{q("1/10"), q("1/2"), q("1/5"), q("1/5")});
}

TEST_CASE("validation errors") {
  CHECK(code_of(binary_single({{{"1"}, q("1/2")}})) == ErrorCode::NonUnitMass);
  CHECK(code_of(binary_single({{{"1"}, q("3/2")}, {{"0"}, q("-1/2")}})) == ErrorCode::NegativeProbability);
  CHECK(code_of(binary_single({{{"2"}, q("1")}})) == ErrorCode::UnknownLabel);
  CHECK(code_of(binary_single({{{"1"}, q("1/2")}, {{"1"}, q("1/2")}})) == ErrorCode::DuplicateAtom);
  CHECK(code_of(binary_single({{{"1", "0"}, q("1")}})) == ErrorCode::MalformedAtom);

  SystemSpec unknown = binary_single({{{"1"}, q("1")}});
  unknown.contexts[0].measures = {"y"};
  CHECK(code_of(unknown) == ErrorCode::UnknownContent);

  SystemSpec empty = binary_single({{{"1"}, q("1")}});
  empty.contexts.clear();
  CHECK(code_of(empty) == ErrorCode::EmptyFormat);

  SystemSpec twice = binary_single({{{"1"}, q("1")}});
  twice.contexts.push_back(twice.contexts[0]);
  CHECK(code_of(twice) == ErrorCode::DuplicateId);

  SystemSpec nolabels = binary_single({});
  nolabels.contents[0].space.labels.clear();
  CHECK(code_of(nolabels) == ErrorCode::InvalidValueSpace);
}

TEST_CASE("error location names the context") {
  try {
    validate_system(binary_single({{{"1"}, q("9/10")}}));
  } catch (const Error& e) {
    CHECK(e.where() == "context c");
  }
}

TEST_CASE("zero atoms are dropped and bunches canonicalized") {
  auto s = validate_system(binary_single({{{"1"}, q("1")}, {{"0"}, q("0")}}));
  REQUIRE(s.context(0).atoms.size() == 1);
  CHECK(s.context(0).atoms[0].values == std::vector<std::size_t>{1});
}

TEST_CASE("connections") {
  auto pr = corpus_system("pr_box.json");
  auto view = connection(pr, "1");
  REQUIRE(view.marginals.size() == 2);
  for (const auto& [c, pmf] : view.marginals) CHECK(pmf == Pmf{q("1/2"), q("1/2")});

  auto fv = corpus_system("four_valued.json");
  auto v1 = connection(fv, "1");
  CHECK(v1.marginals[0].second == Pmf{q("1/2"), 0, q("1/2"), 0});
  CHECK(v1.marginals[1].second == Pmf{0, q("1/2"), 0, q("1/2")});

  auto single = validate_system(binary_single({{{"1"}, q("1")}}));
  CHECK(connection(single, 0).marginals.size() == 1);
}

TEST_CASE("consistent connectedness") {
  CHECK(is_consistently_connected(corpus_system("pr_box.json")).consistent);
  auto report = is_consistently_connected(corpus_system("four_valued.json"));
  REQUIRE_FALSE(report.consistent);
  CHECK(report.witness->content == 0);
  CHECK(report.witness->context_a == 0);
  CHECK(report.witness->context_b == 1);
  CHECK(is_consistently_connected(validate_system(binary_single({{{"1"}, q("1")}}))).consistent);
}

TEST_CASE("strong consistency") {
  auto pr = corpus_system("pr_box.json");
  auto report = is_strongly_consistent(pr);
  CHECK_FALSE(report.strong);
  CHECK(report.witness == std::pair<std::size_t, std::size_t>{0, 1});

  // Both orders of two questions with the same joint.
  auto spec = pr.to_spec();
  spec.contexts[1].atoms = spec.contexts[0].atoms;
  CHECK(is_strongly_consistent(validate_system(spec)).strong);

  // No shared contents.
  SystemSpec disjoint{{{"a", {{"0", "1"}, ValueKind::categorical, std::nullopt}},
                       {"b", {{"0", "1"}, ValueKind::categorical, std::nullopt}}},
                      {{"1", {"a"}, {{{"0"}, q("1")}}}, {"2", {"b"}, {{{"1"}, q("1")}}}}};
  CHECK(is_strongly_consistent(validate_system(disjoint)).strong);
}

TEST_CASE("coarse-graining the four-valued system gives the PR box") {
  auto fv = corpus_system("four_valued.json");
  ValueSpace binary{{"0", "1"}, ValueKind::categorical, std::nullopt};
  // 1,2 -> 1 and 3,4 -> 0
  CoarseGrainingMap f{{0, binary, {1, 1, 0, 0}}, {1, binary, {1, 1, 0, 0}}};
  auto coarse = coarse_grain(fv, f);
  CHECK(coarse.contexts() == corpus_system("pr_box.json").contexts());

  CoarseGrainingMap identity{{0, fv.content(0).space, {0, 1, 2, 3}}};
  CHECK(coarse_grain(fv, identity) == fv);

  ValueSpace one{{"*"}, ValueKind::categorical, std::nullopt};
  auto constant = coarse_grain(fv, {{0, one, {0, 0, 0, 0}}});
  CHECK(constant.marginal(0, 0) == Pmf{1});

  try {
    coarse_grain(fv, {{0, binary, {0, 0, 0, 0}}});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSurjective);
  }
}

TEST_CASE("deterministic variables round-trip") {
  SystemSpec spec{{{"1", {{"0", "1"}, ValueKind::categorical, std::nullopt}},
                   {"2", {{"0", "1"}, ValueKind::categorical, std::nullopt}}},
                  {{"1", {"1", "2"}, {{{"0", "0"}, q("1/2")}, {{"1", "1"}, q("1/2")}}},
                   {"2", {"1", "2"}, {{{"0", "1"}, q("1")}}},
                   {"3", {"1"}, {{{"1"}, q("1")}}}}};
  auto s = validate_system(spec);
  auto added = add_deterministic(s, 1, 2, 1);
  CHECK(added.marginal(1, 2) == Pmf{0, 1});
  CHECK(added.context(2).measured == std::vector<std::size_t>{0, 1});
  CHECK(drop_variable(added, 1, 2) == s);

  try {
    add_deterministic(s, 0, 0, 1);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlreadyMeasured);
  }
  try {
    drop_variable(s, 1, 2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMeasured);
  }
}

TEST_CASE("subsystems") {
  auto four = corpus_system("four_context.json");
  std::vector<Variable> keep{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto sub = subsystem(four, keep);
  CHECK(sub.contexts() == corpus_system("pr_box.json").contexts());

  CHECK(subsystem(four, four.variables()) == four);

  auto one = subsystem(four, {{1, 1}});
  REQUIRE(one.contexts().size() == 1);
  CHECK(one.marginal(1, 0) == four.marginal(1, 1));
}
