#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bcr/acceptance.hpp"
#include "bcr/projection.hpp"

using namespace bcr;

namespace {

NumericPolyhedron rows_of(std::vector<std::string> names,
                         std::initializer_list<std::pair<std::vector<Rational>, Rational>> rows) {
  NumericPolyhedron s;
  s.variables = std::move(names);
  for (auto& [a, b] : rows) s.add_inequality(a, b, "r" + std::to_string(s.inequalities.size()));
  return s;
}

Rational q(long p, long d = 1) { return ratio(p, d); }

// Unit square in x, y plus z tied below both.
NumericPolyhedron wedge() {
  return rows_of({"x", "y", "z"}, {{{1, 0, 0}, 1},
                                  {{0, 1, 0}, 1},
                                  {{-1, 0, 0}, 0},
                                  {{0, -1, 0}, 0},
                                  {{0, 0, -1}, 0},
                                  {{-1, 0, 1}, 0},
                                  {{0, -1, 1}, 0}});
}

}  // namespace

TEST_CASE("eliminating one variable of a hand system", "[projection]") {
  const NumericPolyhedron p = fme_eliminate(wedge(), "z");
  CHECK(p.variables == std::vector<std::string>{"x", "y"});
  const NumericPolyhedron square = rows_of({"x", "y"}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 0}, {{0, -1}, 0}});
  CHECK(polytopes_equal(p, square));
  CHECK(enumerate_vertices(p) == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("equalities substitute before pairing", "[projection]") {
  NumericPolyhedron s = rows_of({"x", "y"}, {{{-1, 0}, 0}, {{0, -1}, 0}});
  s.add_equality({1, 1}, 3);
  const NumericPolyhedron p = fme_project(s, {"x"});
  CHECK(enumerate_vertices(p) == std::vector<Point>{{0}, {3}});
}

TEST_CASE("elimination with and without the history rule agree", "[projection][property]") {
  std::mt19937_64 rng(201);
  for (int n = 0; n < 60; ++n) {
    const NumericPolyhedron s = acceptance::random_bounded_system(rng);
    const std::vector<std::size_t> drop = {0};
    const NumericPolyhedron with = fme_eliminate(s, drop, true), without = fme_eliminate(s, drop, false);
    CHECK(polytopes_equal(with, without));
    CHECK(with.inequalities.size() <= without.inequalities.size());
  }
}

TEST_CASE("projection matches vertex projection", "[projection][property]") {
  std::mt19937_64 rng(202);
  for (int n = 0; n < 40; ++n) {
    const NumericPolyhedron s = acceptance::random_bounded_system(rng);
    const std::vector<std::string> keep(s.variables.begin(), s.variables.begin() + 1 + n % (s.dim() - 1));
    CHECK(enumerate_vertices(remove_redundant(fme_project(s, keep))) ==
          enumerate_vertices(project_by_vertices(s, keep)));
  }
}

TEST_CASE("feasibility returns a witness or a blocking set", "[projection]") {
  SECTION("feasible") {
    const Feasibility f = solve_feasibility(wedge());
    REQUIRE(f.feasible);
    CHECK(satisfies(wedge(), f.witness));
    CHECK(f.witness == Point{0, 0, 0});
  }
  SECTION("witness leaves zero when zero is excluded") {
    const NumericPolyhedron s = rows_of({"x"}, {{{-1}, -2}, {{1}, 5}});
    const Feasibility f = solve_feasibility(s);
    REQUIRE(f.feasible);
    CHECK(f.witness == Point{2});
  }
  SECTION("infeasible") {
    NumericPolyhedron s = wedge();
    s.add_inequality({-1, -1, 0}, -3, "too far");
    const Feasibility f = solve_feasibility(s);
    REQUIRE_FALSE(f.feasible);
    CHECK(std::find(f.blocking.begin(), f.blocking.end(), 7) != f.blocking.end());
    NumericPolyhedron core;
    core.variables = s.variables;
    for (auto i : f.blocking) core.inequalities.push_back(s.inequalities[i]);
    CHECK(is_empty(core));
  }
}

TEST_CASE("maximize reports finite, unbounded and empty", "[projection]") {
  const Maximum m = maximize(wedge(), {q(1), q(1), q(1)});
  CHECK(m.kind == Maximum::Kind::Finite);
  CHECK(m.value == 3);
  CHECK(maximize(wedge(), {q(0), q(0), q(-1)}).value == 0);
  CHECK(maximize(rows_of({"x"}, {{{-1}, 0}}), {q(1)}).kind == Maximum::Kind::Unbounded);
  CHECK(maximize(rows_of({"x"}, {{{-1}, -2}, {{1}, 1}}), {q(1)}).kind == Maximum::Kind::Empty);
  CHECK(maximize(rows_of({"x", "y"}, {{{2, 0}, 1}, {{0, 3}, 1}, {{-1, 0}, 0}}), {q(1), q(0)}).value == q(1, 2));
}

TEST_CASE("redundancy removal is minimal", "[projection][property]") {
  std::mt19937_64 rng(203);
  for (int n = 0; n < 40; ++n) {
    const NumericPolyhedron s = acceptance::random_bounded_system(rng);
    const RedundancyReport rep = remove_redundant_report(s);
    CHECK(polytopes_equal(s, rep.result));
    CHECK(rep.removed.size() + rep.result.inequalities.size() == s.inequalities.size());
    // Dropping any surviving row changes the polytope.
    for (std::size_t i = 0; i < rep.result.inequalities.size(); ++i) {
      NumericPolyhedron less = rep.result;
      less.inequalities.erase(less.inequalities.begin() + static_cast<std::ptrdiff_t>(i));
      const Maximum m = maximize(less, rep.result.inequalities[i].a);
      CHECK((m.kind == Maximum::Kind::Unbounded || m.value > rep.result.inequalities[i].b));
    }
  }
}

TEST_CASE("redundancy removal drops later duplicates first", "[projection]") {
  const NumericPolyhedron s = rows_of({"x"}, {{{1}, 1}, {{-1}, 0}, {{1}, 1}, {{2}, 5}});
  const RedundancyReport rep = remove_redundant_report(s);
  CHECK(rep.removed == std::vector<std::size_t>{2, 3});
  CHECK(rep.result.inequalities.front().label == "r0");
}

TEST_CASE("vertex enumeration guards and unbounded input", "[projection]") {
  CHECK_THROWS_AS(enumerate_vertices(rows_of({"x"}, {{{-1}, 0}})), UnboundedError);
  CHECK(enumerate_vertices(rows_of({"x"}, {{{-1}, -2}, {{1}, 1}})).empty());
  NumericPolyhedron wide;
  for (int k = 0; k < 9; ++k) wide.variables.push_back("x" + std::to_string(k));
  CHECK_THROWS_AS(enumerate_vertices(wide), GuardError);
  NumericPolyhedron tall = rows_of({"x"}, {});
  for (int k = 0; k < 65; ++k) tall.add_inequality({q(1)}, q(k + 1));
  CHECK_THROWS_AS(enumerate_vertices(tall), GuardError);
}

TEST_CASE("hull of points", "[projection]") {
  const std::vector<std::string> xy = {"x", "y"};
  const std::vector<Point> tri = {{0, 0}, {2, 0}, {0, 2}, {1, 1}, {q(1, 2), q(1, 2)}};
  const NumericPolyhedron h = hull_of_points(xy, tri);
  CHECK(enumerate_vertices(h) == std::vector<Point>{{0, 0}, {0, 2}, {2, 0}});
  CHECK(satisfies(h, {q(1, 2), q(1)}));
  CHECK_FALSE(satisfies(h, {q(3, 2), q(1)}));

  const NumericPolyhedron seg = hull_of_points(xy, {{0, 0}, {2, 1}, {1, q(1, 2)}});
  CHECK(enumerate_vertices(seg) == std::vector<Point>{{0, 0}, {2, 1}});
  CHECK_FALSE(satisfies(seg, {1, 0}));

  CHECK(enumerate_vertices(hull_of_points(xy, {{3, 4}})) == std::vector<Point>{{3, 4}});
  CHECK(is_empty(hull_of_points(xy, {})));
}

TEST_CASE("containment and separating vertices", "[projection]") {
  const std::vector<std::string> xy = {"x", "y"};
  const NumericPolyhedron big = hull_of_points(xy, {{0, 0}, {2, 0}, {0, 2}});
  const NumericPolyhedron small = hull_of_points(xy, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(polytope_contains(big, small));
  CHECK_FALSE(polytope_contains(small, big));
  const auto sep = separating_vertex(big, small);
  REQUIRE(sep);
  CHECK_FALSE(satisfies(small, sep->vertex));
  CHECK_FALSE(separating_vertex(small, big));
  CHECK_THROWS_AS(polytope_contains(big, hull_of_points({"x", "z"}, {{0, 0}})), std::invalid_argument);
}

TEST_CASE("parallel rows merge to the tightest", "[projection]") {
  const NumericPolyhedron s = rows_of({"x", "y"}, {{{1, 1}, 3}, {{1, 0}, 2}, {{1, 1}, 2}, {{1, 1}, 5}});
  const NumericPolyhedron m = merge_parallel(s);
  REQUIRE(m.inequalities.size() == 2);
  CHECK(m.inequalities[0].b == 2);
  CHECK(m.inequalities[0].label == "r2");
  CHECK(m.inequalities[1].label == "r1");
}

TEST_CASE("rational helpers", "[projection]") {
  CHECK(ratio(3, 3) == 1);
  CHECK(ratio(2, 4).get_str() == "1/2");
  CHECK_THROWS_AS(ratio(1, 0), std::invalid_argument);
  CHECK(parse_rational("0.75") == ratio(3, 4));
  CHECK(parse_rational("-6/4") == ratio(-3, 2));
}
