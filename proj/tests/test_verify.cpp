#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bcr/bcr.hpp"

using namespace bcr;

namespace {

CombinationNetwork ones(int K) {
  CombinationNetwork net(K);
  for (auto S : power_family(K)) net.set_capacity(S, 1);
  return net;
}

std::vector<std::pair<std::vector<Rational>, Rational>> rows_of(const NumericPolyhedron& p) {
  std::vector<std::pair<std::vector<Rational>, Rational>> out;
  for (auto& r : p.inequalities) out.emplace_back(r.a, r.b);
  return out;
}

RatePoint random_point(const MessageSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> half(0, 10);
  return make_rate_point(spec, ratio(half(rng), 2), ratio(half(rng), 2));
}

NumericPolyhedron subset(const NumericPolyhedron& sys, const std::vector<std::size_t>& rows) {
  NumericPolyhedron out;
  out.variables = sys.variables;
  out.equalities = sys.equalities;
  for (auto i : rows) out.inequalities.push_back(sys.inequalities[i]);
  return out;
}

}  // namespace

TEST_CASE("two-message capacity on a unit network", "[verify]") {
  const CapacityPolytope cap = missing_pair_capacity(ones(3));
  CHECK(cap.variables == std::vector<std::string>{"R_{12}", "R_{13}"});
  using V = std::vector<Rational>;
  const std::vector<std::pair<V, Rational>> want = {
      {{0, 1}, 4}, {{1, 0}, 4}, {{1, 1}, 4}, {{1, 1}, 6}, {{2, 2}, 11}, {{-1, 0}, 0}, {{0, -1}, 0}};
  CHECK(rows_of(cap) == want);
  CHECK(missing_pair_capacity(ones(3), true).inequalities.size() == want.size() + 2);
  CHECK_THROWS_AS(missing_pair_capacity(ones(2)), std::invalid_argument);
}

TEST_CASE("capacity regions lie inside the cut-set bound", "[verify][property]") {
  std::mt19937_64 rng(401);
  for (int K = 3; K <= 5; ++K)
    for (int n = 0; n < 10; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      for (auto kind : {ClosedForm::TwoOrderKMinus1, ClosedForm::OneCommon, ClosedForm::TwoCommon}) {
        const MessageSpec spec = closed_form_spec(kind, K);
        const auto cap = known_capacity(net, spec);
        REQUIRE(cap);
        CHECK(polytope_contains(cutset_bound(net, spec), *cap));
      }
    }
}

TEST_CASE("achievable regions lie inside the cut-set bound", "[verify][property]") {
  std::mt19937_64 rng(402);
  for (const char* text : {"1,23", "12,13", "1,123", "2,13", "12,123"}) {
    const MessageSpec spec = parse_message_spec(text, 3);
    const SymbolicPolyhedron sym = build_region(spec, make_expansion(spec, ExpansionKind::P));
    for (int n = 0; n < 8; ++n) {
      const CombinationNetwork net = random_network(3, rng);
      const NumericPolyhedron ach = achievable_polytope(sym, net, canonical_assignment(3));
      CHECK(polytope_contains(cutset_bound(net, spec), ach));
      if (auto cap = known_capacity(net, spec)) CHECK(polytope_contains(*cap, ach));
    }
  }
}

TEST_CASE("known capacity ignores message order", "[verify]") {
  const CombinationNetwork net = ones(3);
  const auto a = known_capacity(net, parse_message_spec("12,13", 3));
  const auto b = known_capacity(net, parse_message_spec("13,12", 3));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->source == "missing pair");
  CHECK(b->source == "missing pair");
  CHECK(known_capacity(net, parse_message_spec("1,123", 3))->source == "two common receivers");
  CHECK(known_capacity(net, parse_message_spec("12,123", 3))->source == "one common receiver");
  CHECK_FALSE(known_capacity(net, parse_message_spec("1,23", 3)));
  CHECK_THROWS_AS(known_capacity(ones(4), parse_message_spec("1,23", 3)), std::invalid_argument);
}

TEST_CASE("rate points parse as two nonnegative rationals", "[verify]") {
  const MessageSpec spec = parse_message_spec("1,23", 3);
  const RatePoint p = parse_rate_point(spec, "1/2,0.25");
  CHECK(p.values.at("R_{1}") == ratio(1, 2));
  CHECK(p.values.at("R_{23}") == ratio(1, 4));
  CHECK_THROWS_AS(parse_rate_point(spec, "1"), ParseError);
  CHECK_THROWS_AS(parse_rate_point(spec, "1,2,3"), ParseError);
  CHECK_THROWS_AS(parse_rate_point(spec, "1,-2"), ParseError);
  CHECK_THROWS_AS(parse_rate_point(spec, "1/2,x"), ParseError);
}

TEST_CASE("fixing variables moves them to the right-hand side", "[verify]") {
  NumericPolyhedron s;
  s.variables = {"a", "b", "c"};
  s.add_inequality({1, 2, 3}, 10, "r");
  s.add_equality({1, 0, -1}, 0, "e");
  const NumericPolyhedron f = fix_variables(s, {{"b", 2}});
  CHECK(f.variables == std::vector<std::string>{"a", "c"});
  CHECK(f.inequalities[0].a == std::vector<Rational>{1, 3});
  CHECK(f.inequalities[0].b == 6);
  CHECK(f.inequalities[0].label == "r");
  CHECK(f.equalities[0].a == std::vector<Rational>{1, -1});
}

TEST_CASE("verdicts carry valid witnesses or irreducible certificates", "[verify][property]") {
  std::mt19937_64 rng(403);
  int feasible = 0, infeasible = 0;
  for (const char* text : {"1,23", "12,13", "1,123"}) {
    const MessageSpec spec = parse_message_spec(text, 3);
    const SymbolicPolyhedron sym = build_region(spec, make_expansion(spec, ExpansionKind::P));
    for (int n = 0; n < 10; ++n) {
      const CombinationNetwork net = random_network(3, rng);
      const NumericPolyhedron full = instantiate(sym, net, canonical_assignment(3));
      const RatePoint rates = random_point(spec, rng);
      const FeasibilityVerdict v = decide(full, rates);
      const NumericPolyhedron rest = fix_variables(full, rates.values);
      if (v.feasible) {
        ++feasible;
        CHECK_FALSE(violated_row(full, rates, v.witness));
        continue;
      }
      ++infeasible;
      REQUIRE_FALSE(v.blocking_rows.empty());
      CHECK(v.blocking_labels.size() == v.blocking_rows.size());
      CHECK(is_empty(subset(rest, v.blocking_rows)));
      for (std::size_t k = 0; k < v.blocking_rows.size(); ++k) {
        auto fewer = v.blocking_rows;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(k));
        CHECK_FALSE(is_empty(subset(rest, fewer)));
      }
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("verdicts agree with the projected region", "[verify][property]") {
  std::mt19937_64 rng(404);
  const MessageSpec spec = parse_message_spec("1,23", 3);
  const SymbolicPolyhedron sym = build_region(spec, make_expansion(spec, ExpansionKind::P));
  for (int n = 0; n < 20; ++n) {
    const CombinationNetwork net = random_network(3, rng);
    const AuxAssignment asg = canonical_assignment(3);
    const NumericPolyhedron ach = achievable_polytope(sym, net, asg);
    const RatePoint rates = random_point(spec, rng);
    const Point x = {rates.values.at("R_{1}"), rates.values.at("R_{23}")};
    CHECK(check_rate_point(sym, net, asg, rates).feasible == satisfies(ach, x));
  }
}

TEST_CASE("nested feasibility system matches the generated region", "[verify][property]") {
  std::mt19937_64 rng(405);
  for (auto [K, text] : std::vector<std::pair<int, const char*>>{{3, "1,123"}, {3, "12,123"}, {4, "12,~"}}) {
    const MessageSpec spec = parse_message_spec(text, K);
    const SymbolicPolyhedron sym = build_region(spec, make_expansion(spec, ExpansionKind::P));
    const AuxAssignment asg = canonical_assignment(K);
    for (int n = 0; n < 8; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      const NumericPolyhedron full = nested_feasibility_system(net, spec);
      const NumericPolyhedron reduced = nested_feasibility_system(net, spec, GenerationMode::Reduced);
      const std::vector<std::string> keep = {full.variables[0], full.variables[1]};
      const NumericPolyhedron projected = fme_project(full, keep);
      CHECK(polytopes_equal(projected, fme_project(reduced, keep)));
      CHECK(polytopes_equal(projected, achievable_polytope(sym, net, asg)));
      const RatePoint rates = random_point(spec, rng);
      CHECK(nested_region_check(net, spec, rates).feasible == check_rate_point(sym, net, asg, rates).feasible);
    }
  }
  CHECK_THROWS_AS(nested_feasibility_system(ones(3), parse_message_spec("1,23", 3)), std::invalid_argument);
}
