#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bcr/bcr.hpp"

using namespace bcr;

namespace {

std::set<std::string> row_texts(const SymbolicPolyhedron& s) {
  std::set<std::string> out;
  for (auto& r : s.inequalities) out.insert(to_string(r));
  return out;
}

NumericPolyhedron projected(const SymbolicPolyhedron& sym, const CombinationNetwork& net, const AuxAssignment& asg) {
  return achievable_polytope(sym, net, asg);
}

const std::vector<std::pair<int, const char*>> kSpecs = {
    {3, "1,23"}, {3, "12,13"}, {3, "1,123"}, {3, "12,~"}, {3, "2,13"},
    {4, "12,~"}, {4, "1,~"},   {4, "~4,~3"}, {4, "12,34"}, {4, "123,~"},
};

}  // namespace

TEST_CASE("atoms print in complement form", "[regions]") {
  const SetFamily W1 = messages_for_receiver(power_family(3), 1);
  const auto a = MutualInfoAtom::within(1, W1, SetFamily(3, {ReceiverSet{1}, ReceiverSet{1, 2}}));
  CHECK(to_string(a) == "I(U_{1,12};Y_1|U_{13,123})");
  CHECK(to_string(MutualInfoAtom::within(1, W1, W1)) == "I(U_{1,12,13,123};Y_1)");
  CHECK_THROWS_AS(MutualInfoAtom::within(1, W1, SetFamily(3, {ReceiverSet{2}})), std::invalid_argument);
}

TEST_CASE("atom sums compare termwise", "[regions]") {
  const SetFamily W1 = messages_for_receiver(power_family(3), 1);
  const auto x = MutualInfoAtom::within(1, W1, W1);
  const auto y = MutualInfoAtom::within(1, W1, SetFamily(3, {ReceiverSet{1}}));
  AtomSum a(x), b(x);
  b.add(y, 1);
  CHECK(never_exceeds(a, b));
  CHECK_FALSE(never_exceeds(b, a));
  CHECK(never_exceeds(AtomSum(Rational(-1)), AtomSum()));
  const std::string text = to_string(b + AtomSum(Rational(2)));
  CHECK(text.find("I(U_{1};Y_1|U_{12,13,123})") != std::string::npos);
  CHECK(text.ends_with(" + 2"));
}

TEST_CASE("non-unique decoding keeps eleven rows for messages 1 and 23", "[regions]") {
  const MessageSpec spec = parse_message_spec("1,23", 3);
  const SymbolicPolyhedron sys = build_general_region(spec, make_expansion(spec, ExpansionKind::P));
  CHECK(sys.variables.size() == 8);
  CHECK(sys.equalities.size() == 2);
  REQUIRE(sys.inequalities.size() == 11);
  std::map<int, int> per_receiver;
  for (auto& r : sys.inequalities) ++per_receiver[r.rhs.terms().begin()->first.receiver];
  CHECK(per_receiver == std::map<int, int>{{1, 5}, {2, 3}, {3, 3}});
  const auto texts = row_texts(sys);
  CHECK(texts.contains("R_{1->1} <= I(U_{1};Y_1|U_{12,13,123})"));
  CHECK(texts.contains("R_{23->23} <= I(U_{2,23};Y_2|U_{12,123})"));
  CHECK_FALSE(texts.contains("R_{1->12} <= I(U_{2,12};Y_2|U_{23,123})"));
}

TEST_CASE("nested construction needs a message for every receiver", "[regions]") {
  const MessageSpec spec = parse_message_spec("1,12", 3);
  CHECK_THROWS_AS(build_nested_region(spec, make_expansion(spec, ExpansionKind::P)), std::invalid_argument);
  CHECK_FALSE(nested_applies(spec));
  CHECK(nested_applies(parse_message_spec("1,123", 3)));
}

TEST_CASE("reduced generation keeps a subset of rows with the same polytope", "[regions][property]") {
  std::mt19937_64 rng(101);
  for (auto& [K, text] : kSpecs) {
    const MessageSpec spec = parse_message_spec(text, K);
    const Expansion F = make_expansion(spec, ExpansionKind::P);
    const SymbolicPolyhedron full = build_region(spec, F, GenerationMode::Full);
    const SymbolicPolyhedron reduced = build_region(spec, F, GenerationMode::Reduced);
    const auto all = row_texts(full);
    for (auto& t : row_texts(reduced)) CHECK(all.contains(t));
    CHECK(reduced.inequalities.size() <= full.inequalities.size());
    const AuxAssignment asg = canonical_assignment(K);
    for (int n = 0; n < 4; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      CHECK(polytopes_equal(projected(full, net, asg), projected(reduced, net, asg)));
    }
  }
}

TEST_CASE("general and nested constructions agree on nested messages", "[regions][property]") {
  std::mt19937_64 rng(102);
  for (auto [K, text] : std::vector<std::pair<int, const char*>>{{3, "1,123"}, {3, "12,~"}, {4, "1,~"}}) {
    const MessageSpec spec = parse_message_spec(text, K);
    const Expansion F = make_expansion(spec, ExpansionKind::P);
    const SymbolicPolyhedron general = build_general_region(spec, F), nested = build_nested_region(spec, F);
    const AuxAssignment asg = canonical_assignment(K);
    for (int n = 0; n < 5; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      CHECK(polytopes_equal(projected(general, net, asg), projected(nested, net, asg)));
    }
  }
}

TEST_CASE("a larger expansion never shrinks the canonical region", "[regions][property]") {
  std::mt19937_64 rng(103);
  for (auto& [K, text] : kSpecs) {
    if (K > 3) continue;
    const MessageSpec spec = parse_message_spec(text, K);
    const AuxAssignment asg = canonical_assignment(K);
    const SymbolicPolyhedron small = build_region(spec, make_expansion(spec, ExpansionKind::E));
    const SymbolicPolyhedron large = build_region(spec, make_expansion(spec, ExpansionKind::P));
    for (int n = 0; n < 5; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      CHECK(polytope_contains(projected(large, net, asg), projected(small, net, asg)));
    }
  }
}

TEST_CASE("symbolic elimination commutes with instantiation", "[regions][projection][property]") {
  std::mt19937_64 rng(104);
  for (auto [K, text] : std::vector<std::pair<int, const char*>>{{3, "1,23"}, {3, "1,123"}, {3, "12,13"}}) {
    const MessageSpec spec = parse_message_spec(text, K);
    const SymbolicPolyhedron sym = build_region(spec, make_expansion(spec, ExpansionKind::P));
    SymbolicRows rows = to_rows(sym);
    add_nonnegativity(rows);
    const std::vector<std::string> keep = {rows.variables[0], rows.variables[1]};
    const SymbolicRows eliminated = fme_project(rows, keep);
    const AuxAssignment asg = canonical_assignment(K);
    for (int n = 0; n < 5; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      const NumericPolyhedron late =
          instantiate_rows(eliminated, [&](const MutualInfoAtom& a) { return evaluate_atom(net, asg, a); });
      const NumericPolyhedron early = fme_project(instantiate(sym, net, asg), keep);
      CHECK(polytopes_equal(late, early));
    }
  }
}

TEST_CASE("literal closed-form regions have the expected shape", "[regions]") {
  const SymbolicPolyhedron two = closed_form_region(ClosedForm::TwoOrderKMinus1, 3);
  CHECK(two.variables.size() == 2);
  CHECK(two.inequalities.size() == 8);
  const SymbolicPolyhedron one = closed_form_region(ClosedForm::OneCommon, 4);
  CHECK(one.inequalities.size() == 7);
  const SymbolicPolyhedron three = closed_form_region(ClosedForm::ThreeCommon, 6);
  CHECK(three.variables.size() == 10);
  CHECK(three.equalities.size() == 1);
  CHECK(three.inequalities.size() == 3 + 18 * 3 + 3);
  CHECK(to_string(closed_form_spec(ClosedForm::TwoCommon, 4).E()) == "{12,1234}");
  CHECK_THROWS_AS(closed_form_spec(ClosedForm::ThreeCommon, 3), std::invalid_argument);
}

TEST_CASE("row labels are unique", "[regions]") {
  for (auto& [K, text] : kSpecs) {
    const MessageSpec spec = parse_message_spec(text, K);
    const SymbolicPolyhedron sys = build_region(spec, make_expansion(spec, ExpansionKind::P));
    std::set<std::string> labels;
    for (auto& r : sys.inequalities) labels.insert(r.label);
    CHECK(labels.size() == sys.inequalities.size());
  }
}
