#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "bcr/messages.hpp"

using namespace bcr;

namespace {

ReceiverSet rs(const char* s, int K) { return parse_receiver_set(s, K); }

}  // namespace

TEST_CASE("message sets split receivers into private and common groups", "[messages]") {
  const MessageSpec a(3, ReceiverSet{1}, ReceiverSet{2, 3});
  CHECK(a.private_receivers().empty());
  CHECK(a.common1() == ReceiverSet{1});
  CHECK(a.common2() == ReceiverSet{2, 3});
  CHECK_FALSE(a.nested());

  const MessageSpec b = parse_message_spec("12,~", 4);
  CHECK(b.S2() == full_set(4));
  CHECK(b.private_receivers() == ReceiverSet{1, 2});
  CHECK(b.common2() == ReceiverSet{3, 4});
  CHECK(b.nested());

  const MessageSpec c = parse_message_spec("~3,~2", 3);
  CHECK(c.S1() == ReceiverSet{1, 2});
  CHECK(c.S2() == ReceiverSet{1, 3});
  CHECK(c.to_string() == "{12,13}");

  CHECK_THROWS_AS(parse_message_spec("12", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_message_spec("1,2,3", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_message_spec("12,12", 3), std::invalid_argument);
  CHECK(parse_message_spec("{1,2},{1,2,10}", 10).S2() == ReceiverSet{1, 2, 10});
}

TEST_CASE("rate variable names", "[messages]") {
  CHECK(RateVariable::message(ReceiverSet{1, 2}, 3).name() == "R_{12}");
  CHECK(RateVariable::split(ReceiverSet{1}, ReceiverSet{1, 3}, 3).name() == "R_{1->13}");
  CHECK(RateVariable::reconstruction(ReceiverSet{2, 3}, 3).name() == "Rh_{23}");
}

TEST_CASE("linear forms drop cancelled terms", "[messages]") {
  const auto x = RateVariable::message(ReceiverSet{1}, 2), y = RateVariable::message(ReceiverSet{2}, 2);
  LinearForm f(x, 2);
  f.add(y, 1);
  f.add(x, -2);
  CHECK(f.terms().size() == 1);
  CHECK(f.coefficient(x) == 0);
  CHECK(f.coefficient(y) == 1);
  CHECK(to_string(f.scaled(Rational(-1, 2))) == "-1/2R_{2}");
  f -= LinearForm(y);
  CHECK(f.is_zero());
}

TEST_CASE("expansions between E and P", "[messages]") {
  const MessageSpec spec = parse_message_spec("1,123", 3);
  auto names = [](const Expansion& F) {
    std::vector<std::string> out;
    for (auto S : F.family()) out.push_back(to_string(S, 3));
    return out;
  };
  CHECK(names(make_expansion(spec, ExpansionKind::E)) == std::vector<std::string>{"1", "123"});
  CHECK(names(make_expansion(spec, ExpansionKind::UpE)) == std::vector<std::string>{"1", "12", "13", "123"});
  CHECK(make_expansion(spec, ExpansionKind::P).family().size() == 7);

  const MessageSpec two = parse_message_spec("12,13", 3);
  CHECK(names(make_expansion(two, ExpansionKind::UpEPlusPrivate)) ==
        std::vector<std::string>{"1", "12", "13", "123"});
  CHECK_THROWS_AS(make_expansion(parse_message_spec("1,23", 3), ExpansionKind::UpEPlusPrivate),
                  std::invalid_argument);
  CHECK_THROWS_AS(Expansion(spec, SetFamily(3, {ReceiverSet{1}})), std::invalid_argument);

  CHECK(expansions_count(spec) == 32);
  CHECK(expansions_count(parse_message_spec("1,2", 4)) == 8192);
}

TEST_CASE("up-set splitting for two groupcast messages", "[messages]") {
  const int K = 3;
  const MessageSpec spec = parse_message_spec("1,23", K);
  const Expansion F = make_expansion(spec, ExpansionKind::P);
  const auto splits = split_variables(spec, F);
  std::vector<std::string> names;
  for (auto& v : splits) names.push_back(v.name());
  CHECK(names == std::vector<std::string>{"R_{1->1}", "R_{1->12}", "R_{1->13}", "R_{1->123}", "R_{23->23}",
                                          "R_{23->123}"});

  const auto eq = split_equalities(spec, F);
  REQUIRE(eq.size() == 2);
  CHECK(to_string(eq[1]) == "R_{23} - R_{23->23} - R_{23->123}");

  CHECK(reconstruction_rate(spec, F, rs("2", K)).is_zero());
  CHECK(reconstruction_rate(spec, F, rs("3", K)).is_zero());
  CHECK(to_string(reconstruction_rate(spec, F, rs("1", K))) == "R_{1->1}");
  CHECK(to_string(reconstruction_rate(spec, F, rs("123", K))) == "R_{1->123} + R_{23->123}");
}

TEST_CASE("every split rate lands in exactly one reconstruction rate", "[messages][property]") {
  for (int K = 2; K <= 4; ++K) {
    const SetFamily P = power_family(K);
    for (auto S1 : P)
      for (auto S2 : P) {
        if (!(S1 < S2)) continue;
        const MessageSpec spec(K, S1, S2);
        for (auto kind : {ExpansionKind::E, ExpansionKind::UpE, ExpansionKind::P}) {
          const Expansion F = make_expansion(spec, kind);
          std::map<RateVariable, int> seen;
          for (auto T : F.family()) {
            const LinearForm rate = reconstruction_rate(spec, F, T);
            for (auto& [v, c] : rate.terms()) {
              CHECK(c == 1);
              CHECK(v.target == T);
              ++seen[v];
            }
          }
          const auto splits = split_variables(spec, F);
          CHECK(seen.size() == splits.size());
          for (auto& v : splits) CHECK(seen[v] == 1);
        }
      }
  }
}
