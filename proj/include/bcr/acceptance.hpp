#pragma once

// End-to-end acceptance suite: one verdict line per criterion.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcr/bcr.hpp"
#include "bcr/report.hpp"

namespace bcr::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Verdict {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;
};

inline CombinationNetwork network_from(int K, std::initializer_list<std::pair<const char*, Rational>> caps) {
  CombinationNetwork net(K);
  for (auto& [s, c] : caps) net.set_capacity(parse_receiver_set(s, K), c);
  return net;
}

inline CombinationNetwork three_receiver_network() {
  return network_from(3, {{"1", Rational(3, 2)},
                          {"2", Rational(1, 2)},
                          {"3", Rational(3, 4)},
                          {"12", Rational(3, 4)},
                          {"13", Rational(1, 2)},
                          {"23", Rational(1, 2)},
                          {"123", Rational(1, 4)}});
}

inline CombinationNetwork six_receiver_network() {
  return network_from(6, {{"124", 1}, {"135", 1}, {"236", 1}});
}

inline CombinationNetwork seven_receiver_network() {
  return network_from(7, {{"1245", 1}, {"1257", 1}, {"1346", 1}, {"1347", 1}, {"2356", 1}, {"2367", 1}});
}

// Every other draw keeps about a third of the links, which makes the coupled
// rows bind more often than dense draws do.
inline CombinationNetwork test_network(int K, std::mt19937_64& rng, int draw) {
  CombinationNetwork net = random_network(K, rng);
  if (draw % 2 == 1) {
    std::bernoulli_distribution keep(1.0 / 3);
    for (Mask m = 1; m <= full_mask(K); ++m)
      if (!keep(rng)) net.set_capacity(ReceiverSet(m), 0);
  }
  return net;
}

// Counts checks and keeps the first few failures.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what());
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(checks_) + " checks, " + std::to_string(failures_) + " failures";
    for (auto& n : notes_) d += "; " + n;
    return {failures_ == 0 && checks_ > 0, d};
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::vector<std::string> notes_;
};

// Set identities on receiver families.
inline Outcome lattice_identities() {
  Tally t;
  std::mt19937_64 rng(11);
  for (int K = 1; K <= 5; ++K) {
    const SetFamily P = power_family(K);
    for (auto S : P) {
      SetFamily u(K), in = P;
      std::vector<ReceiverSet> singles, complements;
      for (int k : S.members()) {
        u = family_union(u, messages_for_receiver(P, k));
        in = family_intersection(in, messages_for_receiver(P, k));
        singles.push_back(ReceiverSet{k});
        complements.push_back(complement_set(ReceiverSet{k}, K, true));
      }
      t.check(u == up_set(P, singles), [&] { return "union of W_k at S=" + to_string(S, K); });
      t.check(in == up_set(P, {S}), [&] { return "intersection of W_k at S=" + to_string(S, K); });
      for (int i = 1; i <= K; ++i) {
        const SetFamily Wi = messages_for_receiver(P, i);
        const SetFamily lo = down_set(Wi, complements), hi = up_set(Wi, {S});
        t.check(family_union(lo, hi) == Wi && family_intersection(lo, hi).empty(),
                [&] { return "complement split at S=" + to_string(S, K) + " i=" + std::to_string(i); });
        const SetFamily lo2 = down_set(Wi, {complement_set(S, K, true)}), hi2 = up_set(Wi, singles);
        t.check(family_union(lo2, hi2) == Wi && family_intersection(lo2, hi2).empty(),
                [&] { return "dual split at S=" + to_string(S, K) + " i=" + std::to_string(i); });
      }
    }
    // Families of sets: every subset of P up to K = 4, a fixed sample beyond.
    auto families = [&](auto&& visit) {
      const std::size_t n = P.size();
      if (K <= 4) {
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) visit(bits);
      } else {
        std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << n) - 1);
        for (int r = 0; r < 20000; ++r) visit(pick(rng));
      }
    };
    families([&](std::uint64_t bits) {
      SetFamily W(K);
      ReceiverSet meet = full_set(K);
      for (std::size_t k = 0; k < P.size(); ++k)
        if (bits >> k & 1) W.insert(P[k]), meet = meet & P[k];
      for (int i = 1; i <= K; ++i) {
        const SetFamily Wi = messages_for_receiver(P, i);
        SetFamily u(K), in = Wi;
        for (auto S : W) {
          const SetFamily d = down_set(Wi, {S});
          u = family_union(u, d);
          in = family_intersection(in, d);
        }
        t.check(u == down_set(Wi, W), [&] { return "union of down-sets at W=" + to_string(W); });
        t.check(in == down_set(Wi, {meet}), [&] { return "intersection of down-sets at W=" + to_string(W); });
      }
    });
  }
  return t.outcome("K = 1..5");
}

// Canonical atoms equal modular capacities.
inline Outcome canonical_atoms() {
  Tally t;
  std::mt19937_64 rng(22);
  for (int K = 1; K <= 4; ++K) {
    const SetFamily P = power_family(K);
    const AuxAssignment asg = canonical_assignment(K);
    for (int n = 0; n < 20; ++n) {
      const CombinationNetwork net = random_network(K, rng);
      for (int i = 1; i <= K; ++i) {
        const SetFamily Wi = messages_for_receiver(P, i);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << Wi.size()); ++bits) {
          SetFamily B(K);
          for (std::size_t k = 0; k < Wi.size(); ++k)
            if (bits >> k & 1) B.insert(Wi[k]);
          const Rational got = evaluate_atom(net, asg, MutualInfoAtom::within(i, Wi, B));
          t.check(got == modular_capacity(net, B), [&] { return "atom at i=" + std::to_string(i) + " B=" + to_string(B); });
        }
        for (auto S : P) {
          std::vector<ReceiverSet> complements, singles;
          for (int k : S.members()) {
            complements.push_back(complement_set(ReceiverSet{k}, K, true));
            singles.push_back(ReceiverSet{k});
          }
          const Rational whole = modular_capacity(net, Wi);
          t.check(whole == modular_capacity(net, down_set(Wi, complements)) + modular_capacity(net, up_set(Wi, {S})),
                  [&] { return "partition at S=" + to_string(S, K); });
          t.check(whole == modular_capacity(net, down_set(Wi, {complement_set(S, K, true)})) +
                               modular_capacity(net, up_set(Wi, singles)),
                  [&] { return "dual partition at S=" + to_string(S, K); });
        }
      }
    }
  }
  return t.outcome("K = 1..4, 20 networks each");
}

// Projected achievable polytopes for the three closed-form cases with F = P.
struct ClosedFormCase {
  ClosedForm kind;
  int K;
  CombinationNetwork net;
  NumericPolyhedron projected;
  NumericPolyhedron closed_form;
};

inline SymbolicPolyhedron full_expansion_region(ClosedForm kind, int K) {
  const MessageSpec spec = closed_form_spec(kind, K);
  const Expansion F = make_expansion(spec, ExpansionKind::P);
  if (kind == ClosedForm::TwoOrderKMinus1) return build_general_region(spec, F);
  return build_nested_region(spec, F);
}

inline std::vector<ClosedFormCase> closed_form_cases(int networks_per_K) {
  std::vector<ClosedFormCase> out;
  std::mt19937_64 rng(33);
  for (int K : {3, 4}) {
    std::map<ClosedForm, SymbolicPolyhedron> region, literal;
    for (auto kind : {ClosedForm::TwoOrderKMinus1, ClosedForm::OneCommon, ClosedForm::TwoCommon}) {
      region.emplace(kind, full_expansion_region(kind, K));
      literal.emplace(kind, closed_form_region(kind, K));
    }
    const AuxAssignment asg = canonical_assignment(K);
    for (int n = 0; n < networks_per_K; ++n) {
      const CombinationNetwork net = test_network(K, rng, n);
      for (auto& [kind, sym] : region)
        out.push_back({kind, K, net, achievable_polytope(sym, net, asg),
                       remove_redundant(instantiate(literal.at(kind), net, asg))});
    }
  }
  return out;
}

inline std::string case_name(const ClosedFormCase& c) {
  static const char* names[] = {"two order K-1", "one common", "two common", "three common"};
  return std::string(names[static_cast<int>(c.kind)]) + " K=" + std::to_string(c.K);
}

inline Outcome closed_form_projection(const std::vector<ClosedFormCase>& cases) {
  Tally t;
  std::size_t coupled = 0;
  for (auto& c : cases) {
    t.check(polytopes_equal(c.projected, c.closed_form), [&] { return case_name(c) + "\n" + to_config(c.net); });
    if (enumerate_vertices(c.projected).size() > 3) ++coupled;
  }
  return t.outcome(std::to_string(cases.size()) + " instances, " + std::to_string(coupled) + " with a coupled facet");
}

// Rows with the given label prefix moved after every other row.
inline std::pair<NumericPolyhedron, std::vector<std::size_t>> rows_last(const NumericPolyhedron& sys,
                                                                       const std::string& prefix) {
  NumericPolyhedron out = sys;
  out.inequalities.clear();
  std::vector<Row<Rational>> tail;
  for (auto& r : sys.inequalities) (r.label.rfind(prefix, 0) == 0 ? tail : out.inequalities).push_back(r);
  std::vector<std::size_t> idx;
  for (auto& r : tail) {
    idx.push_back(out.inequalities.size());
    out.inequalities.push_back(r);
  }
  return {out, idx};
}

inline bool all_removed(const RedundancyReport& rep, const std::vector<std::size_t>& rows) {
  for (auto i : rows)
    if (std::find(rep.removed.begin(), rep.removed.end(), i) == rep.removed.end()) return false;
  return true;
}

inline Outcome capacity_equalities(const std::vector<ClosedFormCase>& cases) {
  Tally t;
  for (auto& c : cases) {
    NumericPolyhedron capacity;
    switch (c.kind) {
      case ClosedForm::TwoOrderKMinus1: capacity = missing_pair_capacity(c.net); break;
      case ClosedForm::OneCommon: capacity = common_receiver_capacity(CommonCase::One, c.net); break;
      default: capacity = common_receiver_capacity(CommonCase::Two, c.net); break;
    }
    t.check(polytopes_equal(c.projected, capacity), [&] { return case_name(c) + " capacity\n" + to_config(c.net); });
    if (c.kind == ClosedForm::TwoOrderKMinus1) {
      const CapacityPolytope claimed = missing_pair_capacity(c.net, true);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < claimed.inequalities.size(); ++i)
        if (claimed.inequalities[i].label.rfind("claimed", 0) == 0) idx.push_back(i);
      t.check(!idx.empty() && all_removed(remove_redundant_report(claimed), idx),
              [&] { return case_name(c) + " claimed rows kept\n" + to_config(c.net); });
    }
    if (c.kind == ClosedForm::OneCommon) {
      auto [sys, idx] = rows_last(instantiate(closed_form_region(c.kind, c.K), c.net, canonical_assignment(c.K)),
                                  "sum via K ");
      t.check(!idx.empty() && all_removed(remove_redundant_report(sys), idx),
              [&] { return case_name(c) + " via-K rows kept\n" + to_config(c.net); });
    }
  }
  return t.outcome(std::to_string(cases.size()) + " instances");
}

// Three-receiver network under the two dependent-codebook choices.
inline Outcome dependent_codebooks() {
  Tally t;
  const CombinationNetwork net = three_receiver_network();
  const SymbolicPolyhedron sym = two_common_upset_region(3);
  const CapacityPolytope capacity = common_receiver_capacity(CommonCase::Two, net);
  NumericPolyhedron expected;
  expected.variables = capacity.variables;  // R_{1}, R_{123}
  expected.add_inequality({0, 1}, 2);
  expected.add_inequality({1, 1}, 3);
  expected.add_inequality({1, 2}, Rational(11, 2));
  add_nonnegativity(expected);
  t.check(polytopes_equal(capacity, expected), [&] { return "capacity polytope\n" + to_text(capacity); });

  const NumericPolyhedron one = achievable_polytope(sym, net, named_assignment(NamedAssignment::ThreeReceiverChoice1, 3));
  const NumericPolyhedron two = achievable_polytope(sym, net, named_assignment(NamedAssignment::ThreeReceiverChoice2, 3));
  auto cap = [&](const NumericPolyhedron& p, std::vector<Rational> dir, const Rational& v, const char* what) {
    Maximum m = maximize(p, dir);
    t.check(m.kind == Maximum::Kind::Finite && m.value == v, [&] { return std::string(what) + " = " + m.value.get_str(); });
  };
  cap(one, {1, 1}, Rational(3, 2), "choice 1 max R_1+R_123");
  cap(one, {0, 1}, Rational(3, 2), "choice 1 max R_123");
  cap(two, {0, 1}, 1, "choice 2 max R_123");
  cap(two, {1, 1}, 3, "choice 2 max R_1+R_123");

  std::vector<Point> pts = enumerate_vertices(one);
  for (auto& v : enumerate_vertices(two)) pts.push_back(v);
  const NumericPolyhedron hull = hull_of_points(capacity.variables, pts);
  const std::vector<Point> hull_vertices = enumerate_vertices(hull);
  const std::vector<Point> want = {{0, 0}, {0, Rational(3, 2)}, {2, 1}, {3, 0}};
  t.check(hull_vertices == want, [&] {
    std::string s = "hull vertices";
    for (auto& v : hull_vertices) s += " " + point_text(v);
    return s;
  });
  t.check(polytope_contains(capacity, hull), [] { return "hull leaves the capacity polytope"; });
  auto sep = separating_vertex(capacity, hull);
  t.check(sep.has_value(), [] { return "no capacity vertex outside the hull"; });
  const std::vector<Point> corners = enumerate_vertices(capacity);
  for (const Point& p : {Point{0, 2}, Point{1, 2}})
    t.check(std::find(corners.begin(), corners.end(), p) != corners.end() && !satisfies(hull, p),
            [&] { return "capacity corner " + point_text(p) + " not outside the hull"; });
  return t.outcome(sep ? "capacity vertex " + point_text(sep->vertex) + " outside the hull" : "no separation");
}

inline const SymbolicPolyhedron& nested_full_expansion(int K) {
  static std::map<int, SymbolicPolyhedron> cache;
  auto it = cache.find(K);
  if (it == cache.end()) {
    const MessageSpec spec(K, ReceiverSet{1, 2, 3}, full_set(K));
    it = cache.emplace(K, build_nested_region(spec, make_expansion(spec, ExpansionKind::P), GenerationMode::Reduced))
             .first;
  }
  return it->second;
}

inline std::map<std::string, Rational> split_values(int K, std::initializer_list<const char*> targets) {
  std::map<std::string, Rational> out;
  for (auto T : targets) out.emplace(RateVariable::split(ReceiverSet{1, 2, 3}, parse_receiver_set(T, K), K).name(), 1);
  return out;
}

inline bool witness_matches(const FeasibilityVerdict& v, const std::map<std::string, Rational>& want) {
  for (auto& [name, x] : v.witness) {
    auto it = want.find(name);
    if (x != (it == want.end() ? Rational(0) : it->second)) return false;
  }
  return true;
}

// Per-row minimum over private receivers of the three-common closed-form rows.
inline std::vector<Rational> closed_form_row_minima(const CombinationNetwork& net, const AuxAssignment& asg) {
  const SymbolicPolyhedron sym = closed_form_region(ClosedForm::ThreeCommon, net.K());
  std::vector<std::string> order;
  std::map<std::string, Rational> best;
  for (auto& r : sym.inequalities) {
    std::string key = r.label.substr(0, r.label.find(" j="));
    Rational v = evaluate(net, asg, r.rhs);
    auto it = best.find(key);
    if (it == best.end()) {
      order.push_back(key);
      best.emplace(key, v);
    } else if (v < it->second) {
      it->second = v;
    }
  }
  std::vector<Rational> out;
  for (auto& k : order) out.push_back(best.at(k));
  return out;
}

inline Outcome six_receiver_example() {
  Tally t;
  const int K = 6;
  const CombinationNetwork net = six_receiver_network();
  const MessageSpec spec(K, ReceiverSet{1, 2, 3}, full_set(K));
  const SymbolicPolyhedron& sym = nested_full_expansion(K);
  const AuxAssignment A = named_assignment(NamedAssignment::SixReceiverA, K);
  const AuxAssignment B = named_assignment(NamedAssignment::SixReceiverB, K);

  t.check(check_rate_point(sym, net, A, make_rate_point(spec, 0, 1)).feasible, [] { return "A (0,1) infeasible"; });
  const NumericPolyhedron fullA = instantiate(sym, net, A);
  const FeasibilityVerdict blocked = decide(fullA, make_rate_point(spec, 2, 0));
  t.check(!blocked.feasible, [] { return "A (2,0) feasible"; });
  std::size_t tight = 0;
  for (auto i : blocked.blocking_rows) {
    auto& r = fullA.inequalities[i];
    if (r.b == 0 && r.label.find(" >= 0") == std::string::npos) ++tight;
  }
  t.check(blocked.feasible || tight > 0, [] { return "certificate has no zero-capacity system row"; });
  if (!blocked.feasible) {
    NumericPolyhedron core = fix_variables(fullA, make_rate_point(spec, 2, 0).values);
    NumericPolyhedron sub;
    sub.variables = core.variables;
    sub.equalities = core.equalities;
    for (auto i : blocked.blocking_rows) sub.inequalities.push_back(core.inequalities[i]);
    t.check(is_empty(sub), [] { return "certificate rows are jointly feasible"; });
  }

  const FeasibilityVerdict b = check_rate_point(sym, net, B, make_rate_point(spec, 2, 0));
  const auto published = split_values(K, {"1234", "1235"});
  t.check(b.feasible, [] { return "B (2,0) infeasible"; });
  t.check(witness_matches(b, published), [] { return "B witness differs from the published one"; });
  t.check(!violated_row(instantiate(sym, net, B), make_rate_point(spec, 2, 0), published),
          [] { return "published witness violates a row"; });

  const std::vector<int> goldA = {1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 2, 1, 2, 1, 2, 1, 2, 2, 2, 2, 2, 2};
  const std::vector<int> goldB = {0, 1, 1, 0, 1, 1, 0, 2, 1, 1, 2, 2, 2, 1, 2, 1, 2, 2, 2, 2, 2, 2};
  auto same = [](const std::vector<Rational>& got, const std::vector<int>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t k = 0; k < got.size(); ++k)
      if (got[k] != want[k]) return false;
    return true;
  };
  t.check(same(closed_form_row_minima(net, A), goldA), [] { return "row capacities under A"; });
  t.check(same(closed_form_row_minima(net, B), goldB), [] { return "row capacities under B"; });
  return t.outcome(std::to_string(blocked.blocking_rows.size()) + "-row certificate under A, " +
                   std::to_string(tight) + " zero-capacity");
}

inline Outcome seven_receiver_example() {
  Tally t;
  const int K = 7;
  const CombinationNetwork net = seven_receiver_network();
  const MessageSpec spec(K, ReceiverSet{1, 2, 3}, full_set(K));
  const RatePoint target = make_rate_point(spec, 3, 1);
  const FeasibilityVerdict canonical = nested_region_check(net, spec, target, GenerationMode::Reduced);
  t.check(!canonical.feasible, [] { return "(3,1) feasible under the canonical assignment"; });
  const SymbolicPolyhedron& sym = nested_full_expansion(K);
  const AuxAssignment asg = named_assignment(NamedAssignment::SevenReceiver, K);
  const FeasibilityVerdict v = check_rate_point(sym, net, asg, target);
  const auto published = split_values(K, {"12345", "12347", "12357"});
  t.check(v.feasible, [] { return "(3,1) infeasible under the named assignment"; });
  t.check(witness_matches(v, published), [] { return "witness differs from the published one"; });
  t.check(!violated_row(instantiate(sym, net, asg), target, published), [] { return "published witness violates a row"; });
  return t.outcome(std::to_string(canonical.blocking_rows.size()) + "-row canonical certificate");
}

// Smaller expansions with their dependent assignments reach capacity.
inline Outcome smaller_expansions(int networks_per_K) {
  Tally t;
  std::mt19937_64 rng(44);
  struct Setup {
    ClosedForm kind;
    ExpansionKind expansion;
    NamedAssignment assignment;
  };
  const std::vector<Setup> setups = {
      {ClosedForm::OneCommon, ExpansionKind::E, NamedAssignment::OneCommon},
      {ClosedForm::TwoCommon, ExpansionKind::UpE, NamedAssignment::TwoCommon},
      {ClosedForm::TwoOrderKMinus1, ExpansionKind::UpEPlusPrivate, NamedAssignment::TwoOrderKMinus1},
  };
  std::size_t instances = 0;
  for (int K : {3, 4}) {
    for (auto& s : setups) {
      const MessageSpec spec = closed_form_spec(s.kind, K);
      const Expansion F = make_expansion(spec, s.expansion);
      const AuxAssignment asg = named_assignment(s.assignment, K);
      bool valid = true;
      try {
        asg.validate(F.family());
      } catch (const std::invalid_argument&) {
        valid = false;
      }
      t.check(valid, [&] { return assignment_name(s.assignment) + " fails superposition at K=" + std::to_string(K); });
      const SymbolicPolyhedron sym =
          spec.nested() ? build_nested_region(spec, F) : build_general_region(spec, F);
      for (int n = 0; n < networks_per_K; ++n) {
        const CombinationNetwork net = test_network(K, rng, n);
        NumericPolyhedron capacity = s.kind == ClosedForm::TwoOrderKMinus1 ? missing_pair_capacity(net)
                                     : s.kind == ClosedForm::OneCommon    ? common_receiver_capacity(CommonCase::One, net)
                                                                             : common_receiver_capacity(CommonCase::Two, net);
        ++instances;
        t.check(polytopes_equal(achievable_polytope(sym, net, asg), capacity),
                [&] { return assignment_name(s.assignment) + " K=" + std::to_string(K) + "\n" + to_config(net); });
      }
    }
  }
  return t.outcome(std::to_string(instances) + " instances");
}

// Small random bounded systems with rational coefficients in [-4, 4].
inline NumericPolyhedron random_bounded_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 5), den_pick(1, 3), flip(0, 4);
  auto coefficient = [&] {
    const int q = den_pick(rng);
    std::uniform_int_distribution<int> p(-4 * q, 4 * q);
    return ratio(p(rng), q);
  };
  auto rhs = [&] {
    const int q = den_pick(rng);
    std::uniform_int_distribution<int> p(-q, 4 * q);
    return ratio(p(rng), q);
  };
  for (;;) {
    const std::size_t n = dim(rng);
    NumericPolyhedron sys;
    for (std::size_t k = 0; k < n; ++k) sys.variables.push_back("x" + std::to_string(k + 1));
    std::uniform_int_distribution<std::size_t> count(1, 16 - n);
    const std::size_t m = count(rng);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> a(n);
      for (auto& c : a) c = flip(rng) == 0 ? Rational(0) : coefficient();
      if (all_zero(a)) continue;
      if (i == 0 && n > 2 && flip(rng) == 0)
        sys.add_equality(std::move(a), rhs());
      else
        sys.add_inequality(std::move(a), rhs());
    }
    add_nonnegativity(sys);
    if (is_empty(sys) || !is_bounded(sys)) continue;
    return sys;
  }
}

inline Outcome projection_oracle(int systems) {
  Tally t;
  std::mt19937_64 rng(55);
  std::size_t eliminated = 0;
  for (int s = 0; s < systems; ++s) {
    const NumericPolyhedron sys = random_bounded_system(rng);
    std::uniform_int_distribution<std::size_t> keep_count(1, sys.dim() - 1);
    const std::size_t k = keep_count(rng);
    std::vector<std::size_t> drop;
    for (std::size_t v = k; v < sys.dim(); ++v) drop.push_back(v);
    eliminated += drop.size();
    const std::vector<std::string> keep(sys.variables.begin(), sys.variables.begin() + k);
    const NumericPolyhedron fme = remove_redundant(fme_eliminate(sys, drop));
    const NumericPolyhedron oracle = project_by_vertices(sys, keep);
    t.check(enumerate_vertices(fme) == enumerate_vertices(oracle), [&] { return "system\n" + to_text(sys); });
  }
  return t.outcome(std::to_string(systems) + " systems, " + std::to_string(eliminated) + " eliminations");
}

// Rows written out as "lhs <= atoms" in the generator's text form.
inline Outcome non_unique_decoding_rows() {
  Tally t;
  const int K = 3;
  const MessageSpec spec = parse_message_spec("1,23", K);
  const SymbolicPolyhedron sym = build_general_region(spec, make_expansion(spec, ExpansionKind::P));
  const SetFamily P = power_family(K);
  auto S = [&](const char* s) { return parse_receiver_set(s, K); };
  auto rhat = [&](std::initializer_list<const char*> targets) {
    LinearForm f;
    for (auto T : targets) f += reconstruction_rate(spec, make_expansion(spec, ExpansionKind::P), S(T));
    return f;
  };
  auto atom = [&](int j, std::initializer_list<const char*> informed) {
    SetFamily B(K);
    for (auto x : informed) B.insert(S(x));
    return MutualInfoAtom::within(j, messages_for_receiver(P, j), B);
  };
  struct Expected {
    LinearForm lhs;
    MutualInfoAtom rhs;
  };
  const std::vector<Expected> rows = {
      {rhat({"123", "13", "12", "1"}), atom(1, {"123", "13", "12", "1"})},
      {rhat({"13", "12", "1"}), atom(1, {"13", "12", "1"})},
      {rhat({"12", "1"}), atom(1, {"12", "1"})},
      {rhat({"13", "1"}), atom(1, {"13", "1"})},
      {rhat({"1"}), atom(1, {"1"})},
      {rhat({"123", "23", "12"}), atom(2, {"123", "23", "12", "2"})},
      {rhat({"23", "12"}), atom(2, {"23", "12", "2"})},
      {rhat({"23"}), atom(2, {"23", "2"})},
      {rhat({"123", "23", "13"}), atom(3, {"123", "23", "13", "3"})},
      {rhat({"23", "13"}), atom(3, {"23", "13", "3"})},
      {rhat({"23"}), atom(3, {"23", "3"})},
  };
  auto present = [&](const LinearForm& lhs, const MutualInfoAtom& a) {
    AtomSum rhs;
    rhs.add(a, 1);
    for (auto& r : sym.inequalities)
      if (r.lhs == lhs && r.rhs == rhs) return true;
    return false;
  };
  t.check(sym.inequalities.size() == rows.size(),
          [&] { return std::to_string(sym.inequalities.size()) + " rows generated"; });
  for (auto& r : rows)
    t.check(present(r.lhs, r.rhs), [&] { return "missing " + to_string(r.lhs) + " <= " + to_string(r.rhs); });
  t.check(!present(rhat({"12"}), atom(2, {"12", "2"})), [] { return "unique-decoding row at receiver 2"; });
  t.check(!present(rhat({"13"}), atom(3, {"13", "3"})), [] { return "unique-decoding row at receiver 3"; });
  return t.outcome(std::to_string(sym.inequalities.size()) + " rows");
}

struct Criterion {
  int id;
  std::string title;
  double budget;
  std::function<Outcome()> run;
};

inline std::vector<Criterion> criteria() {
  auto cases = std::make_shared<std::optional<std::vector<ClosedFormCase>>>();
  auto shared_cases = [cases]() -> const std::vector<ClosedFormCase>& {
    if (!*cases) *cases = closed_form_cases(100);
    return **cases;
  };
  return {
      {1, "lattice identities", 10, lattice_identities},
      {2, "canonical atoms equal modular capacities", 30, canonical_atoms},
      {3, "projected regions equal the closed forms", 300,
       [=] { return closed_form_projection(shared_cases()); }},
      {4, "capacity equalities and redundancy claims", 300, [=] { return capacity_equalities(shared_cases()); }},
      {5, "three-receiver dependent codebooks", 1, dependent_codebooks},
      {6, "six-receiver assignments", 10, six_receiver_example},
      {7, "seven-receiver assignment", 30, seven_receiver_example},
      {8, "smaller expansions reach capacity", 300, [] { return smaller_expansions(50); }},
      {9, "projection oracle", 120, [] { return projection_oracle(200); }},
      {10, "non-unique decoding rows", 1, non_unique_decoding_rows},
  };
}

// Runs the selected criteria (all when empty); true when every one passes.
inline bool run(std::ostream& out, const std::vector<int>& only = {}) {
  bool all = true;
  for (auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.budget;
    all = all && pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << secs << " s of "
         << c.budget << " s] " << o.detail;
    out << line.str() << std::endl;
  }
  return all;
}

}  // namespace bcr::acceptance
