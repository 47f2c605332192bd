#pragma once

// Capacity polytopes, cut-set bounds, achievable-polytope projection and
// split-rate feasibility checks.

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcr/combnet.hpp"
#include "bcr/messages.hpp"
#include "bcr/projection.hpp"
#include "bcr/regions.hpp"

namespace bcr {

struct CapacityPolytope : NumericPolyhedron {
  std::string source;
};

namespace detail {

class RateRows {
 public:
  RateRows(const MessageSpec& spec, std::string source) : spec_(spec) {
    out_.source = std::move(source);
    out_.variables = {spec.rate(1).name(), spec.rate(2).name()};
  }
  void add(int c1, int c2, const Rational& rhs, std::string label) {
    out_.add_inequality({Rational(c1), Rational(c2)}, rhs, std::move(label));
  }
  CapacityPolytope finish(std::vector<Row<Rational>> trailing = {}) {
    add_nonnegativity(out_);
    for (auto& r : trailing) out_.inequalities.push_back(std::move(r));
    return std::move(out_);
  }

 private:
  MessageSpec spec_;
  CapacityPolytope out_;
};

struct NetView {
  const CombinationNetwork& net;
  SetFamily P;
  explicit NetView(const CombinationNetwork& n) : net(n), P(power_family(n.K())) {}
  SetFamily W(int j) const { return messages_for_receiver(P, j); }
  Rational whole(int j) const { return modular_capacity(net, W(j)); }
  Rational part(int j, const std::vector<ReceiverSet>& seeds) const {
    return modular_capacity(net, down_set(W(j), seeds));
  }
};

}  // namespace detail

// Two messages missing receivers K and K-1. With claimed_redundant the two
// row patterns the capacity proof shows implied are appended after every other
// row, so a last-to-first redundancy pass tests them first.
inline CapacityPolytope missing_pair_capacity(const CombinationNetwork& net, bool claimed_redundant = false) {
  const int K = net.K();
  if (K < 3) throw std::invalid_argument("two-message capacity needs K >= 3");
  const MessageSpec spec = closed_form_spec(ClosedForm::TwoOrderKMinus1, K);
  const ReceiverSet miss_k = spec.S1(), miss_k1 = spec.S2(), priv = spec.private_receivers();
  detail::NetView v(net);
  detail::RateRows rows(spec, "missing pair");
  rows.add(0, 1, v.whole(K), "single K");
  rows.add(1, 0, v.whole(K - 1), "single K-1");
  for (int j : priv.members()) rows.add(1, 1, v.whole(j), "cut-set " + std::to_string(j));
  rows.add(1, 1, v.part(K - 1, {miss_k}) + v.whole(K), "pair K-1,K");
  for (int j : priv.members())
    rows.add(2, 2, v.part(j, {miss_k1, miss_k}) + v.whole(K) + v.whole(K - 1), "double " + std::to_string(j));
  std::vector<Row<Rational>> extra;
  if (claimed_redundant)
    for (int j : priv.members()) {
      extra.push_back({{1, 1}, v.part(j, {miss_k}) + v.whole(K), "claimed via K " + std::to_string(j)});
      extra.push_back({{1, 1}, v.part(j, {miss_k1}) + v.whole(K - 1), "claimed via K-1 " + std::to_string(j)});
    }
  return rows.finish(std::move(extra));
}

enum class CommonCase { One, Two };

inline CapacityPolytope common_receiver_capacity(CommonCase which, const CombinationNetwork& net) {
  const int K = net.K();
  detail::NetView v(net);
  if (which == CommonCase::One) {
    if (K < 2) throw std::invalid_argument("one common receiver needs K >= 2");
    const MessageSpec spec = closed_form_spec(ClosedForm::OneCommon, K);
    detail::RateRows rows(spec, "one common receiver");
    rows.add(0, 1, v.whole(K), "common K");
    for (int j = 1; j < K; ++j) rows.add(1, 1, v.whole(j), "cut-set " + std::to_string(j));
    return rows.finish();
  }
  if (K < 3) throw std::invalid_argument("two common receivers need K >= 3");
  const MessageSpec spec = closed_form_spec(ClosedForm::TwoCommon, K);
  const ReceiverSet priv = spec.private_receivers();
  detail::RateRows rows(spec, "two common receivers");
  for (int i : {K - 1, K}) rows.add(0, 1, v.whole(i), "common " + std::to_string(i));
  for (int j : priv.members()) rows.add(1, 1, v.whole(j), "cut-set " + std::to_string(j));
  for (int j : priv.members())
    rows.add(1, 2, v.part(j, {priv}) + v.whole(K - 1) + v.whole(K), "weighted " + std::to_string(j));
  return rows.finish();
}

inline CapacityPolytope cutset_bound(const CombinationNetwork& net, const MessageSpec& spec) {
  if (net.K() != spec.K()) throw std::invalid_argument("network and messages disagree on K");
  detail::NetView v(net);
  detail::RateRows rows(spec, "cut-set");
  for (int j = 1; j <= spec.K(); ++j) {
    int c1 = spec.S1().contains(j), c2 = spec.S2().contains(j);
    if (c1 || c2) rows.add(c1, c2, v.whole(j), "cut-set " + std::to_string(j));
  }
  return rows.finish();
}

// Capacity polytope for the message sets with a known capacity result.
inline std::optional<CapacityPolytope> known_capacity(const CombinationNetwork& net, const MessageSpec& spec) {
  const int K = net.K();
  if (spec.K() != K) throw std::invalid_argument("network and messages disagree on K");
  auto is = [&](ClosedForm kind, int min_K) {
    return K >= min_K && closed_form_spec(kind, K).E() == spec.E();
  };
  if (is(ClosedForm::TwoOrderKMinus1, 3)) return missing_pair_capacity(net);
  if (is(ClosedForm::OneCommon, 2)) return common_receiver_capacity(CommonCase::One, net);
  if (is(ClosedForm::TwoCommon, 3)) return common_receiver_capacity(CommonCase::Two, net);
  return std::nullopt;
}

// Instantiate, project onto the two message rates, drop redundant rows.
inline NumericPolyhedron achievable_polytope(const SymbolicPolyhedron& sym, const CombinationNetwork& net,
                                             const AuxAssignment& asg) {
  NumericPolyhedron num = instantiate(sym, net, asg);
  return remove_redundant(fme_project(num, {num.variables[0], num.variables[1]}));
}

struct FeasibilityVerdict {
  bool feasible = false;
  std::map<std::string, Rational> witness;  // split rates
  std::vector<std::size_t> blocking_rows;   // indices into the instantiated rows
  std::vector<std::string> blocking_labels;
  std::string contradiction;
};

struct RatePoint {
  std::map<std::string, Rational> values;  // keyed by message-rate variable name
};

inline RatePoint make_rate_point(const MessageSpec& spec, const Rational& r1, const Rational& r2) {
  return {{{spec.rate(1).name(), r1}, {spec.rate(2).name(), r2}}};
}

// "a/b,c/d": the rates of the first and second message.
inline RatePoint parse_rate_point(const MessageSpec& spec, std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw ParseError("expected two rates \"a,b\" but got '" + std::string(text) + "'");
  const Rational r1 = parse_rational(text.substr(0, comma)), r2 = parse_rational(text.substr(comma + 1));
  if (r1 < 0 || r2 < 0) throw ParseError("rates must be nonnegative");
  return make_rate_point(spec, r1, r2);
}

// Fixes the listed variables and drops their columns; row order is preserved.
inline NumericPolyhedron fix_variables(const NumericPolyhedron& sys, const std::map<std::string, Rational>& values) {
  std::vector<std::size_t> keep;
  std::vector<std::optional<Rational>> fixed(sys.dim());
  for (auto& [name, v] : values) fixed[sys.index_of(name)] = v;
  for (std::size_t k = 0; k < sys.dim(); ++k)
    if (!fixed[k]) keep.push_back(k);
  auto narrow = [&](const Row<Rational>& r) {
    Row<Rational> s{{}, r.b, r.label};
    for (std::size_t k = 0; k < sys.dim(); ++k) {
      if (fixed[k])
        s.b -= r.a[k] * *fixed[k];
      else
        s.a.push_back(r.a[k]);
    }
    return s;
  };
  NumericPolyhedron out;
  for (auto k : keep) out.variables.push_back(sys.variables[k]);
  for (auto& e : sys.equalities) out.equalities.push_back(narrow(e));
  for (auto& r : sys.inequalities) out.inequalities.push_back(narrow(r));
  return out;
}

inline constexpr std::size_t kWholeSystemFilterRows = 160;

// Irreducible infeasible subset of the inequalities (equalities always kept).
// Rows are offered for deletion by decreasing rhs, single-variable bounds
// first among ties, so tight system rows survive.
inline std::vector<std::size_t> irreducible_infeasible_rows(const NumericPolyhedron& sys,
                                                            std::vector<std::size_t> start) {
  if (sys.inequalities.size() <= kWholeSystemFilterRows) {
    start.resize(sys.inequalities.size());
    std::iota(start.begin(), start.end(), std::size_t{0});
  }
  std::vector<std::size_t> order = start;
  auto bound_only = [&](std::size_t i) {
    auto& r = sys.inequalities[i];
    return r.b == 0 && std::count_if(r.a.begin(), r.a.end(), [](const Rational& c) { return c != 0; }) == 1;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (sys.inequalities[x].b != sys.inequalities[y].b) return sys.inequalities[x].b > sys.inequalities[y].b;
    return bound_only(x) && !bound_only(y);
  });
  std::set<std::size_t> kept(start.begin(), start.end());
  auto subsystem = [&](const std::set<std::size_t>& rows) {
    NumericPolyhedron out;
    out.variables = sys.variables;
    out.equalities = sys.equalities;
    for (auto i : rows) out.inequalities.push_back(sys.inequalities[i]);
    return out;
  };
  for (auto i : order) {
    kept.erase(i);
    if (!is_empty(subsystem(kept))) kept.insert(i);
  }
  return {kept.begin(), kept.end()};
}

inline FeasibilityVerdict decide(const NumericPolyhedron& full, const RatePoint& rates) {
  NumericPolyhedron rest = fix_variables(full, rates.values);
  Feasibility f = solve_feasibility(rest);
  FeasibilityVerdict out;
  out.feasible = f.feasible;
  if (f.feasible) {
    Point x(full.dim());
    for (std::size_t k = 0; k < full.dim(); ++k) {
      auto it = rates.values.find(full.variables[k]);
      x[k] = it != rates.values.end() ? it->second : f.witness[rest.index_of(full.variables[k])];
    }
    if (!satisfies(full, x)) throw std::logic_error("witness fails an original row");
    for (std::size_t k = 0; k < rest.dim(); ++k) out.witness.emplace(rest.variables[k], f.witness[k]);
    return out;
  }
  out.blocking_rows = irreducible_infeasible_rows(rest, f.blocking);
  for (auto i : out.blocking_rows) out.blocking_labels.push_back(full.inequalities[i].label);
  out.contradiction = f.contradiction;
  return out;
}

inline FeasibilityVerdict check_rate_point(const SymbolicPolyhedron& sym, const CombinationNetwork& net,
                                           const AuxAssignment& asg, const RatePoint& rates) {
  return decide(instantiate(sym, net, asg), rates);
}

// Index of the first instantiated row violated by the given rates and split
// values, or nullopt when the point satisfies them all.
inline std::optional<std::size_t> violated_row(const NumericPolyhedron& full, const RatePoint& rates,
                                               const std::map<std::string, Rational>& splits) {
  Point x(full.dim(), Rational(0));
  for (std::size_t k = 0; k < full.dim(); ++k) {
    const auto& name = full.variables[k];
    if (auto it = rates.values.find(name); it != rates.values.end())
      x[k] = it->second;
    else if (auto jt = splits.find(name); jt != splits.end())
      x[k] = jt->second;
  }
  for (auto& e : full.equalities)
    if (dot(e.a, x) != e.b) return full.inequalities.size();
  return first_violated(full, x);
}

// Nested feasibility system written directly with modular capacities.
inline NumericPolyhedron nested_feasibility_system(const CombinationNetwork& net, const MessageSpec& spec,
                                      GenerationMode mode = GenerationMode::Full) {
  const int K = spec.K();
  const ReceiverSet top = full_set(K);
  if (!spec.nested() || (spec.S1() != top && spec.S2() != top))
    throw std::invalid_argument("feasibility system needs nested messages with one for all receivers");
  const ReceiverSet priv = spec.private_receivers();
  const SetFamily P = power_family(K);
  const SetFamily targets = up_set(P, {priv});
  const SetFamily top_only(K, {top});

  NumericPolyhedron sys;
  sys.variables = {spec.rate(1).name(), spec.rate(2).name()};
  std::map<ReceiverSet, std::size_t> col;
  for (auto T : targets) {
    col.emplace(T, sys.variables.size());
    sys.variables.push_back(RateVariable::split(priv, T, K).name());
  }
  const std::size_t n = sys.variables.size();
  const std::size_t c_priv = spec.S1() == priv ? 0 : 1, c_top = 1 - c_priv;
  {
    std::vector<Rational> a(n);
    a[c_priv] = 1;
    for (auto& [T, c] : col) a[c] = -1;
    sys.add_equality(std::move(a), 0, "split");
  }
  for (int j : priv.members()) {
    std::vector<Rational> a(n);
    a[c_priv] = a[c_top] = 1;
    sys.add_inequality(std::move(a), modular_capacity(net, messages_for_receiver(P, j)), "Y" + std::to_string(j) + " all");
  }
  for (int j : priv.members()) {
    const SetFamily ground = family_difference(messages_for_receiver(P, j), top_only);
    const SetFamily live = family_difference(targets, top_only);
    std::vector<SetFamily> blocks;
    if (mode == GenerationMode::Full) {
      blocks = family_of_down_sets(ground);
    } else {
      for (auto& D : family_of_down_sets(live)) blocks.push_back(down_set(ground, D));
    }
    for (auto& B : blocks) {
      std::vector<Rational> a(n);
      bool any = false;
      for (auto T : B)
        if (auto it = col.find(T); it != col.end()) a[it->second] = 1, any = true;
      if (!any) continue;
      sys.add_inequality(std::move(a), modular_capacity(net, B), "Y" + std::to_string(j) + " B=" + to_string(B));
    }
  }
  for (int i = 1; i <= K; ++i) {
    if (priv.contains(i)) continue;
    std::vector<Rational> a(n);
    a[c_top] = 1;
    for (auto T : up_set(targets, {priv.with(i)})) a[col.at(T)] = 1;
    sys.add_inequality(std::move(a), modular_capacity(net, messages_for_receiver(P, i)), "Y" + std::to_string(i) + " common");
  }
  add_nonnegativity(sys);
  return sys;
}

inline FeasibilityVerdict nested_region_check(const CombinationNetwork& net, const MessageSpec& spec,
                                             const RatePoint& rates, GenerationMode mode = GenerationMode::Full) {
  return decide(nested_feasibility_system(net, spec, mode), rates);
}

}  // namespace bcr
