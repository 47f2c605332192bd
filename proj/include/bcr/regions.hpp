#pragma once

// Symbolic achievable-region systems: general two-message regions, nested
// regions, and literal projected regions kept for regression.

#include <map>
#include <string>
#include <vector>

#include "bcr/lattice.hpp"
#include "bcr/messages.hpp"
#include "bcr/rational.hpp"

namespace bcr {

// I(U_informed ; Y_receiver | U_conditioned).
struct MutualInfoAtom {
  int receiver = 1;
  SetFamily informed;
  SetFamily conditioned;

  // Complement form: informed B, conditioned W \ B.
  static MutualInfoAtom within(int j, const SetFamily& W, const SetFamily& B) {
    if (!W.includes(B)) throw std::invalid_argument("informed family not inside W");
    return {j, B, family_difference(W, B)};
  }

  friend bool operator==(const MutualInfoAtom&, const MutualInfoAtom&) = default;
  friend std::strong_ordering operator<=>(const MutualInfoAtom& a, const MutualInfoAtom& b) {
    if (a.receiver != b.receiver) return a.receiver <=> b.receiver;
    if (auto c = a.informed <=> b.informed; c != 0) return c;
    return a.conditioned <=> b.conditioned;
  }
};

inline std::string aux_list(const SetFamily& F) {
  std::string out;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i) out += ',';
    out += to_string(F[i], F.K());
  }
  return "U_{" + out + "}";
}

inline std::string to_string(const MutualInfoAtom& a) {
  std::string out = "I(" + (a.informed.empty() ? std::string("U_{}") : aux_list(a.informed)) +
                    ";Y_" + std::to_string(a.receiver);
  if (!a.conditioned.empty()) out += "|" + aux_list(a.conditioned);
  return out + ")";
}

// Nonnegative-atom combination plus a constant; the right-hand side of a row.
class AtomSum {
 public:
  AtomSum() = default;
  explicit AtomSum(const Rational& c) : constant_(c) {}
  explicit AtomSum(const MutualInfoAtom& a, const Rational& c = 1) { add(a, c); }

  void add(const MutualInfoAtom& a, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(a, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  AtomSum& operator+=(const AtomSum& o) {
    for (auto& [a, c] : o.terms_) add(a, c);
    constant_ += o.constant_;
    return *this;
  }
  AtomSum scaled(const Rational& s) const {
    AtomSum out;
    if (s == 0) return out;
    for (auto& [a, c] : terms_) out.terms_.emplace(a, c * s);
    out.constant_ = constant_ * s;
    return out;
  }

  const std::map<MutualInfoAtom, Rational>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  bool is_constant() const { return terms_.empty(); }

  friend bool operator==(const AtomSum&, const AtomSum&) = default;

 private:
  std::map<MutualInfoAtom, Rational> terms_;
  Rational constant_ = 0;
};

inline AtomSum operator+(AtomSum a, const AtomSum& b) { return a += b; }

// True when a <= b for every nonnegative value of the atoms.
inline bool never_exceeds(const AtomSum& a, const AtomSum& b) {
  if (a.constant() > b.constant()) return false;
  for (auto& [atom, c] : a.terms()) {
    auto it = b.terms().find(atom);
    Rational other = it == b.terms().end() ? Rational(0) : it->second;
    if (c > other) return false;
  }
  for (auto& [atom, c] : b.terms())
    if (c < 0 && !a.terms().contains(atom)) return false;
  return true;
}

inline std::string to_string(const AtomSum& s) {
  std::string out;
  bool first = true;
  for (auto& [a, c] : s.terms()) {
    out += coefficient_prefix(c, first) + to_string(a);
    first = false;
  }
  if (first) return to_string(s.constant());
  if (s.constant() != 0)
    out += (s.constant() < 0 ? " - " : " + ") + to_string(Rational(abs(s.constant())));
  return out;
}

struct Inequality {
  LinearForm lhs;
  AtomSum rhs;
  std::string label;
};

inline std::string to_string(const Inequality& r) {
  return to_string(r.lhs) + " <= " + to_string(r.rhs);
}

struct SymbolicPolyhedron {
  int K = 1;
  std::vector<RateVariable> variables;
  std::vector<LinearForm> equalities;  // each form equals zero
  std::vector<Inequality> inequalities;
};

// Full enumerates every down-set the region quantifies over. Reduced keeps one
// down-set per distinct left-hand side (the smallest one); the dropped rows are
// implied because conditioning never increases entropy.
enum class GenerationMode { Full, Reduced };

namespace detail {

inline std::vector<SetFamily> down_set_choices(const SetFamily& W, const SetFamily& live,
                                               const SetFamily& required, GenerationMode mode) {
  if (mode == GenerationMode::Full) return family_of_down_sets_containing(W, required);
  std::vector<SetFamily> out;
  for (auto& D : family_of_down_sets_containing(live, family_intersection(live, required)))
    if (D.includes(family_intersection(required, live))) out.push_back(down_set(W, D));
  return out;
}

inline std::string block_label(int j, const SetFamily& B) {
  return "Y" + std::to_string(j) + " B=" + to_string(B);
}

}  // namespace detail

inline SymbolicPolyhedron build_general_region(const MessageSpec& spec, const Expansion& Fx,
                                               GenerationMode mode = GenerationMode::Full) {
  const int K = spec.K();
  const SetFamily& F = Fx.family();
  SymbolicPolyhedron sys;
  sys.K = K;
  sys.variables = {spec.rate(1), spec.rate(2)};
  for (auto& v : split_variables(spec, Fx)) sys.variables.push_back(v);
  sys.equalities = split_equalities(spec, Fx);

  std::map<ReceiverSet, LinearForm> recon;
  for (auto T : F) recon.emplace(T, reconstruction_rate(spec, Fx, T));
  const SetFamily live = up_set(F, spec.E());

  auto emit = [&](int j, const SetFamily& required) {
    SetFamily W = messages_for_receiver(F, j);
    for (auto& B : detail::down_set_choices(W, family_intersection(W, live), required, mode)) {
      LinearForm lhs;
      for (auto T : B) lhs += recon.at(T);
      if (lhs.is_zero()) continue;
      sys.inequalities.push_back(
          {std::move(lhs), AtomSum(MutualInfoAtom::within(j, W, B)), detail::block_label(j, B)});
    }
  };
  for (int j = 1; j <= K; ++j) {
    if (spec.private_receivers().contains(j))
      emit(j, SetFamily(K));
    else if (spec.common1().contains(j))
      emit(j, SetFamily(K, {spec.S1()}));
    else if (spec.common2().contains(j))
      emit(j, SetFamily(K, {spec.S2()}));
  }
  return sys;
}

// Nested messages whose larger set is [1:K]. The smaller set is the private one.
inline SymbolicPolyhedron build_nested_region(const MessageSpec& spec, const Expansion& Fx,
                                              GenerationMode mode = GenerationMode::Full) {
  const int K = spec.K();
  const ReceiverSet top = full_set(K);
  if (!spec.nested() || (spec.S1() != top && spec.S2() != top))
    throw std::invalid_argument("nested region needs one message for all receivers");
  const ReceiverSet priv = spec.private_receivers();
  const SetFamily& F = Fx.family();
  const RateVariable r_top = RateVariable::message(top, K);
  const RateVariable r_priv = RateVariable::message(priv, K);

  SymbolicPolyhedron sys;
  sys.K = K;
  sys.variables = {spec.rate(1), spec.rate(2)};
  const SetFamily targets = up_set(F, {priv});
  LinearForm decomposition(r_priv);
  for (auto T : targets) {
    auto v = RateVariable::split(priv, T, K);
    sys.variables.push_back(v);
    decomposition.add(v, -1);
  }
  sys.equalities.push_back(decomposition);

  const SetFamily top_only(K, {top});
  for (int j : priv.members()) {
    SetFamily W = messages_for_receiver(F, j);
    LinearForm lhs(r_top);
    lhs.add(r_priv, 1);
    sys.inequalities.push_back(
        {lhs, AtomSum(MutualInfoAtom::within(j, W, W)), "Y" + std::to_string(j) + " all"});
  }
  for (int j : priv.members()) {
    SetFamily W = messages_for_receiver(F, j);
    SetFamily ground = family_difference(W, top_only);
    SetFamily live = family_difference(targets, top_only);
    for (auto& B : detail::down_set_choices(ground, live, SetFamily(K), mode)) {
      LinearForm lhs;
      for (auto T : B)
        if (targets.contains(T)) lhs.add(RateVariable::split(priv, T, K), 1);
      if (lhs.is_zero()) continue;
      sys.inequalities.push_back(
          {std::move(lhs), AtomSum(MutualInfoAtom::within(j, W, B)), detail::block_label(j, B)});
    }
  }
  for (int i = 1; i <= K; ++i) {
    if (priv.contains(i)) continue;
    SetFamily W = messages_for_receiver(F, i);
    LinearForm lhs(r_top);
    for (auto T : up_set(F, {priv.with(i)})) lhs.add(RateVariable::split(priv, T, K), 1);
    sys.inequalities.push_back(
        {std::move(lhs), AtomSum(MutualInfoAtom::within(i, W, W)), "Y" + std::to_string(i) + " common"});
  }
  return sys;
}

// Nested construction when one message goes to every receiver, general otherwise.
inline bool nested_applies(const MessageSpec& spec) {
  return spec.nested() && (spec.S1() == full_set(spec.K()) || spec.S2() == full_set(spec.K()));
}

inline SymbolicPolyhedron build_region(const MessageSpec& spec, const Expansion& Fx,
                                       GenerationMode mode = GenerationMode::Full) {
  return nested_applies(spec) ? build_nested_region(spec, Fx, mode) : build_general_region(spec, Fx, mode);
}

// Full enumeration unless it trips the down-set guard.
inline SymbolicPolyhedron build_region_auto(const MessageSpec& spec, const Expansion& Fx) {
  try {
    return build_region(spec, Fx, GenerationMode::Full);
  } catch (const GuardError&) {
    return build_region(spec, Fx, GenerationMode::Reduced);
  }
}

enum class ClosedForm { TwoOrderKMinus1, OneCommon, TwoCommon, ThreeCommon };

namespace detail {

struct ClosedFormContext {
  int K;
  SetFamily P;

  ReceiverSet bar(std::initializer_list<int> out) const {
    return complement_set(ReceiverSet(out), K, true);
  }
  SetFamily W(int j) const { return messages_for_receiver(P, j); }
  AtomSum whole(int j) const { return AtomSum(MutualInfoAtom::within(j, W(j), W(j))); }
  AtomSum part(int j, const std::vector<ReceiverSet>& seeds) const {
    return AtomSum(MutualInfoAtom::within(j, W(j), down_set(W(j), seeds)));
  }
};

inline LinearForm sum_of(std::initializer_list<std::pair<RateVariable, int>> terms) {
  LinearForm f;
  for (auto& [v, c] : terms) f.add(v, c);
  return f;
}

}  // namespace detail

inline MessageSpec closed_form_spec(ClosedForm which, int K) {
  static constexpr int min_k[] = {2, 2, 3, 4};
  if (K < min_k[static_cast<int>(which)]) throw std::invalid_argument("K too small for this closed form");
  require_receiver_count(K);
  const ReceiverSet top = full_set(K);
  auto drop = [&](std::initializer_list<int> out) { return complement_set(ReceiverSet(out), K, true); };
  switch (which) {
    case ClosedForm::TwoOrderKMinus1: return MessageSpec(K, drop({K}), drop({K - 1}));
    case ClosedForm::OneCommon: return MessageSpec(K, drop({K}), top);
    case ClosedForm::TwoCommon: return MessageSpec(K, drop({K - 1, K}), top);
    case ClosedForm::ThreeCommon: return MessageSpec(K, drop({K - 2, K - 1, K}), top);
  }
  throw std::invalid_argument("unknown closed form");
}

// The literal projected regions (split rates retained for three common receivers).
inline SymbolicPolyhedron closed_form_region(ClosedForm which, int K) {
  const MessageSpec spec = closed_form_spec(which, K);
  detail::ClosedFormContext cx{K, power_family(K)};
  SymbolicPolyhedron sys;
  sys.K = K;
  sys.variables = {spec.rate(1), spec.rate(2)};
  auto row = [&](LinearForm lhs, AtomSum rhs, std::string label) {
    sys.inequalities.push_back({std::move(lhs), std::move(rhs), std::move(label)});
  };
  using detail::sum_of;
  const std::string js = "j=";

  switch (which) {
    case ClosedForm::TwoOrderKMinus1: {
      const auto a = spec.rate(1), b = spec.rate(2);  // a misses K, b misses K-1
      const auto abar = cx.bar({K}), bbar = cx.bar({K - 1});
      const auto priv = spec.private_receivers();
      row(LinearForm(b), cx.whole(K), "single K");
      row(LinearForm(a), cx.whole(K - 1), "single K-1");
      for (int j : priv.members()) row(sum_of({{a, 1}, {b, 1}}), cx.whole(j), "sum " + js + std::to_string(j));
      for (int j : priv.with(K - 1).members())
        row(sum_of({{a, 1}, {b, 1}}), cx.part(j, {abar}) + cx.whole(K), "sum via K " + js + std::to_string(j));
      for (int j : priv.with(K).members())
        row(sum_of({{a, 1}, {b, 1}}), cx.part(j, {bbar}) + cx.whole(K - 1),
            "sum via K-1 " + js + std::to_string(j));
      for (int j : priv.members())
        row(sum_of({{a, 2}, {b, 2}}), cx.part(j, {bbar, abar}) + cx.whole(K) + cx.whole(K - 1),
            "double " + js + std::to_string(j));
      break;
    }
    case ClosedForm::OneCommon: {
      const auto p = spec.rate(1), t = spec.rate(2);
      row(LinearForm(t), cx.whole(K), "common K");
      for (int j = 1; j < K; ++j) row(sum_of({{t, 1}, {p, 1}}), cx.whole(j), "sum " + js + std::to_string(j));
      for (int j = 1; j < K; ++j)
        row(sum_of({{t, 1}, {p, 1}}), cx.part(j, {cx.bar({K})}) + cx.whole(K),
            "sum via K " + js + std::to_string(j));
      break;
    }
    case ClosedForm::TwoCommon: {
      const auto p = spec.rate(1), t = spec.rate(2);
      const auto priv = spec.private_receivers();
      for (int i : {K - 1, K}) row(LinearForm(t), cx.whole(i), "common " + std::to_string(i));
      for (int j : priv.members()) row(sum_of({{t, 1}, {p, 1}}), cx.whole(j), "sum " + js + std::to_string(j));
      for (int j : priv.members())
        row(sum_of({{t, 1}, {p, 1}}), cx.part(j, {cx.bar({K - 1})}) + cx.whole(K - 1),
            "sum via K-1 " + js + std::to_string(j));
      for (int j : priv.members())
        row(sum_of({{t, 1}, {p, 1}}), cx.part(j, {cx.bar({K})}) + cx.whole(K),
            "sum via K " + js + std::to_string(j));
      for (int j : priv.members())
        row(sum_of({{t, 2}, {p, 1}}), cx.part(j, {priv}) + cx.whole(K - 1) + cx.whole(K),
            "weighted " + js + std::to_string(j));
      for (int j1 : priv.members())
        for (int j2 : priv.members())
          row(sum_of({{t, 2}, {p, 2}}),
              cx.part(j1, {priv}) + cx.part(j2, {cx.bar({K - 1}), cx.bar({K})}) + cx.whole(K - 1) +
                  cx.whole(K),
              "double j1=" + std::to_string(j1) + " j2=" + std::to_string(j2));
      break;
    }
    case ClosedForm::ThreeCommon: {
      const auto p = spec.rate(1), t = spec.rate(2);
      const ReceiverSet priv = spec.private_receivers();
      const int l1 = K, l2 = K - 1, l3 = K - 2;
      const SetFamily targets = up_set(cx.P, {priv});
      LinearForm decomposition(p);
      for (auto T : targets) {
        sys.variables.push_back(RateVariable::split(priv, T, K));
        decomposition.add(RateVariable::split(priv, T, K), -1);
      }
      sys.equalities.push_back(decomposition);
      auto splits_below = [&](const std::vector<ReceiverSet>& seeds) {
        LinearForm f;
        for (auto T : down_set(targets, seeds)) f.add(RateVariable::split(priv, T, K), 1);
        return f;
      };
      for (int l : {l1, l2, l3}) {
        LinearForm lhs(t);
        for (auto T : up_set(targets, {priv.with(l)})) lhs.add(RateVariable::split(priv, T, K), 1);
        row(std::move(lhs), cx.whole(l), "common " + std::to_string(l));
      }
      auto b = [&](std::initializer_list<int> out) { return cx.bar(out); };
      const std::vector<std::vector<ReceiverSet>> seed_rows = {
          {b({l1, l2, l3})},
          {b({l1, l2})},
          {b({l1, l3})},
          {b({l2, l3})},
          {b({l1, l2}), b({l1, l3})},
          {b({l1, l2}), b({l2, l3})},
          {b({l1, l3}), b({l2, l3})},
          {b({l1, l2}), b({l1, l3}), b({l2, l3})},
          {b({l1})},
          {b({l1}), b({l2, l3})},
          {b({l2})},
          {b({l2}), b({l1, l3})},
          {b({l3})},
          {b({l3}), b({l1, l2})},
          {b({l1}), b({l2})},
          {b({l1}), b({l3})},
          {b({l2}), b({l3})},
          {b({l1}), b({l2}), b({l3})},
      };
      for (std::size_t r = 0; r < seed_rows.size(); ++r)
        for (int j : priv.members())
          row(splits_below(seed_rows[r]), cx.part(j, seed_rows[r]),
              "pattern " + std::to_string(r + 4) + " " + js + std::to_string(j));
      for (int j : priv.members()) row(sum_of({{t, 1}, {p, 1}}), cx.whole(j), "sum " + js + std::to_string(j));
      break;
    }
  }
  return sys;
}

// Projected region for two common receivers with the expansion F = up-set of E,
// written with general atoms as displayed for the dependent-codebook scheme.
inline SymbolicPolyhedron two_common_upset_region(int K) {
  const MessageSpec spec = closed_form_spec(ClosedForm::TwoCommon, K);
  const SetFamily P = power_family(K);
  const ReceiverSet priv = spec.private_receivers(), top = full_set(K);
  const ReceiverSet miss_k = complement_set(ReceiverSet{K}, K), miss_k1 = complement_set(ReceiverSet{K - 1}, K);
  auto fam = [&](std::initializer_list<ReceiverSet> s) { return SetFamily(K, std::vector<ReceiverSet>(s)); };
  auto atom = [&](int j, std::initializer_list<ReceiverSet> inf, std::initializer_list<ReceiverSet> cond) {
    return AtomSum(MutualInfoAtom{j, fam(inf), fam(cond)});
  };
  const AtomSum via_k1 = atom(K - 1, {miss_k, top}, {});
  const AtomSum via_k = atom(K, {miss_k1, top}, {});
  const auto p = spec.rate(1), t = spec.rate(2);
  using detail::sum_of;

  SymbolicPolyhedron sys;
  sys.K = K;
  sys.variables = {p, t};
  auto row = [&](LinearForm lhs, AtomSum rhs, std::string label) {
    sys.inequalities.push_back({std::move(lhs), std::move(rhs), std::move(label)});
  };
  row(LinearForm(t), via_k1, "common " + std::to_string(K - 1));
  row(LinearForm(t), via_k, "common " + std::to_string(K));
  for (int j : priv.members()) {
    const std::string js = " j=" + std::to_string(j);
    row(sum_of({{t, 1}, {p, 1}}), atom(j, {priv}, {}), "sum" + js);
    row(sum_of({{t, 1}, {p, 1}}), atom(j, {priv}, {top, miss_k}) + via_k1, "sum via K-1" + js);
    row(sum_of({{t, 1}, {p, 1}}), atom(j, {priv}, {top, miss_k1}) + via_k, "sum via K" + js);
    row(sum_of({{t, 2}, {p, 1}}), atom(j, {priv}, {miss_k, miss_k1}) + via_k1 + via_k, "weighted" + js);
    row(sum_of({{t, 2}, {p, 2}}),
        atom(j, {priv}, {miss_k, miss_k1}) + atom(j, {priv}, {top}) + via_k1 + via_k, "double" + js);
  }
  return sys;
}

inline std::string to_text(const SymbolicPolyhedron& sys) {
  std::string out;
  for (auto& e : sys.equalities) out += to_string(e) + " = 0\n";
  for (auto& r : sys.inequalities) out += to_string(r) + "\n";
  return out;
}

}  // namespace bcr
