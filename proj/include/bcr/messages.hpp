#pragma once

// Two-groupcast message specifications, message-set expansion, up-set rate
// splitting and reconstruction rates.

#include <map>
#include <string>
#include <vector>

#include "bcr/lattice.hpp"
#include "bcr/rational.hpp"

namespace bcr {

struct RateVariable {
  enum class Kind { Message, Split, Reconstruction };

  Kind kind = Kind::Message;
  ReceiverSet origin;
  ReceiverSet target;
  int K = 1;

  static RateVariable message(ReceiverSet S, int K) { return {Kind::Message, S, S, K}; }
  static RateVariable split(ReceiverSet S, ReceiverSet T, int K) { return {Kind::Split, S, T, K}; }
  static RateVariable reconstruction(ReceiverSet T, int K) {
    return {Kind::Reconstruction, T, T, K};
  }

  std::string name() const {
    switch (kind) {
      case Kind::Message: return "R_{" + to_string(origin, K) + "}";
      case Kind::Split:
        return "R_{" + to_string(origin, K) + "->" + to_string(target, K) + "}";
      case Kind::Reconstruction: return "Rh_{" + to_string(target, K) + "}";
    }
    return {};
  }

  friend bool operator==(const RateVariable&, const RateVariable&) = default;
  friend std::strong_ordering operator<=>(const RateVariable& a, const RateVariable& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    if (auto c = a.origin <=> b.origin; c != 0) return c;
    if (auto c = a.target <=> b.target; c != 0) return c;
    return a.K <=> b.K;
  }
};

// Sparse linear expression over rate variables; zero terms are never stored.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(const RateVariable& v, const Rational& c = 1) { add(v, c); }

  void add(const RateVariable& v, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(v, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  LinearForm& operator+=(const LinearForm& o) {
    for (auto& [v, c] : o.terms_) add(v, c);
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    for (auto& [v, c] : o.terms_) add(v, -c);
    return *this;
  }
  LinearForm scaled(const Rational& s) const {
    LinearForm out;
    if (s != 0)
      for (auto& [v, c] : terms_) out.terms_.emplace(v, c * s);
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const RateVariable& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const std::map<RateVariable, Rational>& terms() const { return terms_; }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::map<RateVariable, Rational> terms_;
};

inline std::string coefficient_prefix(const Rational& c, bool first) {
  std::string out;
  Rational a = abs(c);
  if (first) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (a != 1) out += to_string(a);
  return out;
}

inline std::string to_string(const LinearForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [v, c] : f.terms()) {
    out += coefficient_prefix(c, first) + v.name();
    first = false;
  }
  return out;
}

class MessageSpec {
 public:
  MessageSpec(int K, ReceiverSet S1, ReceiverSet S2) : K_(K), S1_(S1), S2_(S2) {
    require_receiver_count(K);
    if (S1.empty() || S2.empty()) throw std::invalid_argument("message sets must be nonempty");
    if (!S1.within(K) || !S2.within(K)) throw std::invalid_argument("message set beyond K");
    if (S1 == S2) throw std::invalid_argument("the two message sets must differ");
  }

  int K() const { return K_; }
  ReceiverSet S1() const { return S1_; }
  ReceiverSet S2() const { return S2_; }
  ReceiverSet private_receivers() const { return S1_ & S2_; }
  ReceiverSet common1() const { return S1_ - S2_; }
  ReceiverSet common2() const { return S2_ - S1_; }
  bool nested() const { return S1_.subset_of(S2_) || S2_.subset_of(S1_); }
  SetFamily E() const { return SetFamily(K_, {S1_, S2_}); }

  RateVariable rate(int which) const {
    return RateVariable::message(which == 1 ? S1_ : S2_, K_);
  }

  std::string to_string() const {
    return "{" + bcr::to_string(S1_, K_) + "," + bcr::to_string(S2_, K_) + "}";
  }

 private:
  int K_;
  ReceiverSet S1_, S2_;
};

// "S1,S2" with each part in the receiver-set syntax ("~K" for a complement).
inline MessageSpec parse_message_spec(std::string_view text, int K) {
  int depth = 0;
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}') --depth;
    if (text[i] == ',' && depth == 0) {
      if (split != std::string_view::npos)
        throw std::invalid_argument("expected exactly two message sets in '" + std::string(text) + "'");
      split = i;
    }
  }
  if (split == std::string_view::npos)
    throw std::invalid_argument("expected \"S1,S2\" but got '" + std::string(text) + "'");
  return MessageSpec(K, parse_receiver_set(text.substr(0, split), K),
                     parse_receiver_set(text.substr(split + 1), K));
}

enum class ExpansionKind { E, UpE, UpEPlusPrivate, P };

class Expansion {
 public:
  Expansion(const MessageSpec& spec, SetFamily F) : F_(std::move(F)) {
    if (F_.K() != spec.K()) throw std::invalid_argument("expansion K differs from spec K");
    if (!F_.contains(spec.S1()) || !F_.contains(spec.S2()))
      throw std::invalid_argument("expansion must contain both message sets");
  }
  const SetFamily& family() const { return F_; }

 private:
  SetFamily F_;
};

inline Expansion make_expansion(const MessageSpec& spec, ExpansionKind kind) {
  const int K = spec.K();
  switch (kind) {
    case ExpansionKind::E: return Expansion(spec, spec.E());
    case ExpansionKind::UpE: return Expansion(spec, up_set(power_family(K), spec.E()));
    case ExpansionKind::UpEPlusPrivate: {
      if (spec.private_receivers().empty())
        throw std::invalid_argument("no private receivers to add to the expansion");
      auto F = up_set(power_family(K), spec.E());
      F.insert(spec.private_receivers());
      return Expansion(spec, F);
    }
    case ExpansionKind::P: return Expansion(spec, power_family(K));
  }
  throw std::invalid_argument("unknown expansion kind");
}

// Number of admissible expansions E ⊆ F ⊆ P.
inline Integer expansions_count(const MessageSpec& spec) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, full_mask(spec.K()) - 2);
  return out;
}

inline std::vector<RateVariable> split_variables(const MessageSpec& spec, const Expansion& F) {
  std::vector<RateVariable> out;
  for (auto S : {spec.S1(), spec.S2()})
    for (auto T : up_set(F.family(), {S})) out.push_back(RateVariable::split(S, T, spec.K()));
  return out;
}

// Each form is constrained to equal zero: R_S - sum of its split rates.
inline std::vector<LinearForm> split_equalities(const MessageSpec& spec, const Expansion& F) {
  std::vector<LinearForm> out;
  for (auto S : {spec.S1(), spec.S2()}) {
    LinearForm f(RateVariable::message(S, spec.K()));
    for (auto T : up_set(F.family(), {S})) f.add(RateVariable::split(S, T, spec.K()), -1);
    out.push_back(std::move(f));
  }
  return out;
}

inline LinearForm reconstruction_rate(const MessageSpec& spec, const Expansion& F,
                                      ReceiverSet target) {
  if (!F.family().contains(target)) throw std::invalid_argument("target not in expansion");
  LinearForm out;
  for (auto S : down_set(spec.E(), {target})) out.add(RateVariable::split(S, target, spec.K()), 1);
  return out;
}

}  // namespace bcr
