#pragma once

// Combination networks, auxiliary component assignments, and exact atom
// evaluation by entropy counting over independent uniform link components.

#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcr/lattice.hpp"
#include "bcr/messages.hpp"
#include "bcr/projection.hpp"
#include "bcr/rational.hpp"
#include "bcr/regions.hpp"

namespace bcr {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One noiseless link per nonempty receiver subset, indexed by mask.
class CombinationNetwork {
 public:
  explicit CombinationNetwork(int K) : K_(K) {
    require_receiver_count(K);
    cap_.assign(std::size_t{full_mask(K)} + 1, Rational(0));
  }

  int K() const { return K_; }
  const Rational& capacity(ReceiverSet S) const {
    check(S);
    return cap_[S.bits()];
  }
  void set_capacity(ReceiverSet S, const Rational& c) {
    check(S);
    if (c < 0) throw std::invalid_argument("negative capacity for link " + to_string(S, K_));
    cap_[S.bits()] = c;
  }

 private:
  void check(ReceiverSet S) const {
    if (S.empty() || !S.within(K_)) throw std::invalid_argument("link set outside P(K)");
  }

  int K_;
  std::vector<Rational> cap_;
};

inline Rational modular_capacity(const CombinationNetwork& net, const SetFamily& W) {
  Rational s = 0;
  for (auto S : W) s += net.capacity(S);
  return s;
}

// Uniform random capacities p/q with p in [0, max_numerator], q in denominators.
template <class Rng>
CombinationNetwork random_network(int K, Rng& rng, int max_numerator = 4,
                                  const std::vector<int>& denominators = {1, 2, 3}) {
  CombinationNetwork net(K);
  std::uniform_int_distribution<int> num(0, max_numerator);
  std::uniform_int_distribution<std::size_t> den(0, denominators.size() - 1);
  for (Mask m = 1; m <= full_mask(K); ++m) net.set_capacity(ReceiverSet(m), ratio(num(rng), denominators[den(rng)]));
  return net;
}

enum class AssignmentMode { Independent, Strict };

// Which link components each auxiliary index carries.
class AuxAssignment {
 public:
  AuxAssignment(int K, AssignmentMode mode, std::string name = {})
      : K_(K), mode_(mode), name_(std::move(name)) {
    require_receiver_count(K);
  }

  int K() const { return K_; }
  AssignmentMode mode() const { return mode_; }
  const std::string& name() const { return name_; }
  const std::map<ReceiverSet, SetFamily>& components() const { return map_; }

  void assign(ReceiverSet T, SetFamily carried) {
    if (T.empty() || !T.within(K_)) throw std::invalid_argument("auxiliary index outside P(K)");
    if (carried.K() != K_) throw std::invalid_argument("component family has a different K");
    map_.insert_or_assign(T, std::move(carried));
  }
  bool assigned(ReceiverSet T) const { return map_.contains(T); }
  const SetFamily& of(ReceiverSet T) const {
    auto it = map_.find(T);
    if (it == map_.end()) throw std::invalid_argument("auxiliary U_" + to_string(T, K_) + " is unassigned");
    return it->second;
  }

  // Every index of F assigned; in strict mode each U_T also carries the
  // components of every cloud above it in F.
  void validate(const SetFamily& F) const {
    for (auto T : F) of(T);
    if (mode_ != AssignmentMode::Strict) return;
    for (auto T : F)
      for (auto up : up_set(F, {T})) {
        if (up == T) continue;
        if (!of(T).includes(of(up)))
          throw std::invalid_argument("U_" + to_string(T, K_) + " does not carry the components of U_" +
                                      to_string(up, K_));
      }
  }

 private:
  int K_;
  AssignmentMode mode_;
  std::string name_;
  std::map<ReceiverSet, SetFamily> map_;
};

inline AuxAssignment canonical_assignment(int K) {
  AuxAssignment a(K, AssignmentMode::Independent, "canonical");
  for (auto S : power_family(K)) a.assign(S, SetFamily(K, {S}));
  return a;
}

inline AuxAssignment canonical_assignment(const CombinationNetwork& net, const Expansion& F) {
  if (F.family() != power_family(net.K())) throw std::invalid_argument("canonical assignment needs F = P");
  return canonical_assignment(net.K());
}

enum class NamedAssignment {
  OneCommon,
  TwoCommon,
  TwoOrderKMinus1,
  SixReceiverA,
  SixReceiverB,
  SevenReceiver,
  ThreeReceiverChoice1,
  ThreeReceiverChoice2,
};

inline const std::vector<std::pair<std::string, NamedAssignment>>& named_assignment_table() {
  static const std::vector<std::pair<std::string, NamedAssignment>> table = {
      {"sec7_one_common", NamedAssignment::OneCommon},
      {"sec7_two_common", NamedAssignment::TwoCommon},
      {"sec7_two_orderKminus1", NamedAssignment::TwoOrderKMinus1},
      {"example7_A", NamedAssignment::SixReceiverA},
      {"example7_B", NamedAssignment::SixReceiverB},
      {"example8", NamedAssignment::SevenReceiver},
      {"example6_choice1", NamedAssignment::ThreeReceiverChoice1},
      {"example6_choice2", NamedAssignment::ThreeReceiverChoice2},
  };
  return table;
}

inline NamedAssignment parse_named_assignment(const std::string& name) {
  for (auto& [key, value] : named_assignment_table())
    if (key == name) return value;
  throw std::invalid_argument("unknown assignment '" + name + "'");
}

inline std::string assignment_name(NamedAssignment which) {
  for (auto& [key, value] : named_assignment_table())
    if (value == which) return key;
  return "unknown";
}

namespace detail {

// Only the listed auxiliaries carry components; the rest are constants.
inline AuxAssignment sparse_assignment(int K, const std::string& name,
                                       std::initializer_list<std::pair<const char*, const char*>> pairs) {
  AuxAssignment a(K, AssignmentMode::Independent, name);
  for (auto S : power_family(K)) a.assign(S, SetFamily(K));
  for (auto& [aux, link] : pairs)
    a.assign(parse_receiver_set(aux, K), SetFamily(K, {parse_receiver_set(link, K)}));
  return a;
}

}  // namespace detail

inline AuxAssignment named_assignment(NamedAssignment which, int K) {
  const std::string name = assignment_name(which);
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(name + " needs " + what);
  };
  const SetFamily P = power_family(K);
  auto drop = [&](std::initializer_list<int> out) { return complement_set(ReceiverSet(out), K, true); };
  switch (which) {
    case NamedAssignment::OneCommon: {
      need(K >= 2, "K >= 2");
      AuxAssignment a(K, AssignmentMode::Strict, name);
      a.assign(full_set(K), messages_for_receiver(P, K));
      a.assign(drop({K}), P);
      return a;
    }
    case NamedAssignment::TwoCommon:
    case NamedAssignment::TwoOrderKMinus1: {
      need(K >= 3, "K >= 3");
      AuxAssignment a(K, AssignmentMode::Strict, name);
      const SetFamily w_k1 = messages_for_receiver(P, K - 1);
      a.assign(full_set(K), up_set(w_k1, {ReceiverSet{K - 1, K}}));
      a.assign(drop({K}), w_k1);
      a.assign(drop({K - 1}), messages_for_receiver(P, K));
      a.assign(drop({K - 1, K}), P);
      return a;
    }
    case NamedAssignment::SixReceiverA:
      need(K == 6, "K = 6");
      return detail::sparse_assignment(K, name, {{"124", "124"}, {"135", "135"}, {"236", "236"}});
    case NamedAssignment::SixReceiverB:
      need(K == 6, "K = 6");
      return detail::sparse_assignment(K, name, {{"123", "236"}, {"124", "124"}, {"135", "135"}});
    case NamedAssignment::SevenReceiver:
      need(K == 7, "K = 7");
      return detail::sparse_assignment(K, name,
                                       {{"12345", "1245"},
                                        {"12347", "1347"},
                                        {"12357", "1257"},
                                        {"1235", "2356"},
                                        {"1237", "2367"},
                                        {"1346", "1346"}});
    case NamedAssignment::ThreeReceiverChoice1:
    case NamedAssignment::ThreeReceiverChoice2: {
      need(K == 3, "K = 3");
      AuxAssignment a(K, AssignmentMode::Independent, name);
      auto fam = [&](std::initializer_list<const char*> links) {
        SetFamily f(K);
        for (auto l : links) f.insert(parse_receiver_set(l, K));
        return f;
      };
      if (which == NamedAssignment::ThreeReceiverChoice1) {
        a.assign(ReceiverSet{1, 2, 3}, fam({"123", "23"}));
        a.assign(ReceiverSet{1, 2}, fam({"2", "12"}));
        a.assign(ReceiverSet{1, 3}, fam({"3", "13"}));
        a.assign(ReceiverSet{1}, fam({"1"}));
      } else {
        a.assign(ReceiverSet{1, 2, 3}, fam({"23"}));
        a.assign(ReceiverSet{1, 2}, fam({"2"}));
        a.assign(ReceiverSet{1, 3}, fam({"3"}));
        a.assign(ReceiverSet{1}, fam({"1", "12", "13", "123"}));
      }
      return a;
    }
  }
  throw std::invalid_argument("unknown assignment");
}

inline SetFamily carried_components(const AuxAssignment& asg, const SetFamily& aux) {
  SetFamily out(asg.K());
  for (auto T : aux) out = family_union(out, asg.of(T));
  return out;
}

// H(Y_j | U_cond) - H(Y_j | U_inf, U_cond) with H(Y_j | U_C) = C over the links
// Y_j sees that U_C does not carry.
inline Rational evaluate_atom(const CombinationNetwork& net, const AuxAssignment& asg, const MutualInfoAtom& atom) {
  if (asg.K() != net.K() || atom.informed.K() != net.K())
    throw std::invalid_argument("atom, assignment and network disagree on K");
  const SetFamily inf = carried_components(asg, atom.informed);
  const SetFamily cond = carried_components(asg, atom.conditioned);
  Rational v = 0;
  for (auto S : family_union(inf, cond))
    if (S.contains(atom.receiver) && !cond.contains(S)) v += net.capacity(S);
  return v;
}

inline Rational evaluate(const CombinationNetwork& net, const AuxAssignment& asg, const AtomSum& s) {
  Rational v = s.constant();
  for (auto& [atom, c] : s.terms()) v += c * evaluate_atom(net, asg, atom);
  return v;
}

// Replaces every atom by its value and appends nonnegativity for all rates.
inline NumericPolyhedron instantiate(const SymbolicPolyhedron& sym, const CombinationNetwork& net,
                                     const AuxAssignment& asg) {
  std::map<MutualInfoAtom, Rational> cache;
  NumericPolyhedron out = instantiate_rows(to_rows(sym), [&](const MutualInfoAtom& a) {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, evaluate_atom(net, asg, a)).first;
    return it->second;
  });
  add_nonnegativity(out);
  return out;
}

// "K = n" then "S = value" lines; '#' starts a comment; omitted links are 0.
inline CombinationNetwork parse_network(std::istream& in) {
  std::optional<CombinationNetwork> net;
  std::map<ReceiverSet, int> seen;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) -> void {
    throw ConfigError("line " + std::to_string(lineno) + ": " + why);
  };
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "K") {
      if (net) fail("K given twice");
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) fail("K must be an integer");
      int K = std::stoi(value);
      if (K < 1 || K > kMaxReceivers) fail("K must lie in 1.." + std::to_string(kMaxReceivers));
      net.emplace(K);
      continue;
    }
    if (!net) fail("K must be declared before any link");
    if (key.empty() || key.front() == '~') fail("unknown key '" + key + "'");
    ReceiverSet S;
    try {
      S = parse_receiver_set(key, net->K());
    } catch (const std::invalid_argument& e) {
      fail("unknown key '" + key + "' (" + e.what() + ")");
    }
    if (seen.contains(S)) fail("link " + key + " given twice");
    seen.emplace(S, lineno);
    Rational c;
    try {
      c = parse_rational(value);
    } catch (const ParseError& e) {
      fail(e.what());
    }
    if (c < 0) fail("negative capacity for link " + key);
    net->set_capacity(S, c);
  }
  if (!net) throw ConfigError("missing K declaration");
  return *net;
}

inline CombinationNetwork parse_network(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

inline CombinationNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_network(in);
}

inline std::string to_config(const CombinationNetwork& net) {
  std::string out = "K = " + std::to_string(net.K()) + "\n";
  for (auto S : power_family(net.K()))
    if (net.capacity(S) != 0) out += to_string(S, net.K()) + " = " + to_string(net.capacity(S)) + "\n";
  return out;
}

}  // namespace bcr
