#pragma once

// Exact Fourier-Motzkin elimination with row provenance, implication-based
// redundancy removal, and a vertex-enumeration oracle.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcr/lattice.hpp"
#include "bcr/rational.hpp"
#include "bcr/regions.hpp"

namespace bcr {

inline constexpr std::size_t kVertexDimensionLimit = 8;
inline constexpr std::size_t kVertexRowLimit = 64;

class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a . x <= b for inequalities, a . x = b for equalities.
template <class Rhs>
struct Row {
  std::vector<Rational> a;
  Rhs b{};
  std::string label;
};

template <class Rhs>
struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<Row<Rhs>> inequalities;
  std::vector<Row<Rhs>> equalities;

  std::size_t dim() const { return variables.size(); }
  std::size_t index_of(const std::string& name) const {
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - variables.begin());
  }
  void add_inequality(std::vector<Rational> a, Rhs b, std::string label = {}) {
    inequalities.push_back({std::move(a), std::move(b), std::move(label)});
  }
  void add_equality(std::vector<Rational> a, Rhs b, std::string label = {}) {
    equalities.push_back({std::move(a), std::move(b), std::move(label)});
  }
};

using NumericPolyhedron = LinearSystem<Rational>;
using SymbolicRows = LinearSystem<AtomSum>;
using Point = std::vector<Rational>;

template <class Rhs>
struct RhsTraits;

template <>
struct RhsTraits<Rational> {
  static Rational combine(const Rational& x, const Rational& sx, const Rational& y, const Rational& sy) {
    return x * sx + y * sy;
  }
  static Rational scaled(const Rational& x, const Rational& s) { return x * s; }
  static bool tighter(const Rational& x, const Rational& y) { return x <= y; }
  static bool contradictory(const Rational& b) { return b < 0; }
  static bool vacuous(const Rational&) { return false; }
  static std::string show(const Rational& b) { return to_string(b); }
};

template <>
struct RhsTraits<AtomSum> {
  static AtomSum combine(const AtomSum& x, const Rational& sx, const AtomSum& y, const Rational& sy) {
    return x.scaled(sx) + y.scaled(sy);
  }
  static AtomSum scaled(const AtomSum& x, const Rational& s) { return x.scaled(s); }
  static bool tighter(const AtomSum& x, const AtomSum& y) { return never_exceeds(x, y); }
  static bool contradictory(const AtomSum& b) { return b.is_constant() && b.constant() < 0; }
  static bool vacuous(const AtomSum& b) { return never_exceeds(AtomSum(), b); }
  static std::string show(const AtomSum& b) { return to_string(b); }
};

inline bool all_zero(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0; });
}

template <class Rhs>
std::string to_string(const Row<Rhs>& r, const std::vector<std::string>& names, const char* sense = "<=") {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < r.a.size(); ++i) {
    if (r.a[i] == 0) continue;
    out += coefficient_prefix(r.a[i], first) + names[i];
    first = false;
  }
  if (first) out = "0";
  return out + " " + sense + " " + RhsTraits<Rhs>::show(r.b);
}

template <class Rhs>
std::string to_text(const LinearSystem<Rhs>& sys) {
  std::string out;
  for (auto& e : sys.equalities) out += to_string(e, sys.variables, "=") + "\n";
  for (auto& r : sys.inequalities) out += to_string(r, sys.variables) + "\n";
  return out;
}

// Symbolic system as rows over named variables, in declaration order.
inline SymbolicRows to_rows(const SymbolicPolyhedron& sym) {
  SymbolicRows out;
  std::map<RateVariable, std::size_t> index;
  for (auto& v : sym.variables) {
    index.emplace(v, out.variables.size());
    out.variables.push_back(v.name());
  }
  auto dense = [&](const LinearForm& f) {
    std::vector<Rational> a(out.variables.size());
    for (auto& [v, c] : f.terms()) {
      auto it = index.find(v);
      if (it == index.end()) throw std::invalid_argument("undeclared variable " + v.name());
      a[it->second] = c;
    }
    return a;
  };
  for (auto& e : sym.equalities) out.add_equality(dense(e), AtomSum());
  for (auto& r : sym.inequalities) out.add_inequality(dense(r.lhs), r.rhs, r.label);
  return out;
}

template <class Rhs>
void add_nonnegativity(LinearSystem<Rhs>& sys, const std::vector<std::size_t>& vars) {
  for (auto v : vars) {
    std::vector<Rational> a(sys.dim());
    a[v] = -1;
    sys.add_inequality(std::move(a), Rhs{}, sys.variables[v] + " >= 0");
  }
}

template <class Rhs>
void add_nonnegativity(LinearSystem<Rhs>& sys) {
  std::vector<std::size_t> all(sys.dim());
  std::iota(all.begin(), all.end(), std::size_t{0});
  add_nonnegativity(sys, all);
}

using History = boost::dynamic_bitset<>;

// Elimination state. Rows keep full width; eliminated columns stay zero.
template <class Rhs>
class Eliminator {
 public:
  using Traits = RhsTraits<Rhs>;

  // history: original rows combined into this one (for certificates).
  // basis: the same relative to the last restart of the pruning rule.
  struct Entry {
    Row<Rhs> row;
    History history;
    History basis;
  };
  struct Step {
    std::size_t var;
    bool substitution;
    std::vector<Row<Rhs>> rows;  // the pivot equality, or every row touching var
  };

  explicit Eliminator(const LinearSystem<Rhs>& sys, bool chernikov = true)
      : n_(sys.dim()), originals_(sys.inequalities.size()), chernikov_(chernikov), names_(sys.variables) {
    for (std::size_t i = 0; i < sys.inequalities.size(); ++i) {
      History h(originals_);
      h.set(i);
      push({sys.inequalities[i], h, h});
    }
    for (auto& e : sys.equalities) equalities_.push_back(e);
    normalize_equalities();
    prune();
  }

  bool infeasible() const { return contradiction_.has_value(); }
  const std::optional<Entry>& contradiction() const { return contradiction_; }
  const std::vector<Entry>& rows() const { return rows_; }
  const std::vector<Row<Rhs>>& equalities() const { return equalities_; }
  const std::vector<Step>& steps() const { return steps_; }

  // Uses an equality to substitute var away, when one mentions it.
  bool substitute(std::size_t var) {
    auto it = std::find_if(equalities_.begin(), equalities_.end(), [&](auto& e) { return e.a[var] != 0; });
    if (it == equalities_.end()) return false;
    Row<Rhs> pivot = *it;
    equalities_.erase(it);
    const Rational p = pivot.a[var];
    auto reduce = [&](Row<Rhs>& r) {
      if (r.a[var] == 0) return;
      const Rational f = -r.a[var] / p;
      for (std::size_t k = 0; k < n_; ++k) r.a[k] += f * pivot.a[k];
      r.a[var] = 0;
      r.b = Traits::combine(r.b, 1, pivot.b, f);
    };
    for (auto& e : equalities_) reduce(e);
    for (auto& en : rows_) reduce(en.row);
    steps_.push_back({var, true, {pivot}});
    normalize_equalities();
    rebuild();
    return true;
  }

  void eliminate(std::size_t var) {
    if (substitute(var)) return;
    std::vector<Entry> pos, neg, keep;
    for (auto& en : rows_) {
      const auto& c = en.row.a[var];
      (c > 0 ? pos : c < 0 ? neg : keep).push_back(std::move(en));
    }
    Step step{var, false, {}};
    for (auto* group : {&pos, &neg})
      for (auto& en : *group) step.rows.push_back(en.row);
    steps_.push_back(std::move(step));
    ++fme_steps_;
    rows_.clear();
    index_.clear();
    for (auto& en : keep) push(std::move(en));
    for (auto& p : pos)
      for (auto& q : neg) {
        History basis = p.basis | q.basis;
        if (chernikov_ && basis.count() > fme_steps_ + 1) continue;
        History h = p.history | q.history;
        const Rational sp = -q.row.a[var], sq = p.row.a[var];
        Row<Rhs> r;
        r.a.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) r.a[k] = p.row.a[k] * sp + q.row.a[k] * sq;
        r.a[var] = 0;
        r.b = Traits::combine(p.row.b, sp, q.row.b, sq);
        push({std::move(r), std::move(h), std::move(basis)});
      }
    prune();
  }

  // A row sum(a_k x_k) <= 0 with every a_k > 0 over nonnegative candidates
  // forces those x_k to zero. Pinned variables are substituted away; afterwards
  // the pruning rule restarts from the current rows.
  bool pin_forced_zeros(std::vector<std::size_t>& candidates) {
    if constexpr (!std::is_same_v<Rhs, Rational>) {
      return false;
    } else {
      bool any = false;
      for (;;) {
        std::map<std::size_t, std::size_t> nonneg;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          const auto& r = rows_[i].row;
          if (r.b != 0) continue;
          std::size_t support = 0, var = 0;
          for (std::size_t k = 0; k < n_; ++k)
            if (r.a[k] != 0) ++support, var = k;
          if (support == 1 && r.a[var] < 0) nonneg.emplace(var, i);
        }
        std::optional<std::size_t> forcing;
        for (std::size_t i = 0; i < rows_.size() && !forcing; ++i) {
          const auto& r = rows_[i].row;
          if (r.b != 0 || all_zero(r.a)) continue;
          bool ok = true;
          for (std::size_t k = 0; k < n_ && ok; ++k) {
            if (r.a[k] == 0) continue;
            ok = r.a[k] > 0 && nonneg.contains(k) &&
                 std::find(candidates.begin(), candidates.end(), k) != candidates.end();
          }
          if (ok) forcing = i;
        }
        if (!forcing) break;
        any = true;
        const Entry f = rows_[*forcing];
        History upper = f.history;
        for (std::size_t k = 0; k < n_; ++k)
          if (f.row.a[k] != 0) upper |= rows_[nonneg.at(k)].history;
        for (std::size_t k = 0; k < n_; ++k) {
          if (f.row.a[k] == 0) continue;
          const History lower = rows_[nonneg.at(k)].history;
          for (auto& en : rows_) {
            if (en.row.a[k] == 0) continue;
            en.history |= en.row.a[k] > 0 ? lower : upper;
            en.row.a[k] = 0;
          }
          for (auto& e : equalities_) e.a[k] = 0;
          std::vector<Rational> unit(n_);
          unit[k] = 1;
          steps_.push_back({k, true, {Row<Rhs>{std::move(unit), Rhs{}, "pinned"}}});
          candidates.erase(std::find(candidates.begin(), candidates.end(), k));
        }
        normalize_equalities();
        rebuild();
        if (infeasible()) break;
      }
      if (any) restart_basis();
      return any;
    }
  }

  // Elimination order: fewest generated rows first, then the lowest index.
  std::size_t pick(const std::vector<std::size_t>& candidates) const {
    std::optional<std::size_t> pivot;
    std::size_t pivot_uses = 0;
    for (auto v : candidates) {
      if (std::none_of(equalities_.begin(), equalities_.end(), [&](auto& e) { return e.a[v] != 0; })) continue;
      std::size_t uses = std::count_if(rows_.begin(), rows_.end(), [&](auto& en) { return en.row.a[v] != 0; });
      if (!pivot || uses < pivot_uses) pivot = v, pivot_uses = uses;
    }
    if (pivot) return *pivot;
    std::size_t best = candidates.front();
    long long best_cost = 0;
    bool have = false;
    for (auto v : candidates) {
      long long p = 0, q = 0;
      for (auto& en : rows_) {
        if (en.row.a[v] > 0) ++p;
        if (en.row.a[v] < 0) ++q;
      }
      long long cost = p * q - p - q;
      if (!have || cost < best_cost) {
        best = v;
        best_cost = cost;
        have = true;
      }
    }
    return best;
  }

  void eliminate_all(std::vector<std::size_t> vars) {
    for (auto v : vars)
      if (v >= n_) throw std::invalid_argument("variable index out of range");
    pin_forced_zeros(vars);
    while (!vars.empty() && !infeasible()) {
      std::size_t v = pick(vars);
      vars.erase(std::find(vars.begin(), vars.end(), v));
      eliminate(v);
      if (!infeasible()) pin_forced_zeros(vars);
    }
  }

  // Remaining system restricted to the listed columns.
  LinearSystem<Rhs> system(const std::vector<std::size_t>& keep) const {
    LinearSystem<Rhs> out;
    for (auto k : keep) out.variables.push_back(names_[k]);
    auto narrow = [&](const Row<Rhs>& r) {
      Row<Rhs> s{{}, r.b, r.label};
      for (auto k : keep) s.a.push_back(r.a[k]);
      return s;
    };
    for (auto& e : equalities_) out.equalities.push_back(narrow(e));
    for (auto& en : rows_) out.inequalities.push_back(narrow(en.row));
    if (contradiction_) out.inequalities.push_back(narrow(contradiction_->row));
    return out;
  }

 private:
  static void normalize(Row<Rhs>& r) {
    auto it = std::find_if(r.a.begin(), r.a.end(), [](const Rational& c) { return c != 0; });
    if (it == r.a.end()) return;
    const Rational s = 1 / Rational(abs(*it));
    if (s == 1) return;
    for (auto& c : r.a) c *= s;
    r.b = Traits::scaled(r.b, s);
  }

  void push(Entry en) {
    normalize(en.row);
    if (all_zero(en.row.a)) {
      if (Traits::contradictory(en.row.b)) {
        if (!contradiction_ || en.history.count() < contradiction_->history.count()) contradiction_ = en;
        return;
      }
      if (Traits::vacuous(en.row.b)) return;
    }
    auto& bucket = index_[en.row.a];
    for (auto idx : bucket)
      if (Traits::tighter(rows_[idx].row.b, en.row.b)) return;
    for (auto& idx : bucket)
      if (Traits::tighter(en.row.b, rows_[idx].row.b)) dead_.insert(idx);
    bucket.push_back(rows_.size());
    rows_.push_back(std::move(en));
  }

  void prune() {
    if (dead_.empty()) return;
    std::vector<Entry> live;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!dead_.contains(i)) live.push_back(std::move(rows_[i]));
    dead_.clear();
    rows_ = std::move(live);
    index_.clear();
    for (std::size_t i = 0; i < rows_.size(); ++i) index_[rows_[i].row.a].push_back(i);
  }

  void restart_basis() {
    fme_steps_ = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      rows_[i].basis = History(rows_.size());
      rows_[i].basis.set(i);
    }
  }

  void rebuild() {
    std::vector<Entry> old = std::move(rows_);
    rows_.clear();
    index_.clear();
    for (auto& en : old) push(std::move(en));
    prune();
  }

  void normalize_equalities() {
    std::vector<Row<Rhs>> kept;
    for (auto& e : equalities_) {
      if (all_zero(e.a)) {
        if (!(Traits::tighter(e.b, Rhs{}) && Traits::tighter(Rhs{}, e.b))) {
          History h(originals_);
          contradiction_ = Entry{{e.a, Rhs{}, "inconsistent equality"}, h, h};
          if constexpr (std::is_same_v<Rhs, Rational>) contradiction_->row.b = e.b > 0 ? Rational(-e.b) : e.b;
        }
        continue;
      }
      normalize(e);
      kept.push_back(std::move(e));
    }
    equalities_ = std::move(kept);
  }

  std::size_t n_;
  std::size_t originals_;
  bool chernikov_;
  std::size_t fme_steps_ = 0;
  std::vector<std::string> names_;
  std::vector<Entry> rows_;
  std::map<std::vector<Rational>, std::vector<std::size_t>> index_;
  std::set<std::size_t> dead_;
  std::vector<Row<Rhs>> equalities_;
  std::vector<Step> steps_;
  std::optional<Entry> contradiction_;
};

inline std::vector<std::size_t> complement_indices(std::size_t n, const std::vector<std::size_t>& drop) {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (std::find(drop.begin(), drop.end(), k) == drop.end()) keep.push_back(k);
  return keep;
}

template <class Rhs>
LinearSystem<Rhs> fme_eliminate(const LinearSystem<Rhs>& sys, const std::vector<std::size_t>& vars,
                                bool chernikov = true) {
  Eliminator<Rhs> el(sys, chernikov);
  el.eliminate_all(vars);
  return el.system(complement_indices(sys.dim(), vars));
}

template <class Rhs>
LinearSystem<Rhs> fme_eliminate(const LinearSystem<Rhs>& sys, const std::string& var) {
  return fme_eliminate(sys, std::vector<std::size_t>{sys.index_of(var)});
}

template <class Rhs>
LinearSystem<Rhs> fme_project(const LinearSystem<Rhs>& sys, const std::vector<std::string>& keep) {
  std::vector<std::size_t> keep_idx;
  for (auto& k : keep) keep_idx.push_back(sys.index_of(k));
  std::vector<std::size_t> drop;
  for (std::size_t k = 0; k < sys.dim(); ++k)
    if (std::find(keep_idx.begin(), keep_idx.end(), k) == keep_idx.end()) drop.push_back(k);
  Eliminator<Rhs> el(sys);
  el.eliminate_all(drop);
  return el.system(keep_idx);
}

// Substitutes numeric values for the atoms of a symbolic system.
template <class AtomValue>
NumericPolyhedron instantiate_rows(const SymbolicRows& sym, AtomValue&& value) {
  NumericPolyhedron out;
  out.variables = sym.variables;
  auto eval = [&](const AtomSum& s) {
    Rational v = s.constant();
    for (auto& [atom, c] : s.terms()) v += c * value(atom);
    return v;
  };
  for (auto& e : sym.equalities) out.add_equality(e.a, eval(e.b), e.label);
  for (auto& r : sym.inequalities) out.add_inequality(r.a, eval(r.b), r.label);
  return out;
}

inline Rational dot(const std::vector<Rational>& a, const Point& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * x[i];
  return s;
}

inline bool satisfies(const NumericPolyhedron& p, const Point& x) {
  for (auto& e : p.equalities)
    if (dot(e.a, x) != e.b) return false;
  for (auto& r : p.inequalities)
    if (dot(r.a, x) > r.b) return false;
  return true;
}

// Index of the first inequality violated by x, if any.
inline std::optional<std::size_t> first_violated(const NumericPolyhedron& p, const Point& x) {
  for (std::size_t i = 0; i < p.inequalities.size(); ++i)
    if (dot(p.inequalities[i].a, x) > p.inequalities[i].b) return i;
  return std::nullopt;
}

struct Feasibility {
  bool feasible = false;
  Point witness;                      // present when feasible
  std::vector<std::size_t> blocking;  // original inequality indices when infeasible
  std::string contradiction;          // final constant row when infeasible
};

// Eliminates every variable, then back-substitutes a point. Among admissible
// values each coordinate prefers 0, then its lower bound, then its upper bound.
inline Feasibility solve_feasibility(const NumericPolyhedron& sys) {
  Eliminator<Rational> el(sys);
  std::vector<std::size_t> all(sys.dim());
  std::iota(all.begin(), all.end(), std::size_t{0});
  el.eliminate_all(all);
  Feasibility out;
  if (el.infeasible()) {
    auto& c = *el.contradiction();
    for (auto i = c.history.find_first(); i != History::npos; i = c.history.find_next(i)) out.blocking.push_back(i);
    out.contradiction = "0 <= " + to_string(c.row.b);
    return out;
  }
  out.feasible = true;
  Point x(sys.dim());
  auto& steps = el.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const std::size_t v = it->var;
    if (it->substitution) {
      auto& e = it->rows.front();
      Rational rest = e.b;
      for (std::size_t k = 0; k < e.a.size(); ++k)
        if (k != v) rest -= e.a[k] * x[k];
      x[v] = rest / e.a[v];
      continue;
    }
    std::optional<Rational> lo, hi;
    for (auto& r : it->rows) {
      Rational rest = r.b;
      for (std::size_t k = 0; k < r.a.size(); ++k)
        if (k != v) rest -= r.a[k] * x[k];
      Rational bound = rest / r.a[v];
      if (r.a[v] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else if (!lo || bound > *lo) {
        lo = bound;
      }
    }
    if ((!lo || *lo <= 0) && (!hi || *hi >= 0))
      x[v] = 0;
    else if (lo)
      x[v] = *lo;
    else
      x[v] = *hi;
  }
  if (!satisfies(sys, x)) throw std::logic_error("back-substitution produced an infeasible point");
  out.witness = std::move(x);
  return out;
}

// Supremum of the objective over the polyhedron.
struct Maximum {
  enum class Kind { Finite, Unbounded, Empty } kind = Kind::Empty;
  Rational value;
};

inline Maximum maximize(const NumericPolyhedron& sys, const std::vector<Rational>& objective) {
  NumericPolyhedron lifted = sys;
  lifted.variables.push_back("__objective");
  for (auto& r : lifted.inequalities) r.a.push_back(0);
  for (auto& e : lifted.equalities) e.a.push_back(0);
  std::vector<Rational> link = objective;
  link.push_back(-1);
  lifted.add_equality(std::move(link), Rational(0));
  const std::size_t t = sys.dim();

  Eliminator<Rational> el(lifted);
  std::vector<std::size_t> vars(sys.dim());
  std::iota(vars.begin(), vars.end(), std::size_t{0});
  el.eliminate_all(vars);
  Maximum out;
  if (el.infeasible()) return out;
  std::optional<Rational> lo, hi;
  for (auto& e : el.equalities()) {
    if (e.a[t] == 0) continue;
    Rational v = e.b / e.a[t];
    lo = lo ? std::max(*lo, v) : v;
    hi = hi ? std::min(*hi, v) : v;
  }
  for (auto& en : el.rows()) {
    const auto& c = en.row.a[t];
    if (c == 0) continue;
    Rational v = en.row.b / c;
    if (c > 0)
      hi = hi ? std::min(*hi, v) : v;
    else
      lo = lo ? std::max(*lo, v) : v;
  }
  if (lo && hi && *lo > *hi) return out;
  if (!hi) {
    out.kind = Maximum::Kind::Unbounded;
    return out;
  }
  out.kind = Maximum::Kind::Finite;
  out.value = *hi;
  return out;
}

inline bool is_empty(const NumericPolyhedron& sys) {
  Eliminator<Rational> el(sys);
  std::vector<std::size_t> all(sys.dim());
  std::iota(all.begin(), all.end(), std::size_t{0});
  el.eliminate_all(all);
  return el.infeasible();
}

struct RedundancyReport {
  NumericPolyhedron result;
  std::vector<std::size_t> removed;    // input indices
  std::vector<std::size_t> unbounded;  // rows whose lhs is unbounded under the others
  bool empty = false;
};

// Tests rows from last to first; a row is dropped when the remaining rows
// already bound its lhs by its rhs. An empty input keeps only the rows that
// derive the contradiction.
inline RedundancyReport remove_redundant_report(const NumericPolyhedron& sys) {
  RedundancyReport rep;
  const std::size_t m = sys.inequalities.size();
  {
    Eliminator<Rational> el(sys);
    std::vector<std::size_t> all(sys.dim());
    std::iota(all.begin(), all.end(), std::size_t{0});
    el.eliminate_all(all);
    if (el.infeasible()) {
      rep.empty = true;
      rep.result.variables = sys.variables;
      rep.result.equalities = sys.equalities;
      auto& h = el.contradiction()->history;
      for (std::size_t i = 0; i < m; ++i) {
        if (h.test(i))
          rep.result.inequalities.push_back(sys.inequalities[i]);
        else
          rep.removed.push_back(i);
      }
      return rep;
    }
  }
  std::vector<bool> alive(m, true);
  for (std::size_t i = m; i-- > 0;) {
    NumericPolyhedron rest;
    rest.variables = sys.variables;
    rest.equalities = sys.equalities;
    for (std::size_t k = 0; k < m; ++k)
      if (k != i && alive[k]) rest.inequalities.push_back(sys.inequalities[k]);
    Maximum mx = maximize(rest, sys.inequalities[i].a);
    if (mx.kind == Maximum::Kind::Unbounded) {
      rep.unbounded.push_back(i);
      continue;
    }
    if (mx.kind == Maximum::Kind::Empty || mx.value <= sys.inequalities[i].b) alive[i] = false;
  }
  rep.result.variables = sys.variables;
  rep.result.equalities = sys.equalities;
  for (std::size_t i = 0; i < m; ++i) {
    if (alive[i])
      rep.result.inequalities.push_back(sys.inequalities[i]);
    else
      rep.removed.push_back(i);
  }
  std::reverse(rep.unbounded.begin(), rep.unbounded.end());
  return rep;
}

inline NumericPolyhedron remove_redundant(const NumericPolyhedron& sys) {
  return remove_redundant_report(sys).result;
}

// Rows sharing a left-hand side collapse to the tightest one, kept at its
// first position.
inline NumericPolyhedron merge_parallel(const NumericPolyhedron& sys) {
  NumericPolyhedron out;
  out.variables = sys.variables;
  out.equalities = sys.equalities;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (auto& r : sys.inequalities) {
    auto [it, fresh] = seen.try_emplace(r.a, out.inequalities.size());
    if (fresh)
      out.inequalities.push_back(r);
    else if (r.b < out.inequalities[it->second].b)
      out.inequalities[it->second] = r;
  }
  return out;
}

// Exact row echelon form used by the vertex search and hull code.
class Echelon {
 public:
  explicit Echelon(std::size_t n) : n_(n) {}

  std::size_t rank() const { return rows_.size(); }

  // Adds a+[b] when independent of the current rows.
  bool add(std::vector<Rational> a, Rational b) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (a[p] == 0) continue;
      const Rational f = a[p];
      for (std::size_t k = 0; k < n_; ++k) a[k] -= f * rows_[r][k];
      b -= f * rhs_[r];
    }
    auto it = std::find_if(a.begin(), a.end(), [](const Rational& c) { return c != 0; });
    if (it == a.end()) {
      inconsistent_ = inconsistent_ || b != 0;
      return false;
    }
    const std::size_t p = static_cast<std::size_t>(it - a.begin());
    const Rational inv = 1 / a[p];
    for (auto& c : a) c *= inv;
    b *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][p];
      if (f == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) rows_[r][k] -= f * a[k];
      rhs_[r] -= f * b;
    }
    rows_.push_back(std::move(a));
    rhs_.push_back(b);
    pivots_.push_back(p);
    return true;
  }

  bool inconsistent() const { return inconsistent_; }

  // Unique solution when the rank is full.
  Point solve() const {
    Point x(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = rhs_[r];
    return x;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const std::vector<Rational>& rhs() const { return rhs_; }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> pivots_;
  bool inconsistent_ = false;
};

inline void check_vertex_guard(const NumericPolyhedron& sys) {
  if (sys.dim() > kVertexDimensionLimit)
    throw GuardError("vertex enumeration in dimension " + std::to_string(sys.dim()) + " exceeds limit " +
                     std::to_string(kVertexDimensionLimit));
  if (sys.inequalities.size() + sys.equalities.size() > kVertexRowLimit)
    throw GuardError("vertex enumeration over " +
                     std::to_string(sys.inequalities.size() + sys.equalities.size()) + " rows exceeds limit " +
                     std::to_string(kVertexRowLimit));
}

inline bool is_bounded(const NumericPolyhedron& sys) {
  for (std::size_t k = 0; k < sys.dim(); ++k)
    for (int sign : {1, -1}) {
      std::vector<Rational> obj(sys.dim());
      obj[k] = sign;
      if (maximize(sys, obj).kind == Maximum::Kind::Unbounded) return false;
    }
  return true;
}

// All vertices of a bounded polyhedron in lexicographic order. An empty
// polyhedron yields no vertices.
inline std::vector<Point> enumerate_vertices(const NumericPolyhedron& sys) {
  check_vertex_guard(sys);
  const std::size_t n = sys.dim();
  if (is_empty(sys)) return {};
  if (!is_bounded(sys)) throw UnboundedError("polyhedron is unbounded");
  Echelon base(n);
  for (auto& e : sys.equalities) base.add(e.a, e.b);
  if (base.inconsistent()) return {};

  std::set<Point> found;
  const auto& rows = sys.inequalities;
  auto walk = [&](auto&& self, std::size_t start, const Echelon& ech) -> void {
    if (ech.rank() == n) {
      Point x = ech.solve();
      if (satisfies(sys, x)) found.insert(std::move(x));
      return;
    }
    if (rows.size() - start < n - ech.rank()) return;
    for (std::size_t i = start; i < rows.size(); ++i) {
      Echelon next = ech;
      if (!next.add(rows[i].a, rows[i].b)) continue;
      self(self, i + 1, next);
    }
  };
  walk(walk, 0, base);
  return {found.begin(), found.end()};
}

// Convex hull of points given as equalities plus facet inequalities over the
// same coordinates.
inline NumericPolyhedron hull_of_points(const std::vector<std::string>& names, const std::vector<Point>& pts) {
  const std::size_t n = names.size();
  NumericPolyhedron out;
  out.variables = names;
  if (pts.empty()) {
    out.add_inequality(std::vector<Rational>(n), Rational(-1), "empty");
    return out;
  }
  const Point& p0 = pts.front();
  // Affine hull: directions spanned by the point differences.
  Echelon span(n);
  for (auto& p : pts) {
    std::vector<Rational> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = p[k] - p0[k];
    span.add(std::move(d), 0);
  }
  const std::size_t r = span.rank();
  std::vector<bool> pivot(n, false);
  for (auto p : span.pivots()) pivot[p] = true;
  // Normals of the hull: one per free column of the span's reduced form.
  for (std::size_t f = 0; f < n; ++f) {
    if (pivot[f]) continue;
    std::vector<Rational> c(n);
    c[f] = 1;
    for (std::size_t i = 0; i < r; ++i) c[span.pivots()[i]] = -span.rows()[i][f];
    Rational rhs = dot(c, p0);
    out.add_equality(std::move(c), rhs, "affine hull");
  }
  if (r == 0) return out;

  // Inside the hull the pivot coordinates parametrize points one-to-one.
  std::vector<std::size_t> coords = span.pivots();
  std::sort(coords.begin(), coords.end());
  std::vector<Point> ys;
  for (auto& p : pts) {
    Point y;
    for (auto k : coords) y.push_back(p[k]);
    ys.push_back(std::move(y));
  }
  std::set<std::vector<Rational>> seen;
  std::vector<std::size_t> pick;
  auto consider = [&]() {
    Echelon ech(r);
    for (std::size_t i = 1; i < pick.size(); ++i) {
      std::vector<Rational> d(r);
      for (std::size_t k = 0; k < r; ++k) d[k] = ys[pick[i]][k] - ys[pick[0]][k];
      if (!ech.add(std::move(d), 0)) return;
    }
    std::vector<bool> piv(r, false);
    for (auto p : ech.pivots()) piv[p] = true;
    std::size_t free_col = r;
    for (std::size_t k = 0; k < r; ++k)
      if (!piv[k]) free_col = k;
    std::vector<Rational> c(r);
    c[free_col] = 1;
    for (std::size_t i = 0; i < ech.rank(); ++i) c[ech.pivots()[i]] = -ech.rows()[i][free_col];
    const Rational d = dot(c, ys[pick[0]]);
    int side = 0;
    for (auto& y : ys) {
      Rational v = dot(c, y) - d;
      int s = v > 0 ? 1 : v < 0 ? -1 : 0;
      if (s == 0) continue;
      if (side == 0) side = s;
      if (s != side) return;
    }
    if (side == 0) return;
    std::vector<Rational> a(n);
    Rational b = side > 0 ? Rational(-d) : d;
    for (std::size_t k = 0; k < r; ++k) a[coords[k]] = side > 0 ? Rational(-c[k]) : c[k];
    auto it = std::find_if(a.begin(), a.end(), [](const Rational& v) { return v != 0; });
    const Rational s = 1 / Rational(abs(*it));
    for (auto& v : a) v *= s;
    b *= s;
    std::vector<Rational> key = a;
    key.push_back(b);
    if (seen.insert(key).second) out.add_inequality(std::move(a), b, "facet");
  };
  auto choose = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == r) {
      consider();
      return;
    }
    for (std::size_t i = start; i + (r - pick.size()) <= ys.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);
  return out;
}

inline NumericPolyhedron project_by_vertices(const NumericPolyhedron& sys, const std::vector<std::string>& keep) {
  std::vector<std::size_t> idx;
  for (auto& k : keep) idx.push_back(sys.index_of(k));
  std::set<Point> projected;
  for (auto& v : enumerate_vertices(sys)) {
    Point y;
    for (auto k : idx) y.push_back(v[k]);
    projected.insert(std::move(y));
  }
  return hull_of_points(keep, {projected.begin(), projected.end()});
}

// True iff every vertex of inner satisfies every row of outer.
inline bool polytope_contains(const NumericPolyhedron& outer, const NumericPolyhedron& inner) {
  if (outer.variables != inner.variables) throw std::invalid_argument("variable lists differ");
  for (auto& v : enumerate_vertices(inner))
    if (!satisfies(outer, v)) return false;
  return true;
}

inline bool polytopes_equal(const NumericPolyhedron& a, const NumericPolyhedron& b) {
  return polytope_contains(a, b) && polytope_contains(b, a);
}

struct Separation {
  Point vertex;     // vertex of the outer polytope
  std::size_t row;  // inequality of the inner polytope it violates
};

// A vertex of outer outside inner certifies that inner is a strict subset.
inline std::optional<Separation> separating_vertex(const NumericPolyhedron& outer, const NumericPolyhedron& inner) {
  for (auto& v : enumerate_vertices(outer)) {
    if (auto r = first_violated(inner, v)) return Separation{v, *r};
    for (auto& e : inner.equalities)
      if (dot(e.a, v) != e.b) return Separation{v, inner.inequalities.size()};
  }
  return std::nullopt;
}

}  // namespace bcr
