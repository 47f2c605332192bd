#pragma once

// Structured dumps, CSV vertex lists and verdict text shared by the tools.

#include <json.hpp>

#include <string>
#include <vector>

#include "bcr/projection.hpp"
#include "bcr/regions.hpp"
#include "bcr/verify.hpp"

namespace bcr {

using Json = nlohmann::ordered_json;

inline std::string point_text(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + p[k].get_str();
  return s + ")";
}

namespace detail {

inline Json row_json(const Row<Rational>& r) {
  Json a = Json::array();
  for (auto& c : r.a) a.push_back(c.get_str());
  return {{"a", a}, {"b", r.b.get_str()}, {"label", r.label}};
}

inline Row<Rational> row_from_json(const Json& j, std::size_t dim) {
  Row<Rational> r;
  for (auto& c : j.at("a")) r.a.push_back(parse_rational(c.get<std::string>()));
  if (r.a.size() != dim) throw ParseError("row has " + std::to_string(r.a.size()) + " coefficients, expected " +
                                          std::to_string(dim));
  r.b = parse_rational(j.at("b").get<std::string>());
  if (j.contains("label")) r.label = j.at("label").get<std::string>();
  return r;
}

inline Json form_json(const LinearForm& f) {
  Json out = Json::object();
  for (auto& [v, c] : f.terms()) out[v.name()] = c.get_str();
  return out;
}

inline Json atoms_json(const AtomSum& s) {
  Json terms = Json::array();
  for (auto& [a, c] : s.terms()) terms.push_back({{"atom", to_string(a)}, {"coefficient", c.get_str()}});
  return {{"terms", terms}, {"constant", s.constant().get_str()}};
}

}  // namespace detail

inline Json to_json(const NumericPolyhedron& p) {
  Json eq = Json::array(), in = Json::array();
  for (auto& e : p.equalities) eq.push_back(detail::row_json(e));
  for (auto& r : p.inequalities) in.push_back(detail::row_json(r));
  return {{"kind", "polyhedron"}, {"variables", p.variables}, {"equalities", eq}, {"inequalities", in}};
}

inline NumericPolyhedron polyhedron_from_json(const Json& j) {
  if (j.value("kind", "") != "polyhedron") throw ParseError("dump is not a polyhedron");
  NumericPolyhedron p;
  p.variables = j.at("variables").get<std::vector<std::string>>();
  for (auto& e : j.at("equalities")) p.equalities.push_back(detail::row_from_json(e, p.dim()));
  for (auto& r : j.at("inequalities")) p.inequalities.push_back(detail::row_from_json(r, p.dim()));
  return p;
}

inline Json to_json(const SymbolicPolyhedron& s) {
  Json vars = Json::array(), eq = Json::array(), in = Json::array();
  for (auto& v : s.variables) vars.push_back(v.name());
  for (auto& e : s.equalities) eq.push_back({{"lhs", detail::form_json(e)}});
  for (auto& r : s.inequalities)
    in.push_back({{"lhs", detail::form_json(r.lhs)}, {"rhs", detail::atoms_json(r.rhs)}, {"label", r.label}});
  return {{"kind", "symbolic"}, {"K", s.K}, {"variables", vars}, {"equalities", eq}, {"inequalities", in}};
}

inline Json to_json(const FeasibilityVerdict& v, const NumericPolyhedron& full) {
  Json out = {{"kind", "verdict"}, {"feasible", v.feasible}};
  if (v.feasible) {
    Json w = Json::object();
    for (auto& [name, x] : v.witness) w[name] = x.get_str();
    out["witness"] = w;
    return out;
  }
  Json cert = Json::array();
  for (auto i : v.blocking_rows)
    cert.push_back({{"row", i},
                    {"label", full.inequalities[i].label},
                    {"text", to_string(full.inequalities[i], full.variables)}});
  out["certificate"] = cert;
  out["contradiction"] = v.contradiction;
  return out;
}

inline Json vertices_json(const std::vector<std::string>& names, const std::vector<Point>& pts) {
  Json rows = Json::array();
  for (auto& p : pts) {
    Json r = Json::array();
    for (auto& x : p) r.push_back(x.get_str());
    rows.push_back(r);
  }
  return {{"kind", "vertices"}, {"variables", names}, {"vertices", rows}};
}

inline std::string vertices_csv(const std::vector<std::string>& names, const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
  out += "\n";
  for (auto& p : pts) {
    for (std::size_t k = 0; k < p.size(); ++k) out += (k ? "," : "") + p[k].get_str();
    out += "\n";
  }
  return out;
}

inline std::string verdict_text(const FeasibilityVerdict& v, const NumericPolyhedron& full) {
  std::string out;
  if (v.feasible) {
    out = "FEASIBLE\n";
    for (auto& [name, x] : v.witness)
      if (x != 0) out += "  " + name + " = " + x.get_str() + "\n";
    return out;
  }
  out = "INFEASIBLE\n";
  for (auto i : v.blocking_rows)
    out += "  [" + full.inequalities[i].label + "] " + to_string(full.inequalities[i], full.variables) + "\n";
  return out;
}

}  // namespace bcr
