#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcr/acceptance.hpp"
#include "bcr/bcr.hpp"
#include "bcr/report.hpp"

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kUsage = 2, kGuard = 3, kConfig = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  int receivers = 0;
  std::string messages;
  std::string expansion = "P";
  std::string assignment = "canonical";
  std::string point;
  std::string eliminate;
  std::string format = "text";
  std::string out;
  std::string generation = "auto";
  std::string source = "achievable";
  std::string left = "achievable", right = "capacity";
  bool minimal = false;
  bool cutset = false;
  std::vector<int> only;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

class Session {
 public:
  explicit Session(const Options& o) : o_(o) {}

  int K() {
    if (!o_.config.empty()) return network().K();
    if (o_.receivers > 0) return o_.receivers;
    throw UsageError("give --config or --receivers");
  }

  const bcr::CombinationNetwork& network() {
    if (o_.config.empty()) throw UsageError("this command needs --config");
    if (!net_) {
      net_ = bcr::load_network(o_.config);
      if (o_.receivers > 0 && o_.receivers != net_->K()) throw UsageError("--receivers disagrees with the config");
    }
    return *net_;
  }

  const bcr::MessageSpec& spec() {
    if (o_.messages.empty()) throw UsageError("this command needs --messages");
    if (!spec_) spec_ = bcr::parse_message_spec(o_.messages, K());
    return *spec_;
  }

  bcr::Expansion expansion() {
    static const std::map<std::string, bcr::ExpansionKind> kinds = {{"E", bcr::ExpansionKind::E},
                                                                    {"upE", bcr::ExpansionKind::UpE},
                                                                    {"upE+Sp", bcr::ExpansionKind::UpEPlusPrivate},
                                                                    {"P", bcr::ExpansionKind::P}};
    return bcr::make_expansion(spec(), kinds.at(o_.expansion));
  }

  const bcr::SymbolicPolyhedron& region() {
    if (!region_) {
      const bcr::Expansion F = expansion();
      if (o_.generation == "full")
        region_ = bcr::build_region(spec(), F, bcr::GenerationMode::Full);
      else if (o_.generation == "reduced")
        region_ = bcr::build_region(spec(), F, bcr::GenerationMode::Reduced);
      else
        region_ = bcr::build_region_auto(spec(), F);
    }
    return *region_;
  }

  bcr::AuxAssignment assignment() {
    if (o_.assignment == "canonical") return bcr::canonical_assignment(K());
    bcr::AuxAssignment a = bcr::named_assignment(bcr::parse_named_assignment(o_.assignment), K());
    a.validate(expansion().family());
    return a;
  }

  bcr::NumericPolyhedron instantiated() { return bcr::instantiate(region(), network(), assignment()); }

  bcr::NumericPolyhedron capacity() {
    if (o_.cutset) return bcr::cutset_bound(network(), spec());
    auto c = bcr::known_capacity(network(), spec());
    if (!c) throw UsageError("no capacity result for messages " + spec().to_string() + "; try --cutset");
    return bcr::merge_parallel(*c);
  }

  // A named polytope or a dump file.
  bcr::NumericPolyhedron polytope(const std::string& which) {
    if (which == "achievable") return bcr::achievable_polytope(region(), network(), assignment());
    if (which == "capacity") return capacity();
    if (which == "cutset") return bcr::cutset_bound(network(), spec());
    std::ifstream in(which);
    if (!in) throw UsageError("'" + which + "' is neither a polytope name nor a readable dump");
    bcr::Json j;
    try {
      j = bcr::Json::parse(in);
    } catch (const bcr::Json::exception& e) {
      throw bcr::ParseError("bad dump '" + which + "': " + e.what());
    }
    return bcr::polyhedron_from_json(j);
  }

 private:
  const Options& o_;
  std::optional<bcr::CombinationNetwork> net_;
  std::optional<bcr::MessageSpec> spec_;
  std::optional<bcr::SymbolicPolyhedron> region_;
};

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (auto f : allowed)
    if (o.format == f) return;
  throw UsageError("format '" + o.format + "' does not apply to this command");
}

std::string polyhedron_out(const Options& o, const bcr::NumericPolyhedron& p) {
  require_format(o, {"text", "dump"});
  return o.format == "dump" ? bcr::to_json(p).dump(2) + "\n" : bcr::to_text(p);
}

int run_region(Session& s, const Options& o, std::string& out) {
  require_format(o, {"text", "dump"});
  if (o.config.empty()) {
    out = o.format == "dump" ? bcr::to_json(s.region()).dump(2) + "\n" : bcr::to_text(s.region());
    return kOk;
  }
  out = polyhedron_out(o, s.instantiated());
  return kOk;
}

int run_project(Session& s, const Options& o, std::string& out) {
  const bcr::NumericPolyhedron full = s.instantiated();
  std::vector<std::size_t> drop;
  if (o.eliminate.empty()) {
    for (std::size_t k = 2; k < full.dim(); ++k) drop.push_back(k);
  } else {
    for (auto& name : split_list(o.eliminate)) drop.push_back(full.index_of(name));
  }
  bcr::NumericPolyhedron p = bcr::fme_eliminate(full, drop);
  if (o.minimal) p = bcr::remove_redundant(p);
  out = polyhedron_out(o, p);
  return kOk;
}

int run_capacity(Session& s, const Options& o, std::string& out) {
  bcr::NumericPolyhedron p = s.capacity();
  if (o.minimal) p = bcr::remove_redundant(p);
  out = polyhedron_out(o, p);
  return kOk;
}

int run_check(Session& s, const Options& o, std::string& out) {
  require_format(o, {"text", "dump"});
  if (o.point.empty()) throw UsageError("check needs --point");
  const bcr::RatePoint rates = bcr::parse_rate_point(s.spec(), o.point);
  const bcr::NumericPolyhedron full = s.instantiated();
  const bcr::FeasibilityVerdict v = bcr::decide(full, rates);
  out = o.format == "dump" ? bcr::to_json(v, full).dump(2) + "\n" : bcr::verdict_text(v, full);
  return v.feasible ? kOk : kInfeasible;
}

int run_compare(Session& s, const Options& o, std::string& out) {
  require_format(o, {"text", "dump"});
  const bcr::NumericPolyhedron a = s.polytope(o.left), b = s.polytope(o.right);
  const bool a_in_b = bcr::polytope_contains(b, a), b_in_a = bcr::polytope_contains(a, b);
  std::string relation = a_in_b && b_in_a ? "equal" : a_in_b ? "left inside right" : b_in_a ? "right inside left"
                                                                                              : "incomparable";
  std::optional<bcr::Point> outside_left, outside_right;
  if (auto sep = bcr::separating_vertex(b, a)) outside_left = sep->vertex;
  if (auto sep = bcr::separating_vertex(a, b)) outside_right = sep->vertex;
  if (o.format == "dump") {
    bcr::Json j = {{"kind", "comparison"}, {"variables", a.variables}, {"relation", relation}};
    auto point = [](const bcr::Point& p) {
      bcr::Json r = bcr::Json::array();
      for (auto& x : p) r.push_back(x.get_str());
      return r;
    };
    if (outside_left) j["right_vertex_outside_left"] = point(*outside_left);
    if (outside_right) j["left_vertex_outside_right"] = point(*outside_right);
    out = j.dump(2) + "\n";
    return kOk;
  }
  out = relation + "\n";
  if (outside_left) out += "right vertex outside left: " + bcr::point_text(*outside_left) + "\n";
  if (outside_right) out += "left vertex outside right: " + bcr::point_text(*outside_right) + "\n";
  return kOk;
}

int run_vertices(Session& s, const Options& o, std::string& out) {
  const bcr::NumericPolyhedron p = s.polytope(o.source);
  const std::vector<bcr::Point> v = bcr::enumerate_vertices(p);
  if (o.format == "csv") {
    out = bcr::vertices_csv(p.variables, v);
  } else if (o.format == "dump") {
    out = bcr::vertices_json(p.variables, v).dump(2) + "\n";
  } else {
    for (auto& x : v) out += bcr::point_text(x) + "\n";
  }
  return kOk;
}

int run_selftest(const Options& o) {
  return bcr::acceptance::run(std::cout, o.only) ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rate regions and capacity checks for two-message broadcast over combination networks.\n"
      "Receiver sets are digit strings (\"123\"), braced lists (\"{1,10}\") or a leading '~' for the\n"
      "complement in [1:K] (\"~3\" is every receiver but 3, \"~\" is all receivers).",
      "bcr"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--config", o.config, "Network config: 'K = n' then 'S = capacity' lines");
  app.add_option("--receivers", o.receivers, "Receiver count when no config is given")->check(CLI::Range(1, 16));
  app.add_option("--messages", o.messages, "The two message sets, \"S1,S2\"");
  app.add_option("--expansion", o.expansion, "Message index superset")
      ->check(CLI::IsMember({"E", "upE", "upE+Sp", "P"}));
  app.add_option("--assignment", o.assignment, "Auxiliary component assignment: canonical or a named one");
  app.add_option("--point", o.point, "Rate pair \"a/b,c/d\" for the two messages in order");
  app.add_option("--eliminate", o.eliminate, "Comma-separated variables to eliminate (default: all split rates)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "dump", "csv"}));
  app.add_option("--out", o.out, "Write output to this file");
  app.add_option("--generation", o.generation, "Down-set enumeration for region rows")
      ->check(CLI::IsMember({"full", "reduced", "auto"}));
  app.add_flag("--minimal", o.minimal, "Drop redundant rows");
  app.add_flag("--cutset", o.cutset, "Use the cut-set bound instead of a capacity result");

  auto* region = app.add_subcommand("region", "Print the rate region, symbolic or instantiated with --config");
  auto* project = app.add_subcommand("project", "Eliminate variables from the instantiated region");
  auto* capacity = app.add_subcommand("capacity", "Print the capacity polytope for the message set");
  auto* check = app.add_subcommand("check", "Decide whether a rate pair is achievable; exit 1 when not");
  auto* compare = app.add_subcommand("compare", "Compare two polytopes");
  compare->add_option("--left", o.left, "achievable, capacity, cutset or a dump file");
  compare->add_option("--right", o.right, "achievable, capacity, cutset or a dump file");
  auto* vertices = app.add_subcommand("vertices", "List the vertices of a polytope");
  vertices->add_option("--source", o.source, "achievable, capacity, cutset or a dump file");
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--only", o.only, "Criterion numbers to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::string out;
  int status = kOk;
  try {
    Session s(o);
    if (selftest->parsed()) return run_selftest(o);
    if (region->parsed()) status = run_region(s, o, out);
    if (project->parsed()) status = run_project(s, o, out);
    if (capacity->parsed()) status = run_capacity(s, o, out);
    if (check->parsed()) status = run_check(s, o, out);
    if (compare->parsed()) status = run_compare(s, o, out);
    if (vertices->parsed()) status = run_vertices(s, o, out);
  } catch (const bcr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const bcr::GuardError& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (o.out.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(o.out);
    if (!(f << out)) {
      std::cerr << "error: cannot write '" << o.out << "'\n";
      return kUsage;
    }
  }
  return status;
}
