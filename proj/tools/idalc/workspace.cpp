#include "workspace.hpp"

#include <fstream>

namespace idalc {

using namespace idalkit;

namespace {

const char* const kKinds[] = {"rings", "modules", "maps", "idals", "schemes", "glued"};

struct Guard {
  std::set<std::string>& s;
  std::string key;
  ~Guard() { s.erase(key); }
};

Column parse_column(const PolyRing& r, const Json& j, std::size_t expected, const std::string& what) {
  if (!j.is_array() || j.size() != expected)
    throw Error(what + ": expected a column of " + std::to_string(expected) + " entries");
  Column c;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      c.push_back(r.constant(Coeff(e.get<long>())));
    } else if (e.is_string()) {
      c.push_back(r.parse(e.get<std::string>()));
    } else {
      throw Error(what + ": entries must be strings or integers");
    }
  }
  return c;
}

std::vector<Column> parse_matrix(const PolyRing& r, const Json& j, std::size_t cols, std::size_t rows,
                                 const std::string& what) {
  if (!j.is_array() || j.size() != cols)
    throw Error(what + ": expected " + std::to_string(cols) + " columns");
  std::vector<Column> out;
  for (const auto& c : j) out.push_back(parse_column(r, c, rows, what));
  return out;
}

}  // namespace

void Workspace::add(const Json& doc) {
  if (!doc.is_object()) throw Error("workspace document must be a JSON object");
  for (const auto& [kind, table] : doc.items()) {
    if (std::find(std::begin(kKinds), std::end(kKinds), kind) == std::end(kKinds))
      throw Error("unknown workspace section '" + kind + "'");
    for (const auto& [name, value] : table.items()) {
      if (!names_.insert(name).second) throw Error("duplicate name '" + name + "'");
      raw_[kind][name] = value;
    }
  }
}

void Workspace::add_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open workspace file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in '" + path + "': " + e.what());
  }
  add(doc);
}

void Workspace::resolve_all() {
  for (const auto& [kind, table] : raw_)
    for (const auto& [name, value] : table) {
      if (kind == "rings") ring(name);
      if (kind == "modules") module(name);
      if (kind == "maps") map(name);
      if (kind == "idals") idal(name);
      if (kind == "schemes") scheme(name);
      if (kind == "glued") glued(name);
    }
}

bool Workspace::has(const std::string& kind, const std::string& name) const {
  auto it = raw_.find(kind);
  return it != raw_.end() && it->second.count(name);
}

const Json& Workspace::entry(const std::string& kind, const std::string& name) const {
  auto it = raw_.find(kind);
  if (it == raw_.end() || !it->second.count(name)) throw Error("unresolved name '" + name + "'");
  return it->second.at(name);
}

void Workspace::enter(const std::string& key) {
  if (!resolving_.insert(key).second) throw Error("cyclic reference at '" + key + "'");
}

RingPtr Workspace::ring(const std::string& name) {
  if (auto it = rings_.find(name); it != rings_.end()) return it->second;
  auto dot = name.rfind('.');
  if (dot != std::string::npos && !has("rings", name)) {
    std::string s = name.substr(0, dot), part = name.substr(dot + 1);
    auto sch = scheme(s);
    if (part == "chart1") return sch->chart1;
    if (part == "chart2") return sch->chart2;
    if (part == "overlap" && sch->affine()) return sch->aff().o1.ring;
    throw Error("unresolved name '" + name + "'");
  }
  const Json& j = entry("rings", name);
  enter("rings/" + name);
  Guard g{resolving_, "rings/" + name};
  Field field = parse_field(j.value("field", std::string("QQ")));
  auto vars = j.at("vars").get<std::vector<std::string>>();
  Order order = parse_order(j.value("order", std::string("grevlex")));
  auto quotient = j.value("quotient", std::vector<std::string>{});
  auto weights = j.value("weights", std::vector<int>{});
  auto r = PolyRing::make(field, vars, order, quotient, weights);
  rings_[name] = r;
  return r;
}

PresentedModule Workspace::module(const std::string& name) {
  if (auto it = modules_.find(name); it != modules_.end()) return it->second;
  if (name.rfind("O:", 0) == 0) return unit_module(ring(name.substr(2)));
  const Json& j = entry("modules", name);
  enter("modules/" + name);
  Guard g{resolving_, "modules/" + name};
  auto r = ring(j.at("ring").get<std::string>());
  std::optional<Grading> grading;
  if (j.contains("grading") && !j.at("grading").is_null()) grading = j.at("grading").get<Grading>();
  PresentedModule m;
  if (j.contains("free")) {
    m = free_module(r, j.at("free").get<std::size_t>(), grading);
  } else {
    std::size_t gens = j.at("gens").get<std::size_t>();
    std::vector<Column> rels;
    if (j.contains("relations"))
      for (const auto& c : j.at("relations")) rels.push_back(parse_column(*r, c, gens, "module " + name));
    m = PresentedModule(r, gens, rels, grading);
  }
  modules_[name] = m;
  return m;
}

ModuleMap Workspace::map(const std::string& name) {
  if (auto it = maps_.find(name); it != maps_.end()) return it->second;
  const Json& j = entry("maps", name);
  enter("maps/" + name);
  Guard g{resolving_, "maps/" + name};
  auto s = module(j.at("source").get<std::string>()), t = module(j.at("target").get<std::string>());
  if (!same_ring(s, t)) throw Error("map " + name + ": source and target rings differ");
  ModuleMap f{s, t, parse_matrix(*t.ring(), j.at("matrix"), s.gens(), t.gens(), "map " + name)};
  if (!well_defined(f)) throw Error("map " + name + " is not well-defined");
  maps_[name] = f;
  return f;
}

Idal Workspace::idal(const std::string& name) {
  if (auto it = idals_.find(name); it != idals_.end()) return it->second;
  const Json& j = entry("idals", name);
  enter("idals/" + name);
  Guard g{resolving_, "idals/" + name};
  Idal out;
  if (j.contains("map")) {
    auto f = map(j.at("map").get<std::string>());
    if (f.target.gens() != 1 || !f.target.relations().empty()) throw Error("idal " + name + ": map must target O");
    out = make_idal(f);
  } else if (j.contains("reflect")) {
    out = idal_reflect(map(j.at("reflect").get<std::string>())).idal;
  } else {
    auto r = ring(j.at("ring").get<std::string>());
    if (j.contains("principal")) {
      out = principal_idal(r, r->parse(j.at("principal").get<std::string>()));
    } else if (j.contains("ideal")) {
      std::vector<Poly> gens;
      for (const auto& s : j.at("ideal")) gens.push_back(r->parse(s.get<std::string>()));
      out = idal_from_ideal(gens, r);
    } else if (j.value("identity", false)) {
      out = identity_idal(r);
    } else {
      throw Error("idal " + name + ": expected map, reflect, principal, ideal or identity");
    }
  }
  idals_[name] = out;
  return out;
}

SchemePtr Workspace::scheme(const std::string& name) {
  if (auto it = schemes_.find(name); it != schemes_.end()) return it->second;
  const Json& j = entry("schemes", name);
  enter("schemes/" + name);
  Guard g{resolving_, "schemes/" + name};
  SchemePtr out;
  if (j.contains("preset")) {
    auto p = j.at("preset").get<std::string>();
    Field field = parse_field(j.value("field", std::string("QQ")));
    if (p == "P1") {
      out = projective_line(field);
    } else if (p == "double-origin-line") {
      out = double_origin(1, field);
    } else if (p == "double-origin-plane") {
      out = double_origin(2, field);
    } else {
      throw Error("unknown scheme preset '" + p + "'");
    }
  } else if (j.contains("self_glue")) {
    out = self_glue_scheme(name, idal(j.at("self_glue").get<std::string>()));
  } else if (j.contains("affine")) {
    const Json& a = j.at("affine");
    out = affine_scheme(name, ring(a.at("chart1").get<std::string>()), a.at("f1").get<std::string>(),
                        a.value("inv1", std::string("u")), ring(a.at("chart2").get<std::string>()),
                        a.at("f2").get<std::string>(), a.value("inv2", std::string("v")),
                        a.at("images2").get<std::vector<std::string>>(), a.at("images1").get<std::vector<std::string>>());
  } else {
    throw Error("scheme " + name + ": expected preset, self_glue or affine");
  }
  schemes_[name] = out;
  return out;
}

GluedModule Workspace::glued(const std::string& name) {
  if (auto it = glued_.find(name); it != glued_.end()) return it->second;
  const Json& j = entry("glued", name);
  enter("glued/" + name);
  Guard g{resolving_, "glued/" + name};
  auto s = scheme(j.at("scheme").get<std::string>());
  GluedModule out;
  if (j.contains("twist")) {
    if (!s->affine() || s->chart1->nvars() != 1) throw Error("glued " + name + ": twists need the P1 preset");
    out = p1_standard(s, j.at("twist").get<long>());
  } else if (j.value("structure", false)) {
    out = structure_sheaf(s);
  } else if (j.contains("chart_idal")) {
    out = chart_idal(s, j.at("chart_idal").get<int>()).carrier;
  } else {
    auto m1 = module(j.at("m1").get<std::string>()), m2 = module(j.at("m2").get<std::string>());
    std::size_t level = j.value("level", std::size_t{0}), inv_level = j.value("inv_level", std::size_t{0});
    const PolyRing& r = s->affine() ? *s->aff().o1.ring : *s->chart1;
    std::size_t tau_cols = m2.gens(), inv_cols = m1.gens();
    if (!s->affine()) {
      tau_cols *= idal_tensor_power(s->self().j, level).carrier.gens();
      inv_cols *= idal_tensor_power(s->self().j, inv_level).carrier.gens();
    }
    auto tau = parse_matrix(r, j.at("tau"), tau_cols, m1.gens(), "glued " + name + " tau");
    std::optional<std::vector<Column>> inv;
    if (j.contains("tau_inv")) inv = parse_matrix(r, j.at("tau_inv"), inv_cols, m2.gens(), "glued " + name + " tau_inv");
    out = glue(s, m1, m2, tau, inv, level, inv_level);
  }
  glued_[name] = out;
  return out;
}

}  // namespace idalc
