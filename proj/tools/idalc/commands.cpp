#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

namespace idalc {

using namespace idalkit;

const std::vector<std::string> kCommands = {
    "check-idal", "reflect-idal", "idal-product", "cover-check", "nilpotency", "localize",
    "deligne-hom", "believes",    "quotient",     "compare-idals", "glue",     "sections",
    "roundtrip",  "tensor-glued", "invertible",   "idal-generate", "demo"};

namespace {

struct Ctx {
  const std::vector<std::string>& args;
  const Options& opts;
  Workspace& ws;
  Json result = Json::object();
  Json certificates = Json::object();
  int exit_code = 0;

  const std::string& arg(std::size_t i) const {
    if (i >= args.size()) throw Error("missing argument " + std::to_string(i + 1));
    return args[i];
  }
  void verdict(bool ok) { exit_code = ok ? 0 : 2; }
};

void expect_args(const Ctx& c, std::size_t n, const std::string& usage) {
  if (c.args.size() != n) throw Error("usage: " + usage);
}

ModuleMap map_or_idal(Workspace& ws, const std::string& name) {
  if (ws.has("maps", name)) return ws.map(name);
  if (ws.has("idals", name)) return ws.idal(name).e;
  throw Error("unresolved name '" + name + "'");
}

Json pairs_json(const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
  Json out = Json::array();
  for (const auto& [a, b] : ps) out.push_back(Json::array({a, b}));
  return out;
}

Json chain_json(const ChainColimitResult& c, int trace) {
  Json out;
  out["stabilized_at"] = c.stabilized_at ? Json(*c.stabilized_at) : Json(nullptr);
  out["truncated"] = c.truncated;
  out["lookahead"] = c.lookahead;
  out["stages_evaluated"] = c.stages.size();
  if (trace > 0) {
    Json st = Json::array();
    for (const auto& s : c.stages) st.push_back(Json{{"gens", s.gens()}, {"relations", s.relations().size()}});
    out["stages"] = st;
  }
  return out;
}

// ---------------------------------------------------------------- idal commands

void cmd_check_idal(Ctx& c) {
  expect_args(c, 1, "check-idal <map-or-idal>");
  auto e = map_or_idal(c.ws, c.arg(0));
  if (e.target.gens() != 1 || !e.target.relations().empty()) throw Error("idal map must target O");
  auto d = idal_check_detail(e);
  c.result["holds"] = d.holds;
  c.certificates["failing_pairs"] = pairs_json(d.failing_pairs);
  c.verdict(d.holds);
}

void cmd_reflect_idal(Ctx& c) {
  expect_args(c, 1, "reflect-idal <map>");
  auto r = idal_reflect(c.ws.map(c.arg(0)));
  c.result["idal"] = to_json(r.idal);
  Json pi = Json::array();
  for (const auto& col : r.pi.matrix) pi.push_back(to_json(*r.idal.ring(), col));
  c.result["pi"] = pi;
  bool ok = idal_check(r.idal.e) && well_defined(r.pi);
  c.certificates["idal_check"] = idal_check(r.idal.e);
  c.certificates["pi_well_defined"] = well_defined(r.pi);
  c.verdict(ok);
}

void cmd_idal_product(Ctx& c) {
  expect_args(c, 2, "idal-product <idal> <idal>");
  auto p = idal_product(c.ws.idal(c.arg(0)), c.ws.idal(c.arg(1)));
  c.result["idal"] = to_json(p);
  c.certificates["idal_check"] = idal_check(p.e);
  c.verdict(idal_check(p.e));
}

void cmd_cover_check(Ctx& c) {
  expect_args(c, 2, "cover-check <idal> <idal>");
  auto i = c.ws.idal(c.arg(0)), j = c.ws.idal(c.arg(1));
  bool ok = cover_check(i, j);
  c.result["cover"] = ok;
  const PolyRing& r = *i.ring();
  std::vector<Poly> gens = i.image_generators();
  auto jg = j.image_generators();
  gens.insert(gens.end(), jg.begin(), jg.end());
  if (ok) {
    std::vector<Column> cols;
    for (const auto& g : gens) cols.push_back(Column{g});
    Lifter l(r, 1, cols, {});
    auto co = l.lift(Column{r.one()});
    Json certificate = Json::array();
    if (co)
      for (const auto& p : *co) certificate.push_back(to_json(r, p));
    c.certificates["unit_cofactors"] = certificate;
  } else {
    Json gb = Json::array();
    for (const auto& p : r.groebner(gens)) gb.push_back(to_json(r, p));
    c.certificates["image_ideal_groebner_basis"] = gb;
  }
  c.verdict(ok);
}

void cmd_nilpotency(Ctx& c) {
  expect_args(c, 1, "nilpotency <idal>");
  auto n = nilpotency_check(c.ws.idal(c.arg(0)), c.opts.n_max);
  c.result["nilpotent"] = n.has_value();
  c.result["n"] = n ? Json(*n) : Json(nullptr);
  c.certificates["checked_up_to"] = n ? *n : c.opts.n_max;
  c.verdict(n.has_value());
}

void cmd_localize(Ctx& c) {
  expect_args(c, 2, "localize <module> <polynomial>");
  auto m = c.ws.module(c.arg(0));
  auto f = m.ring()->parse(c.arg(1));
  auto l = localization_oracle(f, m);
  c.result["module"] = to_json(l);
  c.result["is_zero"] = is_zero(l);
}

void cmd_deligne_hom(Ctx& c) {
  expect_args(c, 3, "deligne-hom <idal> <module> <module>");
  auto r = deligne_hom(c.ws.idal(c.arg(0)), c.ws.module(c.arg(1)), c.ws.module(c.arg(2)), c.opts.n_max);
  c.result["chain"] = chain_json(r.chain, c.opts.trace);
  c.result["value"] = to_json(simplify(r.chain.value).module);
  c.certificates["transitions_checked"] = r.chain.transitions.size();
}

void cmd_believes(Ctx& c) {
  expect_args(c, 2, "believes <idal> <module>");
  auto j = c.ws.idal(c.arg(0));
  auto m = c.ws.module(c.arg(1));
  auto can = canonical_to_hom(j, m);
  bool ok = is_iso(can.map);
  c.result["believes"] = ok;
  if (!ok) {
    if (auto g = uncovered_generator(can.map)) {
      c.certificates["uncovered_hom_generator"] = *g;
    } else {
      auto k = kernel(can.map);
      for (const auto& col : k.incl.matrix)
        if (!m.is_zero_element(col)) {
          c.certificates["kernel_element"] = to_json(*m.ring(), col);
          break;
        }
    }
  }
  c.verdict(ok);
}

void cmd_quotient(Ctx& c) {
  expect_args(c, 2, "quotient <idal> <module>");
  auto q = quotient_functor(c.ws.idal(c.arg(0)), c.ws.module(c.arg(1)));
  c.result["module"] = to_json(simplify(q).module);
  c.result["is_zero"] = is_zero(q);
}

void cmd_compare_idals(Ctx& c) {
  expect_args(c, 2, "compare-idals <idal-I> <idal-J>");
  auto r = idal_comparison_search(c.ws.idal(c.arg(0)), c.ws.idal(c.arg(1)), c.opts.n_max);
  c.result["found"] = r.has_value();
  c.result["n"] = r ? Json(r->n) : Json(nullptr);
  if (r) {
    Json m = Json::array();
    for (const auto& col : r->morphism.f.matrix) m.push_back(to_json(*r->morphism.f.target.ring(), col));
    c.result["morphism"] = m;
    c.certificates["is_idal_morphism"] = is_idal_morphism(r->morphism);
  } else {
    c.certificates["searched_up_to"] = c.opts.n_max;
  }
  c.verdict(r.has_value());
}

// ---------------------------------------------------------------- glued commands

void cmd_glue(Ctx& c) {
  expect_args(c, 1, "glue <glued>");
  auto g = c.ws.glued(c.arg(0));
  c.result["glued"] = to_json(g);
  c.certificates["tau_inverse_verified"] = true;
}

void cmd_sections(Ctx& c) {
  expect_args(c, 1, "sections <glued>");
  auto g = c.ws.glued(c.arg(0));
  auto r = global_sections(g, c.opts.degree_bound, c.opts.n_max);
  c.result["total"] = r.total;
  c.result["degree_bound"] = r.degree_bound;
  Json per = Json::array();
  for (const auto& [d, n] : r.per_degree) per.push_back(Json::array({d, n}));
  c.result["per_degree"] = per;
  if (r.module) c.result["module"] = to_json(*r.module);
  c.certificates["method"] = g.scheme->affine() ? "bounded-degree equalizer" : "stabilized pullback chain";
  if (r.stabilized_at) c.certificates["stabilized_at"] = *r.stabilized_at;
}

void cmd_roundtrip(Ctx& c) {
  expect_args(c, 3, "roundtrip <idal-I> <idal-J> <module>");
  auto r = roundtrip_check(c.ws.idal(c.arg(0)), c.ws.idal(c.arg(1)), c.ws.module(c.arg(2)), c.opts.n_max,
                           c.opts.degree_bound);
  c.result["holds"] = r.holds();
  c.result["exact"] = r.exact;
  c.certificates["stage_iso"] = r.stage_iso;
  c.certificates["regluing"] = r.regluing ? Json(*r.regluing) : Json(nullptr);
  c.verdict(r.holds());
}

void cmd_tensor_glued(Ctx& c) {
  expect_args(c, 2, "tensor-glued <glued> <glued>");
  auto t = tensor_glued(c.ws.glued(c.arg(0)), c.ws.glued(c.arg(1)), c.opts.n_max);
  c.result["glued"] = to_json(t);
  c.certificates["tau_inverse_verified"] = true;
}

void cmd_invertible(Ctx& c) {
  expect_args(c, 1, "invertible <glued>");
  auto r = invertible_check(c.ws.glued(c.arg(0)), c.opts.n_max);
  c.result["invertible"] = r.holds();
  c.result["chart1"] = r.chart1;
  c.result["chart2"] = r.chart2;
  c.certificates["inverse"] = r.inverse ? to_json(*r.inverse) : Json(nullptr);
  c.certificates["inverse_verified"] = r.inverse_verified;
  c.verdict(r.holds());
}

void cmd_idal_generate(Ctx& c) {
  expect_args(c, 1, "idal-generate <glued>");
  auto r = idal_generation(c.ws.glued(c.arg(0)), c.opts.n_max);
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(Json{{"chart", t.chart}, {"generator", t.generator}, {"power", t.power}});
  c.result["terms"] = terms;
  c.certificates["surjective_chart1"] = is_surjective(r.epi.g1);
  c.certificates["surjective_chart2"] = is_surjective(r.epi.g2);
  c.certificates["glued_morphism"] = is_glued_morphism(r.epi, c.opts.n_max);
}

// ---------------------------------------------------------------- demos

void cmd_demo(Ctx& c) {
  expect_args(c, 1, "demo <p1-sections|serre|hartogs|nilpotent|cover|doubleorigin2>");
  const std::string& name = c.arg(0);
  if (name == "p1-sections") {
    auto r = global_sections(p1_standard(c.opts.n), c.opts.degree_bound);
    std::size_t oracle = static_cast<std::size_t>(std::max(c.opts.n + 1, 0L));
    c.result["n"] = c.opts.n;
    c.result["dimension"] = r.total;
    c.certificates["monomial_count"] = oracle;
    c.verdict(r.total == oracle);
  } else if (name == "serre") {
    auto t = tensor_glued(p1_standard(c.opts.n), p1_standard(c.opts.m));
    auto s = p1_standard(c.opts.n + c.opts.m);
    GluedMorphism id{t, s, identity_map(t.m1), identity_map(t.m2)};
    id.g1.target = s.m1;
    id.g2.target = s.m2;
    bool ok = is_glued_iso(id);
    c.result["a"] = c.opts.n;
    c.result["b"] = c.opts.m;
    c.result["isomorphic"] = ok;
    c.certificates["tau"] = to_json(*t.tau.target.ring(), t.tau.matrix[0]);
    c.verdict(ok);
  } else if (name == "hartogs") {
    auto a = PolyRing::make(Field{}, {"x", "y"});
    auto j = idal_from_ideal({a->var(0), a->var(1)}, a);
    auto r = reflect(j, unit_module(a), c.opts.n_max, 3);
    bool iso = is_iso(r.unit);
    c.result["chain"] = chain_json(r.chain, c.opts.trace);
    c.result["value_isomorphic_to_O"] = iso;
    c.verdict(iso && r.chain.stabilized_at.has_value());
  } else if (name == "nilpotent") {
    auto a = PolyRing::make(Field{}, {"x"}, Order::Grevlex, {"x^3"});
    auto n = nilpotency_check(principal_idal(a, a->var(0)), c.opts.n_max);
    auto r = reflect(principal_idal(a, a->var(0)), unit_module(a), c.opts.n_max);
    c.result["nilpotent_at"] = n ? Json(*n) : Json(nullptr);
    c.result["chain"] = chain_json(r.chain, c.opts.trace);
    c.result["reflection_is_zero"] = is_zero(r.chain.value);
    c.verdict(n.has_value() && is_zero(r.chain.value));
  } else if (name == "cover") {
    auto a = PolyRing::make(Field{}, {"x"});
    bool ok = cover_check(principal_idal(a, a->parse("x")), principal_idal(a, a->parse("x-1")));
    c.result["cover"] = ok;
    c.verdict(ok);
  } else if (name == "doubleorigin2") {
    auto a = PolyRing::make(Field{}, {"T1", "T2"});
    auto d = doubleorigin2_canonical(a);
    auto r = doubleorigin2_datum_check(d.j1, d.j2, d.p);
    for (const auto& [k, v] : r.clauses) c.result[k] = v;
    c.verdict(r.holds());
  } else {
    throw Error("unknown demo '" + name + "'");
  }
}

const std::map<std::string, std::function<void(Ctx&)>>& table() {
  static const std::map<std::string, std::function<void(Ctx&)>> t = {
      {"check-idal", cmd_check_idal},       {"reflect-idal", cmd_reflect_idal}, {"idal-product", cmd_idal_product},
      {"cover-check", cmd_cover_check},     {"nilpotency", cmd_nilpotency},     {"localize", cmd_localize},
      {"deligne-hom", cmd_deligne_hom},     {"believes", cmd_believes},         {"quotient", cmd_quotient},
      {"compare-idals", cmd_compare_idals}, {"glue", cmd_glue},                 {"sections", cmd_sections},
      {"roundtrip", cmd_roundtrip},         {"tensor-glued", cmd_tensor_glued}, {"invertible", cmd_invertible},
      {"idal-generate", cmd_idal_generate}, {"demo", cmd_demo}};
  return t;
}

Json inputs_json(const std::vector<std::string>& args, const Options& o) {
  Json in;
  in["args"] = args;
  in["n_max"] = o.n_max;
  in["degree_bound"] = o.degree_bound;
  if (o.n || o.m) {
    in["n"] = o.n;
    in["m"] = o.m;
  }
  in["workspaces"] = o.workspaces;
  in["presets"] = o.presets;
  return in;
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_structured())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

Outcome run(const std::string& command, const std::vector<std::string>& args, const Options& opts, Workspace& ws) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  out.report["command"] = command;
  out.report["inputs"] = inputs_json(args, opts);
  try {
    if (opts.n_max < 1 || opts.n_max > 64) throw Error("--n-max must lie in [1, 64]");
    if (opts.degree_bound < 0 || opts.degree_bound > 50) throw Error("--degree-bound must lie in [0, 50]");
    if (opts.trace < 0 || opts.trace > 2) throw Error("--trace must lie in [0, 2]");
    auto it = table().find(command);
    if (it == table().end()) throw Error("unknown command '" + command + "'");
    ws.resolve_all();
    Ctx c{args, opts, ws};
    it->second(c);
    out.exit_code = c.exit_code;
    out.report["result"] = c.result;
    out.report["certificates"] = c.certificates;
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.report["result"] = nullptr;
    out.report["certificates"] = nullptr;
    out.report["error"] = e.what();
  }
  if (opts.timings) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.report["timings"] = Json{{"total_ms", ms}};
  } else {
    out.report["timings"] = nullptr;
  }
  return out;
}

Outcome run(const std::string& command, const std::vector<std::string>& args, const Options& opts) {
  Workspace ws;
  try {
    for (const auto& p : opts.presets) ws.add_file(opts.preset_dir + "/" + p + ".json");
    for (const auto& w : opts.workspaces) ws.add_file(w);
  } catch (const std::exception& e) {
    Outcome out;
    out.exit_code = 1;
    out.report["command"] = command;
    out.report["inputs"] = inputs_json(args, opts);
    out.report["result"] = nullptr;
    out.report["certificates"] = nullptr;
    out.report["error"] = e.what();
    out.report["timings"] = nullptr;
    return out;
  }
  return run(command, args, opts, ws);
}

std::string render(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(w - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

}  // namespace idalc
