#include "serialize.hpp"

namespace idalc {

using namespace idalkit;

Json to_json(const PolyRing& r, const Poly& p) { return r.format(p); }

Json to_json(const PolyRing& r, const Column& c) {
  Json out = Json::array();
  for (const auto& p : c) out.push_back(to_json(r, p));
  return out;
}

Json to_json(const PresentedModule& m) {
  Json out;
  out["ring"] = m.ring()->describe();
  out["gens"] = m.gens();
  Json rels = Json::array();
  for (const auto& c : m.relations()) rels.push_back(to_json(*m.ring(), c));
  out["relations"] = rels;
  out["grading"] = m.grading() ? Json(*m.grading()) : Json(nullptr);
  return out;
}

Json to_json(const ModuleMap& f) {
  Json out;
  out["source"] = to_json(f.source);
  out["target"] = to_json(f.target);
  Json cols = Json::array();
  for (const auto& c : f.matrix) cols.push_back(to_json(*f.target.ring(), c));
  out["matrix"] = cols;
  return out;
}

Json to_json(const Idal& i) {
  Json out;
  out["carrier"] = to_json(i.carrier);
  Json e = Json::array();
  for (const auto& p : i.image_generators()) e.push_back(to_json(*i.ring(), p));
  out["e"] = e;
  return out;
}

Json to_json(const GluedModule& g) {
  Json out;
  out["scheme"] = g.scheme->name;
  out["m1"] = to_json(g.m1);
  out["m2"] = to_json(g.m2);
  const PolyRing& r = *g.tau.target.ring();
  Json tau = Json::array(), inv = Json::array();
  for (const auto& c : g.tau.matrix) tau.push_back(to_json(r, c));
  for (const auto& c : g.tau_inv.matrix) inv.push_back(to_json(r, c));
  out["tau"] = tau;
  out["tau_inv"] = inv;
  out["level"] = g.level;
  out["inv_level"] = g.inv_level;
  return out;
}

}  // namespace idalc
