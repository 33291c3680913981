#pragma once

#include <map>
#include <set>
#include <string>

#include "serialize.hpp"

namespace idalc {

// Named rings, modules, maps, idals, schemes and glued modules from JSON input.
//
//   rings:   {"A": {"field": "QQ", "vars": ["x"], "order": "grevlex", "quotient": [], "weights": [1]}}
//   modules: {"M": {"ring": "A", "gens": 2, "relations": [["x", "0"]], "grading": [0, 0]}}
//            {"F": {"ring": "A", "free": 2}}
//   maps:    {"f": {"source": "M", "target": "O:A", "matrix": [["x"], ["1"]]}}
//   idals:   {"I": {"map": "f"}} | {"ring": "A", "principal": "x"} | {"ring": "A", "ideal": ["x", "y"]}
//            | {"ring": "A", "identity": true} | {"reflect": "f"}
//   schemes: {"P": {"preset": "P1"}} | {"X": {"self_glue": "J"}}
//            | {"Y": {"affine": {"chart1": "A", "f1": "t", "inv1": "u", "chart2": "B", "f2": "s", "inv2": "v",
//                                "images2": ["u"], "images1": ["v"]}}}
//   glued:   {"G": {"scheme": "P", "twist": 1}} | {"scheme": "P", "structure": true} | {"scheme": "P", "chart_idal": 1}
//            | {"scheme": "P", "m1": "M1", "m2": "M2", "tau": [[...]], "tau_inv": [[...]], "level": 0, "inv_level": 0}
//
// "O:A" is the rank-one free module over A; "S.chart1" and "S.chart2" name the chart rings of scheme S.
class Workspace {
 public:
  void add(const Json& doc);
  void add_file(const std::string& path);
  // resolves every entry; throws idalkit::Error on the first failure
  void resolve_all();

  idalkit::RingPtr ring(const std::string& name);
  idalkit::PresentedModule module(const std::string& name);
  idalkit::ModuleMap map(const std::string& name);
  idalkit::Idal idal(const std::string& name);
  idalkit::SchemePtr scheme(const std::string& name);
  idalkit::GluedModule glued(const std::string& name);

  bool has(const std::string& kind, const std::string& name) const;

 private:
  const Json& entry(const std::string& kind, const std::string& name) const;
  void enter(const std::string& key);

  std::map<std::string, std::map<std::string, Json>> raw_;
  std::set<std::string> names_;
  std::set<std::string> resolving_;
  std::map<std::string, idalkit::RingPtr> rings_;
  std::map<std::string, idalkit::PresentedModule> modules_;
  std::map<std::string, idalkit::ModuleMap> maps_;
  std::map<std::string, idalkit::Idal> idals_;
  std::map<std::string, idalkit::SchemePtr> schemes_;
  std::map<std::string, idalkit::GluedModule> glued_;
};

}  // namespace idalc
