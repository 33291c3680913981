#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "idalkit/fpmod.hpp"

namespace idalkit {

// e : carrier -> O satisfying e (x) I = I (x) e.
struct Idal {
  PresentedModule carrier;
  ModuleMap e;

  const RingPtr& ring() const { return carrier.ring(); }
  std::vector<Poly> image_generators() const;
};

// e_target o f = e_source
struct IdalMorphism {
  Idal source, target;
  ModuleMap f;
};
bool is_idal_morphism(const IdalMorphism& m);

PresentedModule unit_module(const RingPtr& ring);

struct IdalCheck {
  bool holds = true;
  std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;  // 1-based generator pairs
};
IdalCheck idal_check_detail(const ModuleMap& e);
bool idal_check(const ModuleMap& e);

struct Reflection {
  Idal idal;
  ModuleMap pi;
};
Reflection idal_reflect(const ModuleMap& f);

Idal identity_idal(const RingPtr& ring);
Idal principal_idal(const RingPtr& ring, const Poly& f);
Idal make_idal(const ModuleMap& e);  // validates the law

Idal idal_product(const Idal& a, const Idal& b);
Idal idal_tensor_power(const Idal& e, std::size_t n);
// I^n -> I^m applying e at the given 0-based positions (default: the last n - m)
ModuleMap idal_transition(const Idal& e, std::size_t n, std::size_t m,
                          std::optional<std::vector<std::size_t>> positions = std::nullopt);

struct IdalPower {
  Idal idal;
  ModuleMap transition;
};
IdalPower idal_power(const Idal& e, std::size_t n, std::size_t m);

bool cover_check(const Idal& e, const Idal& f);
// pushout form: I (x) J -> I, J pushout mapping isomorphically onto O
bool cover_check_pushout(const Idal& e, const Idal& f);

Idal idal_from_ideal(const std::vector<Poly>& gens, const RingPtr& ring);

std::optional<std::size_t> nilpotency_check(const Idal& e, std::size_t n_max);

mpz_class free_idal_hom_size(std::size_t n, std::size_t m);

PresentedModule base_change(const RingHom& h, const PresentedModule& m);
ModuleMap base_change_map(const RingHom& h, const ModuleMap& f);
Idal idal_base_change(const RingHom& h, const Idal& e);

}  // namespace idalkit
