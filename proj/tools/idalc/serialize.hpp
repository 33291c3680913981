#pragma once

#include <json.hpp>

#include "idalkit/glued.hpp"

namespace idalc {

using Json = nlohmann::ordered_json;

Json to_json(const idalkit::PolyRing& r, const idalkit::Poly& p);
Json to_json(const idalkit::PolyRing& r, const idalkit::Column& c);
Json to_json(const idalkit::PresentedModule& m);
Json to_json(const idalkit::ModuleMap& f);
Json to_json(const idalkit::Idal& i);
Json to_json(const idalkit::GluedModule& g);

}  // namespace idalc
