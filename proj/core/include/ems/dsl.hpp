#pragma once

#include <string>

#include "ems/arthur.hpp"
#include "ems/multiseg.hpp"
#include "ems/rewrite.hpp"

#include "json.hpp"

namespace ems {

// Row DSL:
//   group Sp rank 4
//   [0,0]@1 l=0 eta=-1
// one row per line, top-to-bottom = admissible order.
ExtendedMultiSegment parse_rows(const std::string& text);
std::string render_rows(const ExtendedMultiSegment& e);

// JSON mirror {family, rank, rows:[{rho,A,B,l,eta}]}; A and B are doubled
// integers.
nlohmann::json to_json(const ExtendedMultiSegment& e);
ExtendedMultiSegment multisegment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RewriteStep& s);
nlohmann::json to_json(const ClassEnumeration& c);
nlohmann::json to_json(const ArthurVerdict& v);

}  // namespace ems
