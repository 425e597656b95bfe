#ifndef IRM_IO_HPP
#define IRM_IO_HPP

#include <string>

#include <json.hpp>

#include "irm/ccp.hpp"
#include "irm/lru.hpp"
#include "irm/montecarlo.hpp"

namespace irm {

// %.17g: enough digits that reading the text back restores the same double.
std::string fmt17(double v);

// CSV columns: j,mr_king,mr_flajolet,discrepancy
std::string to_csv(const MissRateCurve& curve);
nlohmann::json to_json(const MissRateCurve& curve);

// CSV columns: j,e_layers,e_symmetric,e_ferrante,delta_e (absent -> empty)
std::string to_csv(const CcpCurve& curve);
nlohmann::json to_json(const CcpCurve& curve);

nlohmann::json to_json(const SimEstimate& est);

// Parses a distribution spec of one of the forms
//   {"type":"explicit","weights":[5,3,2]}
//   {"type":"zipf","m":16,"alpha":1.0}
//   {"type":"uniform","m":8}
//   {"type":"geometric","m":8,"ratio":0.5}
Popularity popularity_from_json(const nlohmann::json& spec);

}  // namespace irm

#endif
