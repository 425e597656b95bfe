#include "irm/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace irm {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const MissRateCurve& curve) {
  std::ostringstream out;
  out << "j,mr_king,mr_flajolet,discrepancy\n";
  for (const auto& e : curve.entries)
    out << e.capacity << ',' << fmt17(e.mr_king) << ',' << fmt17(e.mr_flajolet)
        << ',' << fmt17(e.discrepancy) << '\n';
  return out.str();
}

nlohmann::json to_json(const MissRateCurve& curve) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : curve.entries)
    entries.push_back({{"j", e.capacity},
                       {"mr_king", e.mr_king},
                       {"mr_flajolet", e.mr_flajolet},
                       {"discrepancy", e.discrepancy}});
  return {{"m", curve.m}, {"entries", entries}};
}

namespace {

std::string opt17(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string();
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string to_csv(const CcpCurve& curve) {
  std::ostringstream out;
  out << "j,e_layers,e_symmetric,e_ferrante,delta_e\n";
  for (const auto& e : curve.entries)
    out << e.j << ',' << fmt17(e.e_layers) << ',' << opt17(e.e_symmetric) << ','
        << opt17(e.e_ferrante) << ',' << opt17(e.delta_e) << '\n';
  return out.str();
}

nlohmann::json to_json(const CcpCurve& curve) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : curve.entries)
    entries.push_back({{"j", e.j},
                       {"e_layers", e.e_layers},
                       {"e_symmetric", opt_json(e.e_symmetric)},
                       {"e_ferrante", opt_json(e.e_ferrante)},
                       {"delta_e", opt_json(e.delta_e)}});
  return {{"m", curve.m}, {"entries", entries}};
}

nlohmann::json to_json(const SimEstimate& est) {
  return {{"mean", est.mean},
          {"std_error", est.std_error},
          {"samples", est.samples},
          {"seed", est.seed}};
}

Popularity popularity_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("type"))
    throw std::invalid_argument("distribution spec: expected an object with a \"type\" key");
  const std::string type = spec.at("type").get<std::string>();

  if (type == "explicit") {
    return Popularity::from_weights(spec.at("weights").get<std::vector<double>>());
  }
  if (type == "uniform") {
    return Popularity::uniform(spec.at("m").get<int>());
  }
  if (type == "zipf") {
    return Popularity::zipf(spec.at("m").get<int>(), spec.at("alpha").get<double>());
  }
  if (type == "geometric") {
    return Popularity::geometric(spec.at("m").get<int>(), spec.at("ratio").get<double>());
  }
  throw std::invalid_argument("distribution spec: unknown type \"" + type + "\"");
}

}  // namespace irm
