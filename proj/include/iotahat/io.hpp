#pragma once

// JSON form of complexes:
//   {"generators": [{"name": "T0", "grading": 0}, ...],
//    "differential": [{"from": "T2", "to": "T1", "u_power": 3}, ...],
//    "omega": [...], "reduced": false, "augmented": false}
// or {"params": "(-,3)"}. Every u_power must equal the grading-forced value.

#include <string>
#include <vector>

#include <json.hpp>

#include "iotahat/complex.hpp"
#include "iotahat/params.hpp"

namespace iotahat {

using json = nlohmann::json;

namespace detail {

inline json arrows_to_json(const ModuleMap& m) {
  json out = json::array();
  for (std::size_t s = 0; s < m.source()->size(); ++s)
    for (std::size_t t = 0; t < m.target()->size(); ++t)
      if (m.test(t, s))
        out.push_back({{"from", (*m.source())[s].name}, {"to", (*m.target())[t].name}, {"u_power", *m.exponent(t, s)}});
  return out;
}

inline void arrows_from_json(const json& arr, ModuleMap& m, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
  for (const auto& a : arr) {
    if (!a.is_object() || !a.contains("from") || !a.contains("to") || !a.contains("u_power"))
      throw ParseError(std::string(what) + " entries need from, to and u_power");
    const auto& basis = *m.source();
    const auto s = basis.find(a.at("from").get<std::string>());
    const auto t = basis.find(a.at("to").get<std::string>());
    if (!s || !t) throw ParseError(std::string(what) + " refers to an unknown generator");
    const auto k = m.exponent(*t, *s);
    const int given = a.at("u_power").get<int>();
    if (!k || *k != given)
      throw ParseError(std::string(what) + " arrow " + basis[*s].name + " -> " + basis[*t].name +
                       " has u_power inconsistent with the gradings");
    if (m.test(*t, *s)) throw ParseError(std::string(what) + " lists an arrow twice");
    m.set(*t, *s);
  }
}

}  // namespace detail

inline json complex_to_json(const AlmostIotaComplex& c) {
  json gens = json::array();
  for (const auto& g : c.basis->generators()) gens.push_back({{"name", g.name}, {"grading", g.grading}});
  return {{"generators", gens},
          {"differential", detail::arrows_to_json(c.differential)},
          {"omega", detail::arrows_to_json(c.omega)},
          {"reduced", c.reduced_flag},
          {"augmented", c.augmented}};
}

inline AlmostIotaComplex complex_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("complex document must be a JSON object");
    const bool has_params = doc.contains("params");
    const bool has_gens = doc.contains("generators");
    if (has_params == has_gens) throw ParseError("document needs exactly one of \"params\" or \"generators\"");
    if (has_params) {
      const auto& p = doc.at("params");
      if (p.is_string()) return build(parse_params(p.get<std::string>()));
      if (p.is_array()) return build(Params(p.get<std::vector<int>>()));
      throw ParseError("\"params\" must be a string or an integer list");
    }
    std::vector<Generator> gens;
    for (const auto& g : doc.at("generators")) gens.push_back({g.at("name").get<std::string>(), g.at("grading").get<int>()});
    if (gens.empty()) throw ParseError("complex has no generators");
    AlmostIotaComplex c;
    c.basis = make_basis(std::move(gens));
    c.differential = ModuleMap(c.basis, c.basis, -1);
    c.omega = ModuleMap(c.basis, c.basis, 0);
    detail::arrows_from_json(doc.value("differential", json::array()), c.differential, "differential");
    detail::arrows_from_json(doc.value("omega", json::array()), c.omega, "omega");
    c.reduced_flag = doc.value("reduced", false);
    c.augmented = doc.value("augmented", false);
    return c;
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed complex document: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline json params_to_json(const Params& p) { return p.symbols(); }

inline json morphism_to_json(const ModuleMap& m) { return detail::arrows_to_json(m); }

}  // namespace iotahat
