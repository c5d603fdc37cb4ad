#pragma once

#include <json.hpp>

#include "scallop/geometry.hpp"

namespace scallop {

using Json = nlohmann::json;

inline Json to_json(const Rat& r) { return rat_to_string(r); }

inline Rat rat_from_json(const Json& j) {
    if (!j.is_string()) throw invalid_input("rational fields are serialized as strings");
    return parse_rat(j.get<std::string>());
}

inline Json to_json(const Vec& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(rat_to_string(c));
    return arr;
}

inline Vec vec_from_json(const Json& j) {
    Vec v;
    for (const auto& c : j) v.push_back(rat_from_json(c));
    return v;
}

inline Json to_json(const VPolytope& p) {
    Json arr = Json::array();
    for (const auto& g : p.gens) arr.push_back(to_json(g));
    return arr;
}

inline VPolytope vpolytope_from_json(const Json& j) {
    std::vector<Vec> gens;
    for (const auto& g : j) gens.push_back(vec_from_json(g));
    return VPolytope(std::move(gens));
}

inline Json to_json(const Halfspace& h) {
    return Json{{"normal", to_json(h.normal)}, {"offset", rat_to_string(h.offset)}};
}

inline Halfspace halfspace_from_json(const Json& j) {
    return Halfspace(vec_from_json(j.at("normal")), rat_from_json(j.at("offset")));
}

inline Json to_json(const HPolyhedron& h) {
    Json cs = Json::array();
    for (const auto& c : h.constraints) cs.push_back(to_json(c));
    return Json{{"dim", h.dim}, {"constraints", cs}};
}

inline HPolyhedron hpolyhedron_from_json(const Json& j) {
    std::vector<Halfspace> cs;
    for (const auto& c : j.at("constraints")) cs.push_back(halfspace_from_json(c));
    return HPolyhedron(j.at("dim").get<std::size_t>(), std::move(cs));
}

inline Json to_json(const SeparationWitness& w) {
    return Json{{"normal", to_json(w.normal)},
                {"offset", rat_to_string(w.offset)},
                {"margin", rat_to_string(w.margin)}};
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline std::string json_hash(const Json& j) { return fnv1a64_hex(dump_canonical(j)); }

}  // namespace scallop
