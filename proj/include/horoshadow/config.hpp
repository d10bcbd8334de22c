#pragma once

// Group configuration files (JSON) and their content hash.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "horoshadow/group.hpp"

namespace horoshadow {

inline constexpr const char* kConfigFormat = "horoshadow-group/1";

struct LoadedConfig {
    GroupSpec spec;
    nlohmann::json raw;
    std::uint64_t hash = 0;
};

namespace detail {

inline BoundaryPoint parse_boundary(const nlohmann::json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return BoundaryPoint::infinity();
        throw validation_error(where + ": boundary point must be a number or \"inf\"");
    }
    if (!j.is_number()) throw validation_error(where + ": boundary point must be a number or \"inf\"");
    return BoundaryPoint::real(j.get<double>());
}

inline Point parse_point(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw validation_error(where + ": expected [re, im]");
    return Point(j[0].get<double>(), j[1].get<double>());
}

template <class T>
T require(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw validation_error(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw validation_error(where + ": field '" + key + "' has the wrong type");
    }
}

}  // namespace detail

inline LoadedConfig parse_config(const nlohmann::json& j) {
    LoadedConfig out;
    out.raw = j;
    out.hash = fnv1a64(j.dump());
    if (!j.is_object()) throw validation_error("config: top level must be an object");
    const auto format = detail::require<std::string>(j, "format", "config");
    if (format != kConfigFormat) throw validation_error("config: unsupported format '" + format + "'");
    const auto model = detail::require<std::string>(j, "model", "config");
    if (model != "upper_half_plane") throw validation_error("config: unsupported model '" + model + "'");
    GroupSpec& spec = out.spec;
    spec.name = detail::require<std::string>(j, "name", "config");
    const auto structure = detail::require<std::string>(j, "structure", "config");
    if (structure == "free_product") spec.structure = GroupStructure::free_product;
    else if (structure == "generic") spec.structure = GroupStructure::generic;
    else throw validation_error("config: structure must be 'free_product' or 'generic'");

    if (!j.contains("basepoint")) throw validation_error("config: missing field 'basepoint'");
    const Point base = detail::parse_point(j["basepoint"], "config.basepoint");
    if (!(base == kOrigin)) throw validation_error("config: only the basepoint [0, 1] is supported");

    if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
        throw validation_error("config: 'generators' must be a non-empty array");
    for (std::size_t i = 0; i < j["generators"].size(); ++i) {
        const auto& g = j["generators"][i];
        const std::string where = "config.generators[" + std::to_string(i) + "]";
        const auto name = detail::require<std::string>(g, "name", where);
        if (name.empty() || name.find_first_of(".^ ,") != std::string::npos)
            throw validation_error(where + ": generator names must be nonempty without '.', '^', ',' or spaces");
        const auto m = detail::require<std::vector<double>>(g, "matrix", where);
        if (m.size() != 4) throw validation_error(where + ": matrix must hold 4 numbers (row-major)");
        const double det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det - 1.0) > 1e-9)
            throw validation_error(where + ": determinant is " + std::to_string(det) +
                                   ", expected 1 (divide the entries by sqrt(det) to normalize)");
        spec.generators.push_back({name, Isometry(m[0], m[1], m[2], m[3])});
    }
    if (j.contains("parabolic_marks")) {
        for (std::size_t i = 0; i < j["parabolic_marks"].size(); ++i) {
            const auto& pm = j["parabolic_marks"][i];
            const std::string where = "config.parabolic_marks[" + std::to_string(i) + "]";
            const auto gname = detail::require<std::string>(pm, "generator", where);
            std::size_t k = spec.generators.size();
            for (std::size_t q = 0; q < spec.generators.size(); ++q)
                if (spec.generators[q].name == gname) k = q;
            if (k == spec.generators.size()) throw validation_error(where + ": unknown generator '" + gname + "'");
            if (!pm.contains("fixed_point")) throw validation_error(where + ": missing field 'fixed_point'");
            spec.parabolic_marks.push_back({k, detail::parse_boundary(pm["fixed_point"], where + ".fixed_point")});
        }
    }
    if (j.contains("cusp_horoball")) {
        const auto& h = j["cusp_horoball"];
        const std::string where = "config.cusp_horoball";
        if (!h.contains("center")) throw validation_error(where + ": missing field 'center'");
        if (!h.contains("boundary_point")) throw validation_error(where + ": missing field 'boundary_point'");
        spec.cusp_horoball = Horoball::through(detail::parse_boundary(h["center"], where + ".center"),
                                               detail::parse_point(h["boundary_point"], where + ".boundary_point"));
    }
    if (j.contains("budget")) {
        const auto& b = j["budget"];
        if (b.contains("max_elements")) spec.max_elements = b["max_elements"].get<std::size_t>();
    }
    if (const char* env = std::getenv("HOROSHADOW_MAX_ELEMENTS")) {
        try {
            spec.max_elements = std::min<std::size_t>(spec.max_elements, std::stoull(env));
        } catch (const std::exception&) {
            throw validation_error("HOROSHADOW_MAX_ELEMENTS must be a positive integer");
        }
    }
    validate(spec);
    return out;
}

inline LoadedConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("config: malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

inline LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace horoshadow
