#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "orbit.hpp"

// Versioned on-disk format for orbit tables: self-describing header,
// entries as exact integer quadruples plus the length.  Lengths are
// recomputed on load and cross-checked.

namespace pscat {

inline constexpr const char* kOrbitFormat = "pscat-orbit-v1";

inline nlohmann::json orbit_table_to_json(const OrbitTable& t) {
    nlohmann::json j;
    j["format"] = kOrbitFormat;
    j["z0"] = {t.z0.x, t.z0.y};
    j["radius"] = t.radius;
    j["stabilizer_order"] = t.stabilizer_order;
    j["count"] = t.entries.size();
    auto& st = j["stabilizer"] = nlohmann::json::array();
    for (const auto& g : t.stabilizer) st.push_back({g.a, g.b, g.c, g.d});
    auto& e = j["entries"] = nlohmann::json::array();
    for (const auto& en : t.entries)
        e.push_back({en.g.a, en.g.b, en.g.c, en.g.d, en.length});
    return j;
}

inline void save_orbit_table(const OrbitTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_orbit_table: cannot open " + path);
    out << orbit_table_to_json(t).dump(1, '\t') << "\n";
}

inline OrbitTable load_orbit_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_orbit_table: cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("format", "") != kOrbitFormat)
        throw std::runtime_error("load_orbit_table: unknown format version");
    OrbitTable t;
    t.z0 = Point{j["z0"][0].get<double>(), j["z0"][1].get<double>()};
    t.radius = j["radius"].get<double>();
    t.stabilizer_order = j["stabilizer_order"].get<int>();
    for (const auto& s : j["stabilizer"])
        t.stabilizer.push_back(GroupElement{s[0].get<std::int64_t>(),
                                            s[1].get<std::int64_t>(),
                                            s[2].get<std::int64_t>(),
                                            s[3].get<std::int64_t>()});
    t.entries.reserve(j["count"].get<size_t>());
    for (const auto& e : j["entries"]) {
        GroupElement g{e[0].get<std::int64_t>(), e[1].get<std::int64_t>(),
                       e[2].get<std::int64_t>(), e[3].get<std::int64_t>()};
        const double stored = e[4].get<double>();
        const double recomputed = hyp_distance(t.z0, mobius_apply(g, t.z0));
        if (std::abs(stored - recomputed) > 1e-12)
            throw std::runtime_error(
                "load_orbit_table: stored length fails the cross-check");
        t.entries.push_back({g, stored});
    }
    if (t.entries.size() != j["count"].get<size_t>())
        throw std::runtime_error("load_orbit_table: count mismatch");
    return t;
}

} // namespace pscat
