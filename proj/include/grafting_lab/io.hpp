#pragma once

// JSON ingestion of surfaces and curve catalogs, and deterministic number
// formatting for reports. Schema errors name the offending JSON pointer.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grafting_lab/curve.hpp"
#include "grafting_lab/surface.hpp"
#include "grafting_lab/topology.hpp"

namespace grafting_lab {

using json = nlohmann::json;

class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& pointer, const std::string& what)
        : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

/// Shortest round-trip-safe decimal: 17 significant digits.
inline std::string format_double(double x) {
    if (x == 0.0) return "0";  // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline const json& at(const json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing");
    return *it;
}

inline int as_int(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
    return j.get<int>();
}

inline double as_double(const json& j, const std::string& ptr) {
    if (!j.is_number()) throw SchemaError(ptr, "expected a number");
    return j.get<double>();
}

inline std::vector<double> as_doubles(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of numbers");
    std::vector<double> v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(as_double(j[k], ptr + "/" + std::to_string(k)));
    return v;
}

/// A pants curve named by index or by id.
inline int curve_ref(const PantsDecomposition& d, const json& j, const std::string& ptr) {
    if (j.is_string()) {
        const auto k = d.find_curve(j.get<std::string>());
        if (!k) throw SchemaError(ptr, "unknown curve id '" + j.get<std::string>() + "'");
        return *k;
    }
    const int k = as_int(j, ptr);
    if (k < 0 || k >= d.num_curves()) throw SchemaError(ptr, "curve index out of range");
    return k;
}

}  // namespace detail

inline PantsDecomposition decomposition_from_json(const json& doc) {
    const json& pants = detail::at(doc, "pants", "");
    int num_pants = 0;
    if (pants.is_array()) num_pants = static_cast<int>(pants.size());
    else num_pants = detail::as_int(pants, "/pants");
    const json& cj = detail::at(doc, "curves", "");
    if (!cj.is_array()) throw SchemaError("/curves", "expected an array");
    std::vector<PantsCurve> curves;
    for (std::size_t k = 0; k < cj.size(); ++k) {
        const std::string ptr = "/curves/" + std::to_string(k);
        PantsCurve pc;
        const json& id = detail::at(cj[k], "id", ptr);
        if (!id.is_string()) throw SchemaError(ptr + "/id", "expected a string");
        pc.id = id.get<std::string>();
        const json& ends = detail::at(cj[k], "ends", ptr);
        if (!ends.is_array() || ends.size() != 2) throw SchemaError(ptr + "/ends", "expected two attachments");
        for (int e = 0; e < 2; ++e) {
            const std::string ep = ptr + "/ends/" + std::to_string(e);
            if (!ends[e].is_array() || ends[e].size() != 2) throw SchemaError(ep, "expected [pant, slot]");
            pc.ends[e] = {detail::as_int(ends[e][0], ep + "/0"), detail::as_int(ends[e][1], ep + "/1")};
        }
        if (cj[k].contains("marking")) pc.marking = detail::as_int(cj[k]["marking"], ptr + "/marking");
        curves.push_back(pc);
    }
    if (doc.contains("marking")) {
        const json& m = doc["marking"];
        if (!m.is_array() || m.size() != curves.size())
            throw SchemaError("/marking", "expected one entry per curve");
        for (std::size_t k = 0; k < m.size(); ++k) curves[k].marking = detail::as_int(m[k], "/marking/" + std::to_string(k));
    }
    try {
        return PantsDecomposition(num_pants, std::move(curves));
    } catch (const TopologyError& e) {
        throw SchemaError("/curves", e.what());
    }
}

inline PantsSurface surface_from_json(const json& doc) {
    PantsDecomposition d = decomposition_from_json(doc);
    const json& fn = detail::at(doc, "fn", "");
    FNCoords c{detail::as_doubles(detail::at(fn, "lengths", "/fn"), "/fn/lengths"),
               detail::as_doubles(detail::at(fn, "twists", "/fn"), "/fn/twists")};
    try {
        return PantsSurface(std::move(d), std::move(c));
    } catch (const GeometryError& e) {
        throw SchemaError("/fn", e.what());
    }
}

inline json surface_to_json(const PantsSurface& s) {
    json doc;
    const PantsDecomposition& d = s.topology();
    doc["pants"] = d.num_pants();
    doc["curves"] = json::array();
    for (const PantsCurve& pc : d.curves()) {
        doc["curves"].push_back({{"id", pc.id},
                                 {"ends", {{pc.ends[0].pant, pc.ends[0].slot}, {pc.ends[1].pant, pc.ends[1].slot}}},
                                 {"marking", pc.marking}});
    }
    doc["fn"] = {{"lengths", s.coords().lengths}, {"twists", s.coords().twists}};
    return doc;
}

inline RawStep raw_step_from_json(const PantsDecomposition& d, const json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty() || !j[0].is_string()) throw SchemaError(ptr, "expected [kind, ...]");
    const std::string kind = j[0].get<std::string>();
    RawStep s;
    const auto need = [&](std::size_t lo, std::size_t hi) {
        if (j.size() < lo || j.size() > hi) throw SchemaError(ptr, "wrong number of fields for '" + kind + "'");
    };
    if (kind == "seam") {
        need(3, 4);
        s.kind = RawStep::Kind::Seam;
        s.first = detail::curve_ref(d, j[1], ptr + "/1");
        s.second = detail::curve_ref(d, j[2], ptr + "/2");
        if (j.size() == 4) s.pant = detail::as_int(j[3], ptr + "/3");
    } else if (kind == "arc") {
        need(4, 5);
        s.kind = RawStep::Kind::Arc;
        s.pant = detail::as_int(j[1], ptr + "/1");
        s.from_slot = detail::as_int(j[2], ptr + "/2");
        s.to_slot = detail::as_int(j[3], ptr + "/3");
        if (*s.pant < 0 || *s.pant >= d.num_pants()) throw SchemaError(ptr + "/1", "pant out of range");
        if (s.from_slot < 0 || s.from_slot > 2) throw SchemaError(ptr + "/2", "slot out of range");
        if (s.to_slot < 0 || s.to_slot > 2) throw SchemaError(ptr + "/3", "slot out of range");
        if (j.size() == 5) s.dir = detail::as_int(j[4], ptr + "/4");
        if (s.dir != 1 && s.dir != -1) throw SchemaError(ptr + "/4", "direction must be 1 or -1");
    } else if (kind == "wind") {
        need(3, 3);
        s.kind = RawStep::Kind::Wind;
        s.first = detail::curve_ref(d, j[1], ptr + "/1");
        s.turns = detail::as_int(j[2], ptr + "/2");
    } else {
        throw SchemaError(ptr + "/0", "unknown step kind '" + kind + "'");
    }
    return s;
}

inline std::vector<CurveClass> catalog_from_json(const PantsDecomposition& d, const json& doc) {
    const json* list = &doc;
    std::string base;
    if (doc.is_object()) {
        list = &detail::at(doc, "curves", "");
        base = "/curves";
    }
    if (!list->is_array()) throw SchemaError(base, "expected an array of curves");
    std::vector<CurveClass> out;
    for (std::size_t k = 0; k < list->size(); ++k) {
        const std::string ptr = base + "/" + std::to_string(k);
        const json& cj = (*list)[k];
        const json& id = detail::at(cj, "id", ptr);
        if (!id.is_string()) throw SchemaError(ptr + "/id", "expected a string");
        const json& it = detail::at(cj, "itinerary", ptr);
        if (!it.is_array()) throw SchemaError(ptr + "/itinerary", "expected an array");
        std::vector<RawStep> steps;
        for (std::size_t s = 0; s < it.size(); ++s)
            steps.push_back(raw_step_from_json(d, it[s], ptr + "/itinerary/" + std::to_string(s)));
        try {
            out.push_back(curve_from_itinerary(d, id.get<std::string>(), steps));
        } catch (const CurveError& e) {
            throw SchemaError(ptr + "/itinerary", e.what());
        }
    }
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace grafting_lab
