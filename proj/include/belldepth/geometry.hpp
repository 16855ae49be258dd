#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "belldepth/rational.hpp"

namespace belldepth {

/// Closed halfspace  normal.x + offset >= 0.
struct Halfspace {
    RatVec normal;
    Rational offset;

    Rational value_at(const RatVec& x) const { return dot(normal, x) + offset; }

    /// Integer-primitive form (positive scaling only; orientation preserved).
    Halfspace canonical() const {
        RatVec all;
        all.reserve(normal.size() + 1);
        all.push_back(offset);
        all.insert(all.end(), normal.begin(), normal.end());
        RatVec prim = primitive(all);
        Halfspace h;
        h.offset = prim[0];
        h.normal.assign(prim.begin() + 1, prim.end());
        return h;
    }

    RatVec key() const {
        Halfspace c = canonical();
        RatVec k;
        k.push_back(c.offset);
        k.insert(k.end(), c.normal.begin(), c.normal.end());
        return k;
    }

    bool trivially_true() const {
        for (const auto& q : normal)
            if (q != 0) return false;
        return offset >= 0;
    }
};

/// Halfspace representation of a polytope.
struct HRep {
    int dimension = 0;
    std::vector<Halfspace> halfspaces;

    /// Canonicalizes, drops trivial rows and exact duplicates, sorts.
    void normalize() {
        std::set<RatVec, RatVecLess> seen;
        std::vector<Halfspace> out;
        for (const auto& h : halfspaces) {
            Halfspace c = h.canonical();
            if (c.trivially_true()) continue;
            if (seen.insert(c.key()).second) out.push_back(std::move(c));
        }
        std::sort(out.begin(), out.end(),
                  [](const Halfspace& a, const Halfspace& b) { return lex_less(a.key(), b.key()); });
        halfspaces = std::move(out);
    }

    bool contains(const RatVec& x) const {
        for (const auto& h : halfspaces)
            if (h.value_at(x) < 0) return false;
        return true;
    }
};

/// Vertex representation of a polytope.
struct VRep {
    int dimension = 0;
    std::vector<RatVec> vertices;

    void normalize() {
        std::sort(vertices.begin(), vertices.end(), RatVecLess{});
        vertices.erase(std::unique(vertices.begin(), vertices.end(), lex_eq), vertices.end());
    }
};

inline bool same_halfspace_set(HRep a, HRep b) {
    a.normalize();
    b.normalize();
    if (a.halfspaces.size() != b.halfspaces.size()) return false;
    for (size_t i = 0; i < a.halfspaces.size(); ++i)
        if (!lex_eq(a.halfspaces[i].key(), b.halfspaces[i].key())) return false;
    return true;
}

inline bool same_vertex_set(VRep a, VRep b) {
    a.normalize();
    b.normalize();
    if (a.vertices.size() != b.vertices.size()) return false;
    for (size_t i = 0; i < a.vertices.size(); ++i)
        if (!lex_eq(a.vertices[i], b.vertices[i])) return false;
    return true;
}

// ---- JSON interchange: rationals as "p/q" strings, arrays row-major ----

inline nlohmann::json to_json(const RatVec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : v) a.push_back(rat_str(q));
    return a;
}

inline RatVec ratvec_from_json(const nlohmann::json& a) {
    RatVec v;
    v.reserve(a.size());
    for (const auto& s : a) v.push_back(rat_parse(s.get<std::string>()));
    return v;
}

inline nlohmann::json to_json(const HRep& h) {
    nlohmann::json j;
    j["dimension"] = h.dimension;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& hs : h.halfspaces) {
        nlohmann::json r;
        r["normal"] = to_json(hs.normal);
        r["offset"] = rat_str(hs.offset);
        rows.push_back(r);
    }
    j["halfspaces"] = rows;
    return j;
}

inline HRep hrep_from_json(const nlohmann::json& j) {
    HRep h;
    h.dimension = j.at("dimension").get<int>();
    for (const auto& r : j.at("halfspaces")) {
        Halfspace hs;
        hs.normal = ratvec_from_json(r.at("normal"));
        hs.offset = rat_parse(r.at("offset").get<std::string>());
        if ((int)hs.normal.size() != h.dimension) throw std::invalid_argument("hrep dimension mismatch");
        h.halfspaces.push_back(std::move(hs));
    }
    return h;
}

inline nlohmann::json to_json(const VRep& v) {
    nlohmann::json j;
    j["dimension"] = v.dimension;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : v.vertices) rows.push_back(to_json(p));
    j["vertices"] = rows;
    return j;
}

inline VRep vrep_from_json(const nlohmann::json& j) {
    VRep v;
    v.dimension = j.at("dimension").get<int>();
    for (const auto& r : j.at("vertices")) {
        RatVec p = ratvec_from_json(r);
        if ((int)p.size() != v.dimension) throw std::invalid_argument("vrep dimension mismatch");
        v.vertices.push_back(std::move(p));
    }
    return v;
}

}  // namespace belldepth
