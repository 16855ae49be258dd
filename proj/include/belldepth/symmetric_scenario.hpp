#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "belldepth/double_description.hpp"
#include "belldepth/polytope_ops.hpp"
#include "belldepth/projection.hpp"

namespace belldepth {

/// Symmetrized correlator coordinate S_{m1..ml}: order l and multiplicity of
/// setting 1 among the l indices. Coordinates are ordered by (l, ones), so the
/// first five are (S0, S1, S00, S01, S11).
struct SymCoord {
    int order;
    int ones;
};

inline std::vector<SymCoord> sym_coords(int k) {
    std::vector<SymCoord> v;
    for (int l = 1; l <= k; ++l)
        for (int j = 0; j <= l; ++j) v.push_back({l, j});
    return v;
}

inline int sym_coord_count(int k) { return k * (k + 3) / 2; }

namespace detail {

inline std::vector<long> signed_binomial_profile(int n_plus, int n_minus, int k) {
    // coefficients of (1+t)^n_plus (1-t)^n_minus up to degree k
    std::vector<long> c(k + 1, 0);
    c[0] = 1;
    for (int r = 0; r < n_plus; ++r)
        for (int i = k; i >= 1; --i) c[i] += c[i - 1];
    for (int r = 0; r < n_minus; ++r)
        for (int i = k; i >= 1; --i) c[i] -= c[i - 1];
    return c;
}

inline Rational falling_factorial_inv(int k, int l) {
    // 1 / (k (k-1) ... (k-l+1)) : one over the ordered index-tuple count
    Rational q = 1;
    for (int t = 0; t < l; ++t) q /= (k - t);
    return q;
}

}  // namespace detail

/// Outcome-positivity facets of the k-party no-signaling set restricted to the
/// symmetric subspace, written over the S coordinates. One inequality per
/// per-party label profile (outcome sign x setting), duplicates collapsed.
inline HRep positivity_system(int k) {
    if (k < 2 || k > 6) throw std::out_of_range("positivity_system: supported range is 2..6");
    const auto coords = sym_coords(k);
    HRep h;
    h.dimension = static_cast<int>(coords.size());
    for (int np0 = 0; np0 <= k; ++np0)
        for (int nm0 = 0; nm0 + np0 <= k; ++nm0)
            for (int np1 = 0; np1 + nm0 + np0 <= k; ++np1) {
                int nm1 = k - np0 - nm0 - np1;
                auto K0 = detail::signed_binomial_profile(np0, nm0, k);
                auto K1 = detail::signed_binomial_profile(np1, nm1, k);
                Halfspace row;
                row.offset = 1;
                row.normal.assign(coords.size(), Rational(0));
                for (size_t i = 0; i < coords.size(); ++i) {
                    const auto [l, j] = coords[i];
                    row.normal[i] =
                        Rational(K0[l - j]) * Rational(K1[j]) * detail::falling_factorial_inv(k, l);
                }
                h.halfspaces.push_back(std::move(row));
            }
    h.normalize();
    return h;
}

/// Projects the symmetric no-signaling set onto the five one- and two-body
/// coordinates, i.e. eliminates every S coordinate of order >= 3. Returns the
/// minimal facet system of NS_k^{2,S}.
///
/// Through k = 5 this runs iterated Fourier-Motzkin elimination (greedy
/// per-step choice: fewest sign-pair combinations first). For k = 6 the
/// intermediate eliminations develop descriptions with thousands of facets,
/// so the same projection is computed by oracle-guided hull growth instead;
/// the two methods agree wherever both run.
inline HRep project_two_body(int k) {
    HRep h = positivity_system(k);
    if (k >= 6) return project_via_oracle(h, 5);
    const auto coords = sym_coords(k);
    std::vector<int> elim;
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i].order >= 3) elim.push_back(static_cast<int>(i));
    return fm_project_greedy(h, elim);
}

// ---- deterministic single-party strategies and local population points ----

/// (S0, S1) of the four deterministic single-party strategies.
inline const std::array<std::array<int, 2>, 4>& singleton_strategies() {
    static const std::array<std::array<int, 2>, 4> s{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    return s;
}

/// Symmetric two-body point of a population (n1..n4) over the deterministic
/// strategies; cross terms factorize, within-strategy pairs count n(n-1).
inline RatVec local_population_point(const std::array<long, 4>& n) {
    const auto& s = singleton_strategies();
    RatVec p(5, Rational(0));
    for (int i = 0; i < 4; ++i) {
        p[0] += Rational(n[i]) * s[i][0];
        p[1] += Rational(n[i]) * s[i][1];
    }
    auto two_body = [&](int m, int mm) {
        Rational tot = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Rational w = (i == j) ? Rational(n[i]) * (n[i] - 1) : Rational(n[i]) * n[j];
                tot += w * s[i][m] * s[j][mm];
            }
        return tot;
    };
    p[2] = two_body(0, 0);
    p[3] = two_body(0, 1);
    p[4] = two_body(1, 1);
    return p;
}

/// All distinct population points of the p-party local polytope in the
/// symmetric two-body coordinates (spanning set; not extreme-filtered).
inline std::vector<RatVec> local_population_points(int p) {
    std::vector<RatVec> pts;
    for (long n1 = 0; n1 <= p; ++n1)
        for (long n2 = 0; n1 + n2 <= p; ++n2)
            for (long n3 = 0; n1 + n2 + n3 <= p; ++n3) {
                long n4 = p - n1 - n2 - n3;
                pts.push_back(local_population_point({n1, n2, n3, n4}));
            }
    std::sort(pts.begin(), pts.end(), RatVecLess{});
    pts.erase(std::unique(pts.begin(), pts.end(), lex_eq), pts.end());
    return pts;
}

/// Exact membership of a point in the convex hull of a generator list.
inline bool in_convex_hull(const RatVec& z, const std::vector<RatVec>& gens) {
    const size_t ng = gens.size();
    const size_t d = z.size();
    std::vector<RatVec> A;
    RatVec b;
    for (size_t r = 0; r < d; ++r) {
        RatVec row(ng);
        for (size_t i = 0; i < ng; ++i) row[i] = gens[i][r];
        A.push_back(row);
        b.push_back(z[r]);
        RatVec neg(ng);
        for (size_t i = 0; i < ng; ++i) neg[i] = -row[i];
        A.push_back(neg);
        b.push_back(-z[r]);
    }
    RatVec ones(ng, Rational(1)), nones(ng, Rational(-1));
    A.push_back(ones);
    b.push_back(1);
    A.push_back(nones);
    b.push_back(-1);
    for (size_t i = 0; i < ng; ++i) {
        RatVec e(ng, Rational(0));
        e[i] = 1;
        A.push_back(e);
        b.push_back(0);
    }
    return lp_feasible(A, b);
}

/// Extreme points of the p-party local polytope projected to the symmetric
/// two-body coordinates.
inline VRep local_sym_vertices(int p) {
    if (p < 1) throw std::out_of_range("local_sym_vertices: p >= 1 required");
    auto pts = local_population_points(p);
    VRep out;
    out.dimension = 5;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<RatVec> others;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others)) out.vertices.push_back(pts[i]);
    }
    out.normalize();
    return out;
}

/// Vertex catalog of NS_k^{2,S} with a locality flag per vertex.
struct NsCatalog {
    int k = 0;
    std::vector<RatVec> vertices;     // 5-vectors
    std::vector<bool> nonlocal;       // parallel to vertices
    std::string provenance = "derived";

    std::vector<RatVec> nonlocal_vertices() const {
        std::vector<RatVec> out;
        for (size_t i = 0; i < vertices.size(); ++i)
            if (nonlocal[i]) out.push_back(vertices[i]);
        return out;
    }
};

/// Full vertex list of NS_k^{2,S} through the intersection + elimination
/// pipeline, each vertex classified LOCAL/NONLOCAL by exact membership in the
/// projected local polytope.
inline NsCatalog ns_sym_vertices(int k) {
    HRep facets = project_two_body(k);
    VRep verts = vertices_of(facets);
    NsCatalog cat;
    cat.k = k;
    auto locals = local_population_points(k);
    for (const auto& v : verts.vertices) {
        cat.vertices.push_back(v);
        cat.nonlocal.push_back(!in_convex_hull(v, locals));
    }
    return cat;
}

// ---- catalog JSON: {k, vertices: [[5 rationals]], locality: [...]} ----

inline nlohmann::json to_json(const NsCatalog& c) {
    nlohmann::json j;
    j["k"] = c.k;
    nlohmann::json vs = nlohmann::json::array(), loc = nlohmann::json::array();
    for (size_t i = 0; i < c.vertices.size(); ++i) {
        vs.push_back(to_json(c.vertices[i]));
        loc.push_back(c.nonlocal[i] ? "nonlocal" : "local");
    }
    j["vertices"] = vs;
    j["locality"] = loc;
    j["provenance"] = c.provenance;
    return j;
}

inline NsCatalog ns_catalog_from_json(const nlohmann::json& j) {
    NsCatalog c;
    c.k = j.at("k").get<int>();
    for (const auto& row : j.at("vertices")) c.vertices.push_back(ratvec_from_json(row));
    for (const auto& s : j.at("locality")) c.nonlocal.push_back(s.get<std::string>() == "nonlocal");
    if (c.nonlocal.size() != c.vertices.size())
        throw std::invalid_argument("catalog locality/vertex size mismatch");
    if (j.contains("provenance")) c.provenance = j.at("provenance").get<std::string>();
    return c;
}

}  // namespace belldepth
