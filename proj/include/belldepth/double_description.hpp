#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "belldepth/geometry.hpp"

namespace belldepth {

namespace detail {

/// Small bitset over row indices.
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i / 64] |= (std::uint64_t(1) << (i % 64)); }
    bool test(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    size_t count() const {
        size_t c = 0;
        for (auto x : w) c += static_cast<size_t>(__builtin_popcountll(x));
        return c;
    }
    static Bits intersect(const Bits& a, const Bits& b) {
        Bits r;
        r.w.resize(a.w.size());
        for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
    /// true iff a contains every bit of b
    static bool superset(const Bits& a, const Bits& b) {
        for (size_t i = 0; i < a.w.size(); ++i)
            if ((b.w[i] & ~a.w[i]) != 0) return false;
        return true;
    }
};

struct Ray {
    RatVec v;
    Bits zero;  // tight processed rows
};

inline RatVec gauss_solve_square(std::vector<RatVec> M, RatVec rhs) {
    const size_t n = M.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("singular matrix");
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational d = M[col][col];
        for (size_t j = col; j < n; ++j) M[col][j] /= d;
        rhs[col] /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col];
            for (size_t j = col; j < n; ++j) M[r][j] -= f * M[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace detail

/// Extreme rays of the pointed cone {y in Q^D : row.y >= 0 for every row},
/// by incremental double description with the combinatorial adjacency test.
/// Throws if the row matrix has rank < D (cone with lineality).
inline std::vector<RatVec> dd_extreme_rays(const std::vector<RatVec>& rows, size_t D) {
    using detail::Bits;
    using detail::Ray;
    const size_t n = rows.size();

    // greedy full-rank initial row set
    std::vector<size_t> basis_rows;
    {
        std::vector<RatVec> red;
        std::vector<size_t> cols;
        for (size_t i = 0; i < n && basis_rows.size() < D; ++i) {
            RatVec r = rows[i];
            for (size_t t = 0; t < red.size(); ++t) {
                if (r[cols[t]] != 0) {
                    Rational f = r[cols[t]];
                    for (size_t j = 0; j < D; ++j) r[j] -= f * red[t][j];
                }
            }
            size_t p = 0;
            while (p < D && r[p] == 0) ++p;
            if (p == D) continue;
            Rational d = r[p];
            for (size_t j = 0; j < D; ++j) r[j] /= d;
            red.push_back(std::move(r));
            cols.push_back(p);
            basis_rows.push_back(i);
        }
    }
    if (basis_rows.size() < D) throw std::runtime_error("cone is not pointed (rank deficient)");

    // initial rays: columns of inverse of the basis row matrix
    std::vector<Ray> rays;
    {
        for (size_t j = 0; j < D; ++j) {
            std::vector<RatVec> M(D, RatVec(D));
            RatVec e(D, Rational(0));
            e[j] = 1;
            for (size_t i = 0; i < D; ++i) M[i] = rows[basis_rows[i]];
            Ray r;
            r.v = primitive(detail::gauss_solve_square(std::move(M), std::move(e)));
            r.zero = Bits(n);
            for (size_t i = 0; i < D; ++i)
                if (i != j) r.zero.set(basis_rows[i]);
            rays.push_back(std::move(r));
        }
    }
    std::vector<bool> processed(n, false);
    for (size_t i : basis_rows) processed[i] = true;

    for (size_t i = 0; i < n; ++i) {
        if (processed[i]) continue;
        const RatVec& m = rows[i];
        std::vector<int> sign(rays.size());
        std::vector<Rational> vals(rays.size());
        std::vector<size_t> pos, neg;
        for (size_t t = 0; t < rays.size(); ++t) {
            vals[t] = dot(m, rays[t].v);
            sign[t] = sgn(vals[t]);
            if (sign[t] > 0)
                pos.push_back(t);
            else if (sign[t] < 0)
                neg.push_back(t);
            else
                rays[t].zero.set(i);
        }
        processed[i] = true;
        if (neg.empty()) continue;
        std::vector<Ray> next;
        next.reserve(rays.size());
        for (size_t t = 0; t < rays.size(); ++t)
            if (sign[t] >= 0) next.push_back(rays[t]);
        for (size_t p : pos) {
            for (size_t q : neg) {
                Bits z = Bits::intersect(rays[p].zero, rays[q].zero);
                if (z.count() + 2 < D) continue;  // rank filter
                bool adjacent = true;
                for (size_t t = 0; t < rays.size(); ++t) {
                    if (t == p || t == q) continue;
                    if (Bits::superset(rays[t].zero, z)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Ray nr;
                nr.v.resize(D);
                for (size_t j = 0; j < D; ++j) nr.v[j] = vals[p] * rays[q].v[j] - vals[q] * rays[p].v[j];
                nr.v = primitive(nr.v);
                nr.zero = z;
                nr.zero.set(i);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    std::vector<RatVec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end(), RatVecLess{});
    out.erase(std::unique(out.begin(), out.end(), lex_eq), out.end());
    return out;
}

/// Exact vertex enumeration of a bounded polytope given by halfspaces.
/// Empty input region yields an empty VRep; recession directions (or a
/// description with lineality, such as the whole space) raise an error.
inline VRep vertices_of(const HRep& h) {
    const size_t D = static_cast<size_t>(h.dimension) + 1;
    std::vector<RatVec> rows;
    rows.reserve(h.halfspaces.size() + 1);
    for (const auto& hs : h.halfspaces) {
        RatVec r;
        r.reserve(D);
        r.push_back(hs.offset);
        r.insert(r.end(), hs.normal.begin(), hs.normal.end());
        rows.push_back(std::move(r));
    }
    RatVec hom(D, Rational(0));
    hom[0] = 1;
    rows.push_back(std::move(hom));
    std::vector<RatVec> rays;
    try {
        rays = dd_extreme_rays(rows, D);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("vertices_of: unbounded polyhedron (not pointed)");
    }
    VRep out;
    out.dimension = h.dimension;
    for (const auto& r : rays) {
        if (r[0] == 0) throw std::runtime_error("vertices_of: unbounded polyhedron (recession ray)");
        RatVec p(r.begin() + 1, r.end());
        for (auto& q : p) q /= r[0];
        out.vertices.push_back(std::move(p));
    }
    out.normalize();
    return out;
}

namespace detail {

struct AffineHull {
    RatVec origin;
    std::vector<RatVec> span;        // basis of the direction space
    std::vector<RatVec> complement;  // basis of its orthogonal complement
};

inline AffineHull affine_hull(const std::vector<RatVec>& pts, size_t d) {
    AffineHull ah;
    ah.origin = pts.at(0);
    std::vector<RatVec> red;
    std::vector<size_t> cols;
    for (size_t i = 1; i < pts.size(); ++i) {
        RatVec r(d);
        for (size_t j = 0; j < d; ++j) r[j] = pts[i][j] - ah.origin[j];
        RatVec orig = r;
        for (size_t t = 0; t < red.size(); ++t) {
            if (r[cols[t]] != 0) {
                Rational f = r[cols[t]];
                for (size_t j = 0; j < d; ++j) r[j] -= f * red[t][j];
            }
        }
        size_t p = 0;
        while (p < d && r[p] == 0) ++p;
        if (p == d) continue;
        Rational dv = r[p];
        for (size_t j = 0; j < d; ++j) r[j] /= dv;
        red.push_back(r);
        cols.push_back(p);
        ah.span.push_back(std::move(orig));
        if (ah.span.size() == d) break;
    }
    // orthogonal complement: null space of span^T (i.e. vectors w with span_i . w = 0)
    if (ah.span.size() < d) {
        std::vector<RatVec> M;  // rows span_i, gaussian eliminate
        for (const auto& s : ah.span) M.push_back(s);
        std::vector<size_t> pivot_cols;
        size_t rrow = 0;
        for (size_t col = 0; col < d && rrow < M.size(); ++col) {
            size_t piv = rrow;
            while (piv < M.size() && M[piv][col] == 0) ++piv;
            if (piv == M.size()) continue;
            std::swap(M[piv], M[rrow]);
            Rational dv = M[rrow][col];
            for (size_t j = 0; j < d; ++j) M[rrow][j] /= dv;
            for (size_t r2 = 0; r2 < M.size(); ++r2) {
                if (r2 == rrow || M[r2][col] == 0) continue;
                Rational f = M[r2][col];
                for (size_t j = 0; j < d; ++j) M[r2][j] -= f * M[rrow][j];
            }
            pivot_cols.push_back(col);
            ++rrow;
        }
        std::vector<bool> is_pivot(d, false);
        for (size_t c : pivot_cols) is_pivot[c] = true;
        for (size_t free = 0; free < d; ++free) {
            if (is_pivot[free]) continue;
            RatVec w(d, Rational(0));
            w[free] = 1;
            for (size_t t = 0; t < pivot_cols.size(); ++t) w[pivot_cols[t]] = -M[t][free];
            ah.complement.push_back(primitive(w));
        }
    }
    return ah;
}

}  // namespace detail

/// Minimal halfspace description of the convex hull of a point set. Hulls of
/// lower affine dimension are described by facets within the affine hull plus
/// paired halfspaces for each affine equality.
inline HRep facets_of(const VRep& v) {
    if (v.vertices.empty()) throw std::invalid_argument("facets_of: empty point set");
    const size_t d = static_cast<size_t>(v.dimension);
    HRep out;
    out.dimension = v.dimension;
    detail::AffineHull ah = detail::affine_hull(v.vertices, d);
    const size_t dp = ah.span.size();

    // affine equalities as halfspace pairs
    for (const auto& w : ah.complement) {
        Rational c = -dot(w, ah.origin);
        Halfspace h1{w, c};
        RatVec wn(d);
        for (size_t j = 0; j < d; ++j) wn[j] = -w[j];
        Halfspace h2{wn, -c};
        out.halfspaces.push_back(h1);
        out.halfspaces.push_back(h2);
    }
    if (dp == 0) {
        out.normalize();
        return out;  // single point: equalities alone pin it
    }

    // coordinates within the hull: p = origin + span * t
    std::vector<RatVec> coords;
    coords.reserve(v.vertices.size());
    for (const auto& p : v.vertices) {
        // solve span^T-free system: t from the construction (span rows independent)
        // build square system using dp independent rows of span matrix
        std::vector<RatVec> M(dp, RatVec(dp));
        RatVec rhs(dp);
        // use normal equations: (S S^T) t = S (p - origin), S rows = span vectors
        for (size_t a = 0; a < dp; ++a) {
            for (size_t b = 0; b < dp; ++b) M[a][b] = dot(ah.span[a], ah.span[b]);
            RatVec diff(d);
            for (size_t j = 0; j < d; ++j) diff[j] = p[j] - ah.origin[j];
            rhs[a] = dot(ah.span[a], diff);
        }
        coords.push_back(detail::gauss_solve_square(std::move(M), std::move(rhs)));
    }

    // facets of the full-dimensional hull via the dual cone; extreme-looking
    // points first keeps the intermediate descriptions small
    std::vector<double> dist2(coords.size(), 0.0);
    {
        std::vector<double> centroid(dp, 0.0);
        for (const auto& t : coords)
            for (size_t j = 0; j < dp; ++j) centroid[j] += rat_double(t[j]);
        for (double& c : centroid) c /= double(coords.size());
        for (size_t i = 0; i < coords.size(); ++i)
            for (size_t j = 0; j < dp; ++j) {
                double dx = rat_double(coords[i][j]) - centroid[j];
                dist2[i] += dx * dx;
            }
    }
    std::vector<size_t> order(coords.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return dist2[a] > dist2[b]; });
    std::vector<RatVec> rows;
    rows.reserve(coords.size());
    for (size_t i : order) {
        RatVec r;
        r.reserve(dp + 1);
        r.push_back(1);
        r.insert(r.end(), coords[i].begin(), coords[i].end());
        rows.push_back(std::move(r));
    }
    std::vector<RatVec> rays = dd_extreme_rays(rows, dp + 1);
    for (const auto& r : rays) {
        RatVec nprime(r.begin() + 1, r.end());
        bool zero = true;
        for (const auto& q : nprime)
            if (q != 0) zero = false;
        if (zero) continue;
        // lift n' back: n = sum_a n'_a * dual of span; any n with span_a . n = n'_a works
        std::vector<RatVec> M(dp, RatVec(dp));
        for (size_t a = 0; a < dp; ++a)
            for (size_t b = 0; b < dp; ++b) M[a][b] = dot(ah.span[a], ah.span[b]);
        RatVec lam = detail::gauss_solve_square(std::move(M), nprime);
        RatVec nfull(d, Rational(0));
        for (size_t a = 0; a < dp; ++a)
            for (size_t j = 0; j < d; ++j) nfull[j] += lam[a] * ah.span[a][j];
        Rational off = r[0] - dot(nfull, ah.origin);
        out.halfspaces.push_back(Halfspace{std::move(nfull), std::move(off)});
    }
    out.normalize();
    return out;
}

}  // namespace belldepth
