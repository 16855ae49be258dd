#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "belldepth/double_description.hpp"
#include "belldepth/polytope_ops.hpp"

namespace belldepth {

/// Orthogonal projection of a bounded polytope onto its first `keep`
/// coordinates, computed by incremental hull growth against an exact LP
/// oracle: every hull facet is either confirmed optimal over the source
/// polytope or refuted by a new boundary point. Output equals the minimal
/// facet description of the projection; memory stays proportional to the
/// projection, not to the source.
///
/// Requires the projection to be full-dimensional in the target coordinates.
inline HRep project_via_oracle(const HRep& src, int keep) {
    if (keep < 1 || keep > src.dimension) throw std::out_of_range("bad projection dimension");
    const int d = src.dimension;
    std::vector<RatVec> A;
    RatVec b;
    for (const auto& hs : src.halfspaces) {
        A.push_back(hs.normal);
        b.push_back(-hs.offset);
    }
    auto oracle = [&](const RatVec& dir5) {
        RatVec c(d, Rational(0));
        for (int j = 0; j < keep; ++j) c[j] = dir5[j];
        LPResult res = lp_minimize(A, b, c);
        if (res.status != LPStatus::Optimal)
            throw std::runtime_error("projection oracle: source polytope unbounded or empty");
        return std::pair<Rational, RatVec>(res.value,
                                           RatVec(res.point.begin(), res.point.begin() + keep));
    };

    std::set<RatVec, RatVecLess> pts;
    // seed: coordinate extremes, then grow the affine span along complement
    // directions until the point set spans the target space
    for (int j = 0; j < keep; ++j) {
        for (int sign : {1, -1}) {
            RatVec dir(keep, Rational(0));
            dir[j] = sign;
            pts.insert(oracle(dir).second);
        }
    }
    for (;;) {
        std::vector<RatVec> plist(pts.begin(), pts.end());
        auto ah = detail::affine_hull(plist, keep);
        if (ah.span.size() == (size_t)keep) break;
        bool grew = false;
        for (const auto& w : ah.complement) {
            for (int sign : {1, -1}) {
                RatVec dir(keep);
                for (int j = 0; j < keep; ++j) dir[j] = sign * w[j];
                RatVec p = oracle(dir).second;
                if (pts.insert(p).second) {
                    // the span grew only if p leaves the current affine hull
                    if (dot(w, p) != dot(w, ah.origin)) grew = true;
                }
            }
            if (grew) break;
        }
        if (!grew) throw std::runtime_error("projection oracle: projection is not full-dimensional");
    }
    for (;;) {
        VRep v;
        v.dimension = keep;
        v.vertices.assign(pts.begin(), pts.end());
        HRep hull = facets_of(v);
        bool grew = false;
        for (const auto& hs : hull.halfspaces) {
            auto [val, pt] = oracle(hs.normal);
            if (val + hs.offset < 0) {  // the hull facet cuts into the projection
                pts.insert(std::move(pt));
                grew = true;
            }
        }
        if (!grew) return hull;
    }
}

}  // namespace belldepth
