#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "belldepth/double_description.hpp"
#include "belldepth/symmetric_scenario.hpp"

namespace belldepth {

/// Inequality  alpha*S0 + beta*S1 + (gamma/2)*S00 + delta*S01 + (eps/2)*S11 + bound >= 0
/// over the symmetric two-body coordinates.
struct TwoBodySymInequality {
    Rational alpha, beta, gamma, delta, epsilon;
    Rational bound;

    Rational value_at(const RatVec& s) const {
        return alpha * s[0] + beta * s[1] + gamma / 2 * s[2] + delta * s[3] + epsilon / 2 * s[4];
    }

    RatVec coeffs() const { return {alpha, beta, gamma, delta, epsilon, bound}; }

    static TwoBodySymInequality from_coeffs(const RatVec& c) {
        return {c[0], c[1], c[2], c[3], c[4], c[5]};
    }

    /// Halfspace form over (S0,S1,S00,S01,S11).
    Halfspace as_halfspace() const {
        return Halfspace{{alpha, beta, gamma / 2, delta, epsilon / 2}, bound};
    }

    static TwoBodySymInequality from_halfspace(const Halfspace& h) {
        return {h.normal[0], h.normal[1], 2 * h.normal[2], h.normal[3], 2 * h.normal[4], h.offset};
    }
};

/// The 8-element relabeling group: settings swap and the two outcome flips.
/// Acting on points: swap (S0,S1),(S00,S11); flip0 negates S0,S01; flip1
/// negates S1,S01.
inline RatVec sym_image_point(const RatVec& v, bool swap, bool flip0, bool flip1) {
    RatVec w = swap ? RatVec{v[1], v[0], v[4], v[3], v[2]} : v;
    if (flip0) {
        w[0] = -w[0];
        w[3] = -w[3];
    }
    if (flip1) {
        w[1] = -w[1];
        w[3] = -w[3];
    }
    return w;
}

inline TwoBodySymInequality sym_image_ineq(const TwoBodySymInequality& q, bool swap, bool flip0,
                                           bool flip1) {
    TwoBodySymInequality r = q;
    if (swap) {
        std::swap(r.alpha, r.beta);
        std::swap(r.gamma, r.epsilon);
    }
    if (flip0) {
        r.alpha = -r.alpha;
        r.delta = -r.delta;
    }
    if (flip1) {
        r.beta = -r.beta;
        r.delta = -r.delta;
    }
    return r;
}

/// Canonical class representative: integer-primitive scaling, then the
/// lexicographically smallest (bound, alpha, beta, gamma, delta, epsilon)
/// over the 8 group images.
inline RatVec canonical_class(const TwoBodySymInequality& q) {
    bool first = true;
    RatVec best;
    for (bool sw : {false, true})
        for (bool f0 : {false, true})
            for (bool f1 : {false, true}) {
                TwoBodySymInequality im = sym_image_ineq(q, sw, f0, f1);
                RatVec key = primitive({im.bound, im.alpha, im.beta, im.gamma, im.delta, im.epsilon});
                if (first || lex_less(key, best)) {
                    best = key;
                    first = false;
                }
            }
    return best;
}

/// Block strategies available to groups of p parties: the deterministic
/// strategies for p = 1 and the nonlocal extremal boxes of NS_p^{2,S} for
/// p >= 2 (local p-party blocks decompose into singletons exactly).
struct StrategyCatalog {
    // strategies[p] = list of 5-vectors, p = 1..max_block
    std::map<int, std::vector<RatVec>> strategies;

    int max_block() const { return strategies.empty() ? 0 : strategies.rbegin()->first; }

    static StrategyCatalog from_ns_catalogs(const std::vector<NsCatalog>& cats) {
        StrategyCatalog c;
        c.strategies[1] = local_sym_vertices(1).vertices;
        for (const auto& cat : cats) {
            if (cat.k < 2) continue;
            c.strategies[cat.k] = cat.nonlocal_vertices();
        }
        return c;
    }

    const std::vector<RatVec>& at(int p) const {
        auto it = strategies.find(p);
        if (it == strategies.end())
            throw std::out_of_range("no strategy catalog for block size " + std::to_string(p));
        return it->second;
    }
};

/// Population: how many blocks of each (size, strategy index) a vertex uses.
struct PopulationVector {
    int N = 0;
    int k = 0;
    std::map<std::pair<int, int>, long> counts;  // (p, i) -> multiplicity

    long weight() const {
        long s = 0;
        for (const auto& [key, c] : counts) s += key.first * c;
        return s;
    }
};

/// Symmetric two-body point of a population. Within-block two-body sums enter
/// linearly; pairs across blocks factorize into products of one-body values.
inline RatVec point_from_population(const PopulationVector& xi, const StrategyCatalog& catalog) {
    if (xi.weight() != xi.N) throw std::invalid_argument("population does not partition N");
    struct Term {
        const RatVec* s;
        long c;
    };
    std::vector<Term> terms;
    for (const auto& [key, c] : xi.counts) {
        if (c == 0) continue;
        const auto& list = catalog.at(key.first);
        if (key.second < 0 || key.second >= (int)list.size())
            throw std::out_of_range("strategy index outside catalog");
        terms.push_back({&list[key.second], c});
    }
    RatVec out(5, Rational(0));
    for (const auto& t : terms) {
        out[0] += Rational(t.c) * (*t.s)[0];
        out[1] += Rational(t.c) * (*t.s)[1];
    }
    const int pair_idx[3][2] = {{0, 0}, {0, 1}, {1, 1}};
    for (int pi = 0; pi < 3; ++pi) {
        int m = pair_idx[pi][0], n = pair_idx[pi][1];
        Rational tot = 0;
        for (const auto& t : terms) {
            tot += Rational(t.c) * (*t.s)[2 + pi];
            tot += Rational(t.c) * (t.c - 1) * (*t.s)[m] * (*t.s)[n];
        }
        for (const auto& a : terms)
            for (const auto& b : terms) {
                if (&a == &b) continue;
                tot += Rational(a.c) * b.c * (*a.s)[m] * (*b.s)[n];
            }
        out[2 + pi] = tot;
    }
    return out;
}

/// Walks every population of total weight N with blocks of size at most k,
/// calling fn on each. Deterministic order. Returns the population count.
inline std::uint64_t for_each_population(int N, int k, const StrategyCatalog& catalog,
                                         const std::function<void(const PopulationVector&)>& fn,
                                         std::uint64_t cap = 50'000'000) {
    std::vector<std::pair<int, int>> items;  // (p, i)
    for (int p = 1; p <= k; ++p)
        for (size_t i = 0; i < catalog.at(p).size(); ++i) items.push_back({p, (int)i});
    PopulationVector xi;
    xi.N = N;
    xi.k = k;
    std::uint64_t seen = 0;
    std::function<void(size_t, int)> rec = [&](size_t idx, int remaining) {
        if (remaining == 0) {
            if (++seen > cap) throw std::runtime_error("population cap exceeded");
            if (fn) fn(xi);
            return;
        }
        if (idx == items.size()) return;
        auto [p, i] = items[idx];
        long maxc = remaining / p;
        for (long c = maxc; c >= 0; --c) {
            if (c > 0) xi.counts[{p, i}] = c;
            rec(idx + 1, remaining - (int)(c * p));
            xi.counts.erase({p, i});
        }
    };
    rec(0, N);
    return seen;
}

/// Independent population counter (composition recursion over the catalog
/// sizes; no enumeration).
inline std::uint64_t population_count(int N, int k, const StrategyCatalog& catalog) {
    // dp over block sizes: multisets of size c from n_p strategies contribute
    // C(n_p + c - 1, c) ways for weight p*c
    std::vector<std::uint64_t> dp(N + 1, 0);
    dp[0] = 1;
    for (int p = 1; p <= k; ++p) {
        const std::uint64_t np = catalog.at(p).size();
        std::vector<std::uint64_t> next(N + 1, 0);
        for (int rem = 0; rem <= N; ++rem) {
            if (dp[rem] == 0) continue;
            // choose c blocks of size p as a multiset over np strategies
            std::uint64_t ways = 1;  // c = 0
            next[rem] += dp[rem];
            for (long c = 1; rem + p * c <= N; ++c) {
                ways = ways * (np + c - 1) / c;  // binomial(np+c-1, c), exact stepwise
                next[rem + p * c] += dp[rem] * ways;
            }
        }
        dp = std::move(next);
    }
    return dp[N];
}

/// Deduplicated spanning point set of the k-producible symmetric two-body
/// polytope for N parties; its convex hull is the polytope.
inline VRep producible_vertices(int N, int k, const StrategyCatalog& catalog,
                                std::uint64_t cap = 50'000'000) {
    if (k < 1) throw std::out_of_range("k >= 1 required");
    if (k > catalog.max_block())
        throw std::out_of_range("no strategy catalog beyond block size " +
                                std::to_string(catalog.max_block()));
    if (k > N) throw std::out_of_range("block size exceeds party count");
    std::set<RatVec, RatVecLess> pts;
    for_each_population(N, k, catalog,
                        [&](const PopulationVector& xi) { pts.insert(point_from_population(xi, catalog)); },
                        cap);
    VRep out;
    out.dimension = 5;
    out.vertices.assign(pts.begin(), pts.end());
    return out;
}

/// Minimal facet list of the k-producible polytope, grouped into equivalence
/// classes under the 8-element relabeling group. Classes are returned as
/// canonical (bound, alpha..epsilon) rows, sorted.
inline std::vector<TwoBodySymInequality> producible_facets(int N, int k,
                                                           const StrategyCatalog& catalog) {
    VRep pts = producible_vertices(N, k, catalog);
    HRep facets = facets_of(pts);
    std::set<RatVec, RatVecLess> classes;
    for (const auto& hs : facets.halfspaces)
        classes.insert(canonical_class(TwoBodySymInequality::from_halfspace(hs)));
    std::vector<TwoBodySymInequality> out;
    for (const auto& c : classes) out.push_back(TwoBodySymInequality::from_coeffs(
        {c[1], c[2], c[3], c[4], c[5], c[0]}));
    return out;
}

/// Largest violation over the k-producible set: beta_C^k = -min I(vertex).
inline Rational classical_bound(const TwoBodySymInequality& ineq, int N, int k,
                                const StrategyCatalog& catalog) {
    bool first = true;
    Rational best;
    for_each_population(N, k, catalog, [&](const PopulationVector& xi) {
        Rational v = ineq.value_at(point_from_population(xi, catalog));
        if (first || v < best) {
            best = v;
            first = false;
        }
    });
    return -best;
}

// ---- facet catalog JSON (column order: bound, alpha, beta, gamma, delta, epsilon) ----

inline nlohmann::json facets_to_json(int N, int k, const std::vector<TwoBodySymInequality>& classes,
                                     const std::string& provenance = "derived") {
    nlohmann::json j;
    j["N"] = N;
    j["k"] = k;
    j["provenance"] = provenance;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& q : classes) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : RatVec{q.bound, q.alpha, q.beta, q.gamma, q.delta, q.epsilon})
            r.push_back(rat_str(x));
        rows.push_back(r);
    }
    j["classes"] = rows;
    return j;
}

inline std::vector<TwoBodySymInequality> facets_from_json(const nlohmann::json& j) {
    std::vector<TwoBodySymInequality> out;
    for (const auto& r : j.at("classes")) {
        RatVec v = ratvec_from_json(r);
        out.push_back({v[1], v[2], v[3], v[4], v[5], v[0]});
    }
    return out;
}

}  // namespace belldepth
