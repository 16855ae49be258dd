#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "belldepth/producible.hpp"

namespace belldepth {

/// The collective two-body expression  2*S0 + (1/2)S00 + S01 + (1/2)S11 whose
/// k-producible bounds admit closed forms.
inline const TwoBodySymInequality& collective_expression() {
    static const TwoBodySymInequality q{Rational(2), Rational(0), Rational(1), Rational(1),
                                        Rational(1), Rational(0)};
    return q;
}

/// Slope correction alpha_k of the closed-form bound (0 for k <= 3).
inline Rational bound_slope(int k) {
    switch (k) {
        case 1:
        case 2:
        case 3:
            return Rational(0);
        case 4:
            return Rational(2) / 49;
        case 5:
            return Rational(8) / 121;
        case 6:
            return Rational(1) / 12;
    }
    throw std::out_of_range("bound slope known for k = 1..6 only");
}

/// Closed-form k-producible bound of the collective expression:
/// 2N for k <= 3 and (2 + alpha_k) N + 1/2 for k = 4,5,6.
inline Rational closed_form_bound(int k, int N) {
    if (k < 1 || k > 6) throw std::out_of_range("closed_form_bound: k = 1..6");
    if (N < k) throw std::out_of_range("closed_form_bound: N >= k required");
    if (k <= 3) return Rational(2 * N);
    return (Rational(2) + bound_slope(k)) * N + Rational(1) / 2;
}

/// Quadratic-form certificate for populations over blocks of size <= 3:
/// I(xi) + 2N = 2 Z (Z + 1) + P(xi) with integer Z and P >= 0.
struct NJPDecomposition {
    Rational Z;
    Rational P;
    Rational reconstructed;  // 2 Z (Z+1) + P
};

namespace detail {

/// Strategy-index helpers on the canonical (lex-sorted) catalogs. The indices
/// below identify strategies by their 5-vector, not by list position.
inline long count_matching(const PopulationVector& xi, const StrategyCatalog& cat, int p,
                           const RatVec& strat) {
    const auto& list = cat.at(p);
    for (const auto& [key, c] : xi.counts) {
        if (key.first != p) continue;
        if (lex_eq(list[key.second], strat)) return c;
    }
    return 0;
}

inline RatVec vec5(int a, int b, int c, int d, int e) {
    return {Rational(a), Rational(b), Rational(c), Rational(d), Rational(e)};
}

}  // namespace detail

/// Decomposes I(xi) + 2N for a population using blocks of size at most 3.
/// X counts aligned singletons, Y the fully-aligned three-party boxes, and
/// P collects the remaining strictly nonnegative linear terms.
inline NJPDecomposition njp_decompose(const PopulationVector& xi, const StrategyCatalog& cat) {
    for (const auto& [key, c] : xi.counts)
        if (key.first > 3 && c > 0)
            throw std::invalid_argument("decomposition applies to blocks of size <= 3 only");
    using detail::count_matching;
    using detail::vec5;
    auto c1 = [&](int i) {
        static const std::array<RatVec, 4> t1 = {vec5(1, 1, 0, 0, 0), vec5(1, -1, 0, 0, 0),
                                                 vec5(-1, 1, 0, 0, 0), vec5(-1, -1, 0, 0, 0)};
        return count_matching(xi, cat, 1, t1[i - 1]);
    };
    auto c2 = [&](int i) {
        static const std::array<RatVec, 4> t2 = {vec5(0, 0, 2, 2, -2), vec5(0, 0, -2, 2, 2),
                                                 vec5(0, 0, 2, -2, -2), vec5(0, 0, -2, -2, 2)};
        return count_matching(xi, cat, 2, t2[i - 1]);
    };
    auto c3 = [&](int i) {
        static const std::array<RatVec, 8> t3 = {
            vec5(-1, -1, 6, -2, -2), vec5(-1, -1, -2, -2, 6), vec5(-1, 1, 6, 2, -2),
            vec5(-1, 1, -2, 2, 6),   vec5(1, -1, 6, 2, -2),   vec5(1, -1, -2, 2, 6),
            vec5(1, 1, 6, -2, -2),   vec5(1, 1, -2, -2, 6)};
        return count_matching(xi, cat, 3, t3[i - 1]);
    };
    Rational X = 2 * Rational(c1(1) - c1(4));
    Rational Y = 2 * Rational(-c3(1) - c3(2) + c3(7) + c3(8));
    Rational P = 4 * Rational(c1(2)) + 2 * (3 * Rational(c2(1) + c2(2)) + c2(3) + c2(4)) +
                 2 * (2 * Rational(c3(1) + c3(2)) + 4 * Rational(c3(3) + c3(4)) +
                      6 * Rational(c3(5) + c3(6)) + 2 * Rational(c3(7) + c3(8)));
    NJPDecomposition out;
    out.Z = (X + Y) / 2;
    out.P = P;
    out.reconstructed = 2 * out.Z * (out.Z + 1) + P;
    return out;
}

/// Per-strategy linear coefficient of the quadratic rewrite:
/// f(p, s) = I(s) + 2p - (1/2)[S0+S1]^2 - [S0+S1].
inline Rational strategy_linear_term(int p, const RatVec& s) {
    Rational c = s[0] + s[1];
    return collective_expression().value_at(s) + 2 * p - c * c / 2 - c;
}

/// Magnitude of the most negative linear coefficient over all blocks of size
/// at most k; the closed-form slope correction is alpha_k = m_k / k.
inline Rational compute_m_k(int k, const StrategyCatalog& catalog) {
    if (k < 4 || k > 6) throw std::out_of_range("compute_m_k: k = 4..6");
    bool first = true;
    Rational worst;
    for (int p = 1; p <= k; ++p) {
        for (const auto& s : catalog.at(p)) {
            Rational f = strategy_linear_term(p, s);
            if (first || f < worst) {
                worst = f;
                first = false;
            }
        }
    }
    return -worst;
}

/// Certificate that the closed-form bound holds over the enumerated
/// k-producible vertex set.
struct BoundCertificate {
    int k = 0;
    int N = 0;
    bool pass = false;
    Rational bound;          // closed-form beta_C^k(N)
    Rational vertex_min;     // exact minimum of I over producible vertices
    Rational slack;          // vertex_min + bound (>= 0 iff pass)
    bool quadratic_ok = true;  // k<=3: NJP identity + nonnegativity
    bool linear_ok = true;     // k>=4: f(p,s) + alpha_k p >= 0 over the catalog
    std::string note;
};

/// For k <= 3: exhaustively checks the quadratic decomposition identity and
/// its nonnegativity over every population. For k >= 4: checks the linear-term
/// criterion over the catalog and that no producible vertex beats the
/// closed-form bound.
inline BoundCertificate certify_bound(int k, int N, const StrategyCatalog& catalog,
                                      std::uint64_t cap = 50'000'000) {
    BoundCertificate cert;
    cert.k = k;
    cert.N = N;
    cert.bound = closed_form_bound(k, N);
    const auto& expr = collective_expression();
    bool first = true;
    try {
        for_each_population(N, k, catalog, [&](const PopulationVector& xi) {
            RatVec pt = point_from_population(xi, catalog);
            Rational v = expr.value_at(pt);
            if (first || v < cert.vertex_min) {
                cert.vertex_min = v;
                first = false;
            }
            if (k <= 3) {
                NJPDecomposition d = njp_decompose(xi, catalog);
                if (d.reconstructed != v + 2 * N || d.P < 0 || d.Z.get_den() != 1 ||
                    2 * d.Z * (d.Z + 1) < 0)
                    cert.quadratic_ok = false;
            }
        }, cap);
    } catch (const std::runtime_error&) {
        cert.note = "population cap exceeded: partial certificate over the enumerated range";
        cert.pass = false;
        return cert;
    }
    if (k >= 4) {
        Rational alpha = bound_slope(k);
        for (int p = 1; p <= k; ++p)
            for (const auto& s : catalog.at(p))
                if (strategy_linear_term(p, s) + alpha * p < 0) cert.linear_ok = false;
    }
    cert.slack = cert.vertex_min + cert.bound;
    cert.pass = cert.slack >= 0 && cert.quadratic_ok && cert.linear_ok;
    return cert;
}

}  // namespace belldepth
