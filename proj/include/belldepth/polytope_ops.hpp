#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "belldepth/geometry.hpp"
#include "belldepth/simplex.hpp"

namespace belldepth {

namespace detail {

struct TrackedRow {
    Halfspace hs;
    std::set<int> support;  // originating rows of the input system
};

/// Canonicalize, drop trivial rows, dedupe, and drop same-normal dominated
/// rows. Deterministic output order (sorted by canonical key).
inline std::vector<TrackedRow> presolve_rows(std::vector<TrackedRow> rows) {
    std::map<RatVec, TrackedRow, RatVecLess> uniq;
    for (auto& r : rows) {
        r.hs = r.hs.canonical();
        if (r.hs.trivially_true()) continue;
        RatVec k = r.hs.key();
        auto it = uniq.find(k);
        if (it == uniq.end())
            uniq.emplace(std::move(k), std::move(r));
        else if (r.support.size() < it->second.support.size())
            it->second = std::move(r);
    }
    // keep only the strongest offset per normal direction
    std::map<RatVec, std::pair<Rational, RatVec>, RatVecLess> strongest;
    for (auto& [k, r] : uniq) {
        RatVec nk = primitive(r.hs.normal);
        size_t nz = 0;
        while (nz < nk.size() && nk[nz] == 0) ++nz;
        Rational scale = r.hs.normal[nz] / nk[nz];
        Rational scaled_off = r.hs.offset / scale;
        auto it = strongest.find(nk);
        if (it == strongest.end() || scaled_off < it->second.first)
            strongest[nk] = {scaled_off, k};
    }
    std::vector<TrackedRow> kept;
    kept.reserve(strongest.size());
    for (auto& [nk, pr] : strongest) kept.push_back(uniq.at(pr.second));
    std::sort(kept.begin(), kept.end(),
              [](const TrackedRow& a, const TrackedRow& b) { return lex_less(a.hs.key(), b.hs.key()); });
    return kept;
}

inline Rational slack(const Halfspace& h, const RatVec& x) { return dot(h.normal, x) + h.offset; }

/// Exact particular solution of M x = rhs (M: r rows, c cols), free variables
/// set to zero. Returns empty optional when inconsistent.
inline std::optional<RatVec> solve_consistent(std::vector<RatVec> M, RatVec rhs) {
    const size_t r = M.size();
    const size_t c = r ? M[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < c && row < r; ++col) {
        size_t piv = row;
        while (piv < r && M[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(M[piv], M[row]);
        std::swap(rhs[piv], rhs[row]);
        Rational dv = M[row][col];
        for (size_t j = col; j < c; ++j) M[row][j] /= dv;
        rhs[row] /= dv;
        for (size_t i = 0; i < r; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rational f = M[i][col];
            for (size_t j = col; j < c; ++j) M[i][j] -= f * M[row][j];
            rhs[i] -= f * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t i = row; i < r; ++i)
        if (rhs[i] != 0) return std::nullopt;
    RatVec x(c, Rational(0));
    for (size_t t = 0; t < pivot_col.size(); ++t) x[pivot_col[t]] = rhs[t];
    return x;
}

/// Exact redundancy decision for row u against the active rows, guided by a
/// floating-point LP whose proposed basis is turned into an exact Farkas
/// certificate (redundant case) or an exact witness vertex (essential case).
/// Falls back to the exact simplex when neither certificate verifies.
struct RedundancyOutcome {
    bool redundant = false;
    RatVec witness;  // violates u, satisfies the others (when essential)
};

template <typename ActiveFn>
inline RedundancyOutcome decide_redundant(const std::vector<TrackedRow>& kept, size_t u,
                                          ActiveFn&& active) {
    const size_t d = kept[u].hs.normal.size();
    std::vector<size_t> others;
    for (size_t j = 0; j < kept.size(); ++j)
        if (j != u && active(j)) others.push_back(j);

    // float guide
    std::vector<std::vector<double>> Af;
    std::vector<double> bf, cf(d);
    Af.reserve(others.size());
    for (size_t j : others) {
        std::vector<double> row(d);
        double scale = 0;
        for (size_t t = 0; t < d; ++t) scale = std::max(scale, std::abs(rat_double(kept[j].hs.normal[t])));
        if (scale <= 0) scale = 1;
        for (size_t t = 0; t < d; ++t) row[t] = rat_double(kept[j].hs.normal[t]) / scale;
        Af.push_back(std::move(row));
        bf.push_back(-rat_double(kept[j].hs.offset) / scale);
    }
    for (size_t t = 0; t < d; ++t) cf[t] = rat_double(kept[u].hs.normal[t]);
    std::vector<size_t> basis;
    if (FloatGuideLP::propose_basis(Af, bf, cf, basis)) {
        // certificate 1: conic combination of basis rows dominating u
        {
            std::vector<RatVec> M(d, RatVec(basis.size()));
            for (size_t bcol = 0; bcol < basis.size(); ++bcol)
                for (size_t t = 0; t < d; ++t) M[t][bcol] = kept[others[basis[bcol]]].hs.normal[t];
            auto lam = solve_consistent(std::move(M), kept[u].hs.normal);
            if (lam) {
                bool nonneg = true;
                Rational bound = 0;
                for (size_t bcol = 0; bcol < basis.size(); ++bcol) {
                    if ((*lam)[bcol] < 0) {
                        nonneg = false;
                        break;
                    }
                    bound += (*lam)[bcol] * (-kept[others[basis[bcol]]].hs.offset);
                }
                if (nonneg && bound + kept[u].hs.offset >= 0) return {true, {}};
            }
        }
        // certificate 2: vertex of the tight rows violating u
        {
            std::vector<RatVec> M;
            RatVec rhs;
            for (size_t bcol = 0; bcol < basis.size(); ++bcol) {
                M.push_back(kept[others[basis[bcol]]].hs.normal);
                rhs.push_back(-kept[others[basis[bcol]]].hs.offset);
            }
            auto x = solve_consistent(std::move(M), std::move(rhs));
            if (x && slack(kept[u].hs, *x) < 0) {
                bool feasible = true;
                for (size_t j : others)
                    if (slack(kept[j].hs, *x) < 0) {
                        feasible = false;
                        break;
                    }
                if (feasible) return {false, std::move(*x)};
            }
        }
    }
    // exact fallback
    std::vector<RatVec> A;
    RatVec b;
    A.reserve(others.size());
    for (size_t j : others) {
        A.push_back(kept[j].hs.normal);
        b.push_back(-kept[j].hs.offset);
    }
    LPResult res = lp_minimize(A, b, kept[u].hs.normal);
    if (res.status == LPStatus::Optimal) {
        if (res.value + kept[u].hs.offset >= 0) return {true, {}};
        return {false, std::move(res.point)};
    }
    if (res.status == LPStatus::Infeasible) return {true, {}};  // others already empty
    return {false, {}};  // unbounded below: essential, no finite witness
}

/// LP-backed redundancy filter returning a minimal subsystem with the same
/// feasible set, independent of input ordering. Every drop and keep decision
/// is backed by an exact certificate; the float LP only proposes them.
inline std::vector<TrackedRow> minimal_rows(std::vector<TrackedRow> rows) {
    std::vector<TrackedRow> kept = presolve_rows(std::move(rows));
    const size_t m = kept.size();
    std::vector<bool> alive(m, true);

    struct Witness {
        std::vector<size_t> violated;  // sorted row indices with negative slack
    };
    std::vector<Witness> wits;
    auto add_witness = [&](const RatVec& x) {
        Witness w;
        for (size_t s = 0; s < m; ++s)
            if (alive[s] && slack(kept[s].hs, x) < 0) w.violated.push_back(s);
        wits.push_back(std::move(w));
    };
    // essential without an LP when some cached vertex violates u and nothing
    // else still alive
    auto witness_certifies = [&](size_t u) {
        for (const auto& w : wits) {
            bool hits_u = false, hits_other = false;
            for (size_t s : w.violated) {
                if (s == u)
                    hits_u = true;
                else if (alive[s])
                    hits_other = true;
                if (hits_other) break;
            }
            if (hits_u && !hits_other) return true;
        }
        return false;
    };

    // combination-heavy rows first: they are the likely-redundant bulk and
    // dropping them early shrinks every later test
    std::vector<size_t> order(m);
    for (size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return kept[a].support.size() > kept[b].support.size();
    });

    for (size_t u : order) {
        if (witness_certifies(u)) continue;
        RedundancyOutcome out = decide_redundant(kept, u, [&](size_t j) { return alive[j]; });
        if (out.redundant)
            alive[u] = false;
        else if (!out.witness.empty())
            add_witness(out.witness);
    }
    std::vector<TrackedRow> rkept;
    for (size_t j = 0; j < m; ++j)
        if (alive[j]) rkept.push_back(std::move(kept[j]));
    return rkept;
}

/// One Fourier-Motzkin step on tracked rows; eliminates coordinate `pos`.
/// `step` counts eliminations performed so far in the enclosing projection
/// (Chernikov rule: combined rows supported by more than step+1 original rows
/// are provably redundant and are dropped before the LP pass).
inline std::vector<TrackedRow> fm_step(const std::vector<TrackedRow>& rows, size_t pos, int step) {
    std::vector<const TrackedRow*> plus, minus;
    std::vector<TrackedRow> out;
    for (const auto& r : rows) {
        int s = sgn(r.hs.normal[pos]);
        if (s > 0)
            plus.push_back(&r);
        else if (s < 0)
            minus.push_back(&r);
        else {
            TrackedRow z = r;
            z.hs.normal.erase(z.hs.normal.begin() + pos);
            out.push_back(std::move(z));
        }
    }
    const size_t max_support = static_cast<size_t>(step) + 1;
    for (const auto* p : plus) {
        for (const auto* q : minus) {
            std::set<int> sup;
            std::set_union(p->support.begin(), p->support.end(), q->support.begin(),
                           q->support.end(), std::inserter(sup, sup.begin()));
            if (sup.size() > max_support) continue;
            Rational a = p->hs.normal[pos];
            Rational bq = -q->hs.normal[pos];
            TrackedRow nr;
            nr.support = std::move(sup);
            nr.hs.offset = bq * p->hs.offset + a * q->hs.offset;
            nr.hs.normal.resize(p->hs.normal.size() - 1);
            size_t t = 0;
            for (size_t j = 0; j < p->hs.normal.size(); ++j) {
                if (j == pos) continue;
                nr.hs.normal[t++] = bq * p->hs.normal[j] + a * q->hs.normal[j];
            }
            out.push_back(std::move(nr));
        }
    }
    return minimal_rows(std::move(out));
}

}  // namespace detail

/// Minimal subsystem with the same feasible set. Decisions are exact (rational
/// simplex); result is independent of input ordering. Empty feasible sets are
/// preserved.
inline HRep remove_redundant(const HRep& h) {
    std::vector<detail::TrackedRow> rows;
    int i = 0;
    for (const auto& hs : h.halfspaces) rows.push_back({hs, {i++}});
    rows = detail::minimal_rows(std::move(rows));
    HRep out;
    out.dimension = h.dimension;
    for (auto& r : rows) out.halfspaces.push_back(std::move(r.hs));
    return out;
}

/// Orthogonal projection killing the listed coordinates, via iterated
/// Fourier-Motzkin elimination with Chernikov support pruning and an exact
/// minimal set after every step. `targets` are indices into the ORIGINAL
/// coordinate system; they are eliminated in the order given. Remaining
/// coordinates keep their relative order.
inline HRep fm_project(const HRep& h, const std::vector<int>& targets) {
    for (int t : targets)
        if (t < 0 || t >= h.dimension) throw std::out_of_range("eliminated coordinate out of range");
    std::vector<detail::TrackedRow> rows;
    int i = 0;
    for (const auto& hs : h.halfspaces) rows.push_back({hs, {i++}});
    std::vector<int> live(h.dimension);
    for (int j = 0; j < h.dimension; ++j) live[j] = j;
    int step = 0;
    for (int t : targets) {
        auto it = std::find(live.begin(), live.end(), t);
        if (it == live.end()) throw std::invalid_argument("coordinate eliminated twice");
        size_t pos = static_cast<size_t>(it - live.begin());
        ++step;
        rows = detail::fm_step(rows, pos, step);
        live.erase(it);
    }
    HRep out;
    out.dimension = static_cast<int>(live.size());
    for (auto& r : rows) out.halfspaces.push_back(std::move(r.hs));
    return out;
}

/// Single Fourier-Motzkin elimination of one coordinate; returns the minimal
/// description of the projection in dimension d-1.
inline HRep fm_eliminate(const HRep& h, int var_index) {
    return fm_project(h, {var_index});
}

/// fm_project with the elimination order chosen greedily: at each step the
/// remaining target with the fewest sign-pair combinations goes first. This
/// keeps intermediate systems small; the projection itself is order
/// independent.
inline HRep fm_project_greedy(const HRep& h, const std::vector<int>& targets) {
    for (int t : targets)
        if (t < 0 || t >= h.dimension) throw std::out_of_range("eliminated coordinate out of range");
    std::vector<detail::TrackedRow> rows;
    int i = 0;
    for (const auto& hs : h.halfspaces) rows.push_back({hs, {i++}});
    std::vector<int> live(h.dimension);
    for (int j = 0; j < h.dimension; ++j) live[j] = j;
    std::vector<bool> is_target(h.dimension, false);
    for (int t : targets) is_target[t] = true;
    int step = 0;
    for (size_t done = 0; done < targets.size(); ++done) {
        size_t best_pos = live.size();
        long best_score = -1;
        for (size_t p = 0; p < live.size(); ++p) {
            if (!is_target[live[p]]) continue;
            long np = 0, nn = 0;
            for (const auto& r : rows) {
                int s = sgn(r.hs.normal[p]);
                if (s > 0)
                    ++np;
                else if (s < 0)
                    ++nn;
            }
            long score = np * nn;
            if (best_score < 0 || score < best_score) {
                best_score = score;
                best_pos = p;
            }
        }
        ++step;
        rows = detail::fm_step(rows, best_pos, step);
        live.erase(live.begin() + best_pos);
    }
    HRep out;
    out.dimension = static_cast<int>(live.size());
    for (auto& r : rows) out.halfspaces.push_back(std::move(r.hs));
    return out;
}

}  // namespace belldepth
