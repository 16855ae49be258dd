#include <catch2/catch_amalgamated.hpp>

#include "belldepth/symmetric_scenario.hpp"

using namespace belldepth;

namespace {

RatVec pt5(std::initializer_list<const char*> xs) {
    RatVec v;
    for (auto s : xs) v.push_back(rat_parse(s));
    return v;
}

std::vector<RatVec> sorted(std::vector<RatVec> v) {
    std::sort(v.begin(), v.end(), RatVecLess{});
    return v;
}

// reference nonlocal vertex lists of NS_k^{2,S}
const std::vector<RatVec>& ref_nonlocal(int k) {
    static const std::vector<RatVec> k2 = {
        pt5({"0", "0", "2", "2", "-2"}),
        pt5({"0", "0", "-2", "2", "2"}),
        pt5({"0", "0", "2", "-2", "-2"}),
        pt5({"0", "0", "-2", "-2", "2"}),
    };
    static const std::vector<RatVec> k3 = {
        pt5({"-1", "-1", "6", "-2", "-2"}), pt5({"-1", "-1", "-2", "-2", "6"}),
        pt5({"-1", "1", "6", "2", "-2"}),   pt5({"-1", "1", "-2", "2", "6"}),
        pt5({"1", "-1", "6", "2", "-2"}),   pt5({"1", "-1", "-2", "2", "6"}),
        pt5({"1", "1", "6", "-2", "-2"}),   pt5({"1", "1", "-2", "-2", "6"}),
    };
    static const std::vector<RatVec> k4 = {
        pt5({"-2", "-2", "12", "0", "0"}),
        pt5({"-2", "-2", "0", "0", "12"}),
        pt5({"-2", "2", "12", "0", "0"}),
        pt5({"-2", "2", "0", "0", "12"}),
        pt5({"2", "-2", "12", "0", "0"}),
        pt5({"2", "-2", "0", "0", "12"}),
        pt5({"2", "2", "12", "0", "0"}),
        pt5({"2", "2", "0", "0", "12"}),
        pt5({"0", "0", "12", "-4", "-4"}),
        pt5({"0", "0", "-4", "-4", "12"}),
        pt5({"0", "0", "12", "4", "-4"}),
        pt5({"0", "0", "-4", "4", "12"}),
        // the (S00,S01,S11) = (36/7,.,-12/7) family and its settings-swap
        // images; the swap exchanges S0 with S1 and S00 with S11
        pt5({"-20/7", "-4/7", "36/7", "-12/7", "-12/7"}),
        pt5({"-4/7", "-20/7", "-12/7", "-12/7", "36/7"}),
        pt5({"-20/7", "4/7", "36/7", "12/7", "-12/7"}),
        pt5({"-4/7", "20/7", "-12/7", "12/7", "36/7"}),
        pt5({"20/7", "-4/7", "36/7", "12/7", "-12/7"}),
        pt5({"4/7", "-20/7", "-12/7", "12/7", "36/7"}),
        pt5({"20/7", "4/7", "36/7", "-12/7", "-12/7"}),
        pt5({"4/7", "20/7", "-12/7", "-12/7", "36/7"}),
    };
    static const std::vector<RatVec> none;
    switch (k) {
        case 2: return k2;
        case 3: return k3;
        case 4: return k4;
    }
    return none;
}

RatVec apply_sym(const RatVec& v, bool swap, bool f0, bool f1) {
    RatVec w = v;
    if (swap) w = {v[1], v[0], v[4], v[3], v[2]};
    if (f0) {
        w[0] = -w[0];
        w[3] = -w[3];
    }
    if (f1) {
        w[1] = -w[1];
        w[3] = -w[3];
    }
    return w;
}

}  // namespace

TEST_CASE("positivity system shape and sample inequality") {
    HRep h2 = positivity_system(2);
    CHECK(h2.dimension == 5);
    CHECK(h2.halfspaces.size() == 10);
    // the (a,x) = ((+,+),(0,1)) facet: 1 + S0/2 + S1/2 + S01/2 >= 0
    Halfspace want;
    want.normal = {rat(1, 2), rat(1, 2), rat(0), rat(1, 2), rat(0)};
    want.offset = 1;
    bool found = false;
    auto key = want.canonical().key();
    for (const auto& hs : h2.halfspaces)
        if (lex_eq(hs.canonical().key(), key)) found = true;
    CHECK(found);
    CHECK(positivity_system(3).halfspaces.size() == 20);
    CHECK(positivity_system(4).dimension == 14);
    CHECK_THROWS(positivity_system(1));
    CHECK_THROWS(positivity_system(7));
}

TEST_CASE("positivity system admits the nonsignaling extremal box and the origin") {
    HRep h2 = positivity_system(2);
    RatVec box = {rat(0), rat(0), rat(2), rat(2), rat(-2)};
    CHECK(h2.contains(box));
    RatVec origin(5, rat(0));
    for (const auto& hs : h2.halfspaces) CHECK(hs.value_at(origin) == hs.offset);
    CHECK(h2.contains(origin));
}

TEST_CASE("two-body projection: k=2 needs no elimination") {
    HRep direct = positivity_system(2);
    HRep proj = project_two_body(2);
    CHECK(same_halfspace_set(remove_redundant(direct), proj));
}

TEST_CASE("elimination counts for k=3,4") {
    CHECK(sym_coord_count(3) - 5 == 4);
    CHECK(sym_coord_count(4) - 5 == 9);
    CHECK(project_two_body(3).dimension == 5);
}

TEST_CASE("deterministic strategy table") {
    VRep v1 = local_sym_vertices(1);
    REQUIRE(v1.vertices.size() == 4);
    CHECK(lex_eq(v1.vertices[0], pt5({"-1", "-1", "0", "0", "0"})));
    CHECK(lex_eq(v1.vertices[3], pt5({"1", "1", "0", "0", "0"})));
}

TEST_CASE("local population points: spec examples for p=2") {
    auto all = local_population_points(2);
    auto has = [&](const RatVec& p) {
        return std::any_of(all.begin(), all.end(), [&](const RatVec& q) { return lex_eq(p, q); });
    };
    CHECK(has(pt5({"2", "2", "2", "2", "2"})));      // both parties (+,+)
    CHECK(has(pt5({"0", "0", "-2", "-2", "-2"})));   // one (+,+), one (-,-)
}

TEST_CASE("nonlocal vertices reproduce the reference tables (k=2,3,4)") {
    for (int k : {2, 3, 4}) {
        NsCatalog cat = ns_sym_vertices(k);
        auto got = sorted(cat.nonlocal_vertices());
        auto want = sorted(ref_nonlocal(k));
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i) CHECK(lex_eq(got[i], want[i]));
    }
}

TEST_CASE("vertex catalogs are closed under the symmetry group") {
    for (int k : {2, 3}) {
        NsCatalog cat = ns_sym_vertices(k);
        auto all = sorted(cat.vertices);
        for (const auto& v : all)
            for (bool sw : {false, true})
                for (bool f0 : {false, true})
                    for (bool f1 : {false, true}) {
                        RatVec w = apply_sym(v, sw, f0, f1);
                        CHECK(std::binary_search(all.begin(), all.end(), w, RatVecLess{}));
                    }
    }
}

TEST_CASE("local vertices lie inside NS_k^{2,S}") {
    for (int k : {2, 3}) {
        HRep ns = project_two_body(k);
        for (const auto& v : local_sym_vertices(k).vertices) CHECK(ns.contains(v));
    }
}

TEST_CASE("every catalog vertex saturates at least 5 independent facets") {
    NsCatalog cat = ns_sym_vertices(3);
    HRep ns = project_two_body(3);
    for (const auto& v : cat.vertices) {
        std::vector<RatVec> tight;
        for (const auto& hs : ns.halfspaces)
            if (hs.value_at(v) == 0) tight.push_back(hs.normal);
        // rank of tight normals must be 5
        REQUIRE(tight.size() >= 5);
        std::vector<RatVec> red;
        std::vector<size_t> cols;
        size_t rank = 0;
        for (auto r : tight) {
            for (size_t t = 0; t < red.size(); ++t)
                if (r[cols[t]] != 0) {
                    Rational f = r[cols[t]];
                    for (size_t j = 0; j < 5; ++j) r[j] -= f * red[t][j];
                }
            size_t p = 0;
            while (p < 5 && r[p] == 0) ++p;
            if (p == 5) continue;
            Rational d = r[p];
            for (auto& x : r) x /= d;
            red.push_back(r);
            cols.push_back(p);
            ++rank;
        }
        CHECK(rank == 5);
    }
}

TEST_CASE("catalog json round-trip") {
    NsCatalog cat = ns_sym_vertices(2);
    auto j = to_json(cat);
    NsCatalog back = ns_catalog_from_json(j);
    REQUIRE(back.vertices.size() == cat.vertices.size());
    for (size_t i = 0; i < cat.vertices.size(); ++i) {
        CHECK(lex_eq(back.vertices[i], cat.vertices[i]));
        CHECK(back.nonlocal[i] == cat.nonlocal[i]);
    }
}

TEST_CASE("projected full-space box reproduces a k=2 nonlocal vertex") {
    // the extremal bipartite nonsignaling box: <M_x M_y> = (-1)^{xy}, <M_x> = 0
    RatVec s(5, rat(0));
    s[2] = rat(2) * 1;         // S00: two ordered pairs, correlator +1
    s[3] = rat(2) * 1;         // S01
    s[4] = rat(2) * (-1);      // S11
    NsCatalog cat = ns_sym_vertices(2);
    auto nl = cat.nonlocal_vertices();
    CHECK(std::any_of(nl.begin(), nl.end(), [&](const RatVec& v) { return lex_eq(v, s); }));
}
