#include <catch2/catch_amalgamated.hpp>

#include "belldepth/producible.hpp"

using namespace belldepth;

namespace {

const StrategyCatalog& catalog4() {
    static StrategyCatalog c = [] {
        std::vector<NsCatalog> cats;
        for (int k : {2, 3, 4}) cats.push_back(ns_sym_vertices(k));
        return StrategyCatalog::from_ns_catalogs(cats);
    }();
    return c;
}

RatVec pt5(std::initializer_list<const char*> xs) {
    RatVec v;
    for (auto s : xs) v.push_back(rat_parse(s));
    return v;
}

PopulationVector pop(int N, int k, std::initializer_list<std::tuple<int, int, long>> cs) {
    PopulationVector xi;
    xi.N = N;
    xi.k = k;
    for (auto [p, i, c] : cs) xi.counts[{p, i}] = c;
    return xi;
}

// reference facet class tables (columns: bound, alpha, beta, gamma, delta, epsilon)
const std::vector<std::array<const char*, 6>> FACETS_N3_K2 = {
    {"1", "0", "0", "1", "0", "0"},   {"12", "-3", "1", "3", "-3/2", "-2"},
    {"6", "-2", "-2", "0", "1", "0"}, {"3", "0", "0", "0", "-1", "1"},
    {"3", "0", "-2", "0", "0", "1"},  {"3", "0", "0", "-1", "0", "0"},
};
const std::vector<std::array<const char*, 6>> FACETS_N4_K3 = {
    {"2", "1", "0", "1", "0", "0"},     {"42", "12", "3", "6", "2", "-3"},
    {"42", "-12", "9", "6", "-6", "1"}, {"20", "-5", "3", "4", "-3", "0"},
    {"30", "-6", "3", "6", "-4", "-1"}, {"12", "0", "0", "3", "1", "-1"},
    {"12", "3", "3", "1", "2", "1"},    {"6", "-3", "0", "1", "0", "0"},
    {"8", "-3", "-1", "2", "1", "0"},   {"6", "0", "0", "1", "-1", "0"},
    {"8", "0", "2", "1", "1", "1"},     {"12", "-3", "-3", "0", "1", "0"},
    {"6", "0", "0", "-1", "0", "0"},
};

std::set<RatVec, RatVecLess> class_set(const std::vector<TwoBodySymInequality>& qs) {
    std::set<RatVec, RatVecLess> out;
    for (const auto& q : qs) out.insert(canonical_class(q));
    return out;
}

std::set<RatVec, RatVecLess> class_set(const std::vector<std::array<const char*, 6>>& rows) {
    std::set<RatVec, RatVecLess> out;
    for (const auto& r : rows) {
        TwoBodySymInequality q{rat_parse(r[1]), rat_parse(r[2]), rat_parse(r[3]),
                               rat_parse(r[4]), rat_parse(r[5]), rat_parse(r[0])};
        out.insert(canonical_class(q));
    }
    return out;
}

const TwoBodySymInequality EXPR_COLLECTIVE{rat(2), rat(0), rat(1), rat(1), rat(1), rat(0)};

}  // namespace

namespace {
int strategy_index(int p, const RatVec& s) {
    const auto& list = catalog4().at(p);
    for (size_t i = 0; i < list.size(); ++i)
        if (lex_eq(list[i], s)) return (int)i;
    FAIL("strategy not in catalog");
    return -1;
}
}  // namespace

TEST_CASE("population points: single block reproduces its strategy") {
    int i = strategy_index(2, pt5({"0", "0", "2", "2", "-2"}));
    auto xi = pop(2, 2, {{2, i, 1}});
    RatVec p = point_from_population(xi, catalog4());
    CHECK(lex_eq(p, pt5({"0", "0", "2", "2", "-2"})));
}

TEST_CASE("population points: all-aligned singletons") {
    // three parties, all on the (+,+) strategy: S0=S1=3, two-body sums 6
    auto xi = pop(3, 1, {{1, 3, 3}});
    RatVec p = point_from_population(xi, catalog4());
    CHECK(lex_eq(p, pt5({"3", "3", "6", "6", "6"})));
}

TEST_CASE("population points: cross terms factorize") {
    auto xi = pop(2, 1, {{1, 3, 1}, {1, 0, 1}});  // (+,+) and (-,-)
    RatVec p = point_from_population(xi, catalog4());
    CHECK(lex_eq(p, pt5({"0", "0", "-2", "-2", "-2"})));
}

TEST_CASE("population points agree with brute-force party assignment") {
    // N=4 with one singleton and one 3-party block: expand the symmetrized
    // sums over an explicit assignment of parties to blocks
    const auto& c3 = catalog4().at(3);
    const auto& c1 = catalog4().at(1);
    for (size_t i3 = 0; i3 < c3.size(); ++i3) {
        for (size_t i1 = 0; i1 < c1.size(); ++i1) {
            auto xi = pop(4, 3, {{3, (int)i3, 1}, {1, (int)i1, 1}});
            RatVec got = point_from_population(xi, catalog4());
            const RatVec &A = c3[i3], &B = c1[i1];
            RatVec want(5, rat(0));
            want[0] = A[0] + B[0];
            want[1] = A[1] + B[1];
            // ordered cross pairs between the blocks factorize
            want[2] = A[2] + B[2] + A[0] * B[0] + B[0] * A[0];
            want[3] = A[3] + B[3] + A[0] * B[1] + B[0] * A[1];
            want[4] = A[4] + B[4] + A[1] * B[1] + B[1] * A[1];
            CHECK(lex_eq(got, want));
        }
    }
}

TEST_CASE("population weight must partition N") {
    auto xi = pop(5, 2, {{2, 0, 2}});
    CHECK_THROWS(point_from_population(xi, catalog4()));
}

TEST_CASE("population enumeration count matches the composition recursion") {
    for (int N : {3, 5, 7}) {
        for (int k : {1, 2, 3}) {
            std::uint64_t n = 0;
            std::uint64_t seen =
                for_each_population(N, k, catalog4(), [&](const PopulationVector&) { ++n; });
            CHECK(seen == n);
            CHECK(n == population_count(N, k, catalog4()));
        }
    }
}

TEST_CASE("population cap raises") {
    CHECK_THROWS(for_each_population(12, 4, catalog4(), nullptr, 10));
}

TEST_CASE("k = 1 reduces to the local polytope") {
    VRep v = producible_vertices(4, 1, catalog4());
    HRep local_facets = facets_of(v);
    for (const auto& p : local_population_points(4)) CHECK(local_facets.contains(p));
    // a nonlocal extremal box of NS_4^{2,S} must fall outside
    RatVec box = pt5({"0", "0", "12", "-4", "-4"});
    CHECK_FALSE(local_facets.contains(box));
}

TEST_CASE("N=2, k=2 producible set equals NS_2^{2,S}") {
    VRep v = producible_vertices(2, 2, catalog4());
    HRep hull = facets_of(v);
    HRep ns = project_two_body(2);
    CHECK(same_halfspace_set(hull, ns));
}

TEST_CASE("facet classes: N=3 k=2 table") {
    auto got = class_set(producible_facets(3, 2, catalog4()));
    auto want = class_set(FACETS_N3_K2);
    REQUIRE(got.size() == 6);
    CHECK(got == want);
}

TEST_CASE("facet classes: N=4 k=3 table") {
    auto got = class_set(producible_facets(4, 3, catalog4()));
    auto want = class_set(FACETS_N4_K3);
    REQUIRE(got.size() == 13);
    CHECK(got == want);
}

TEST_CASE("classical bound: collective expression at k=2, N=6") {
    CHECK(classical_bound(EXPR_COLLECTIVE, 6, 2, catalog4()) == rat(12));
}

TEST_CASE("classical bound: k=1 equals the local bound") {
    // local bound of the collective expression is 2N
    CHECK(classical_bound(EXPR_COLLECTIVE, 5, 1, catalog4()) == rat(10));
}

TEST_CASE("classical bound: k=4 N=10 stays below the closed form") {
    Rational b = classical_bound(EXPR_COLLECTIVE, 10, 4, catalog4());
    Rational closed = (rat(2) + rat(2, 49)) * 10 + rat(1, 2);
    CHECK(b <= closed);
    CHECK(b == rat(144, 7));  // strict slack at this N
}

TEST_CASE("bound monotone in k") {
    for (int k = 1; k < 4; ++k)
        CHECK(classical_bound(EXPR_COLLECTIVE, 5, k, catalog4()) <=
              classical_bound(EXPR_COLLECTIVE, 5, k + 1, catalog4()));
}

TEST_CASE("nesting: P_{N,k} inside P_{N,k+1}") {
    for (int k : {1, 2}) {
        VRep small = producible_vertices(4, k, catalog4());
        HRep bigger = facets_of(producible_vertices(4, k + 1, catalog4()));
        for (const auto& v : small.vertices) CHECK(bigger.contains(v));
    }
}

TEST_CASE("vertex and facet sets closed under the relabeling group") {
    VRep v = producible_vertices(3, 2, catalog4());
    std::set<RatVec, RatVecLess> vs(v.vertices.begin(), v.vertices.end());
    for (const auto& p : v.vertices)
        for (bool sw : {false, true})
            for (bool f0 : {false, true})
                for (bool f1 : {false, true}) CHECK(vs.count(sym_image_point(p, sw, f0, f1)));
    auto facets = producible_facets(3, 2, catalog4());
    for (const auto& q : facets)
        for (bool sw : {false, true})
            for (bool f0 : {false, true})
                for (bool f1 : {false, true})
                    CHECK(class_set(facets).count(canonical_class(sym_image_ineq(q, sw, f0, f1))));
}

TEST_CASE("every facet saturated by at least 5 affinely independent vertices") {
    VRep pts = producible_vertices(3, 2, catalog4());
    HRep facets = facets_of(pts);
    for (const auto& hs : facets.halfspaces) {
        std::vector<RatVec> tight;
        for (const auto& p : pts.vertices)
            if (hs.value_at(p) == 0) tight.push_back(p);
        REQUIRE(tight.size() >= 5);
        // affine rank: dimension of differences + 1
        auto ah = detail::affine_hull(tight, 5);
        CHECK(ah.span.size() >= 4);
    }
}

TEST_CASE("facet catalog json round-trip") {
    auto fs = producible_facets(3, 2, catalog4());
    auto j = facets_to_json(3, 2, fs);
    auto back = facets_from_json(j);
    CHECK(class_set(back) == class_set(fs));
    CHECK(j.at("N") == 3);
}
