#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scallop/instances.hpp"
#include "scallop/scalloped.hpp"
#include "scallop/turan_geometry.hpp"

using namespace scallop;

namespace {

TupleSet tuples(int m, int s, std::initializer_list<std::vector<int>> ts) {
    TupleSet out;
    out.m = m;
    out.s = s;
    for (const auto& t : ts) out.members.insert(t);
    return out;
}

Vec v1(long x) { return {rat(x)}; }
Vec v2(long x, long y) { return {rat(x), rat(y)}; }

VPolytope seg1(long a, long b) { return VPolytope({v1(a), v1(b)}); }

VPolytope boxp(long x0, long x1, long y0, long y1) {
    return VPolytope({v2(x0, y0), v2(x1, y0), v2(x0, y1), v2(x1, y1)});
}

// F(k,m,s) <= s^(2d+2-2^-r) with k = d+1, m = r-1, checked as the exact
// integer inequality F^(2^r) <= s^((2d+2) 2^r - 1)
bool claim_bound_holds(int k, int m, long f, int s) {
    int d = k - 1, r = m + 1;
    Int lhs, rhs;
    unsigned long pow_r = 1ul << r;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(f), pow_r);
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(s),
                  static_cast<unsigned long>(2 * d + 2) * pow_r - 1);
    return lhs <= rhs;
}

}  // namespace

TEST_CASE("hypercube detection") {
    auto full = tuples(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto w = contains_hypercube(full, 2);
    REQUIRE(w.has_value());
    CHECK(w->size() == 2);

    auto corner_missing = tuples(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    CHECK_FALSE(contains_hypercube(corner_missing, 2).has_value());

    TupleSet cube;
    cube.m = 3;
    cube.s = 2;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                if (!(x == 1 && y == 1 && z == 1)) cube.members.insert({x, y, z});
    CHECK_FALSE(contains_hypercube(cube, 3).has_value());
    cube.members.insert({1, 1, 1});
    CHECK(contains_hypercube(cube, 3).has_value());

    CHECK_THROWS_AS(contains_hypercube(full, 3), invalid_input);
}

TEST_CASE("F(1,m,s) = 1") {
    for (int m : {2, 3})
        for (int s : {2, 3, 4}) {
            auto res = max_hypercube_free(1, m, s, 100);
            CHECK(res.value == 1);
            CHECK(res.witness.members.size() == 1);
        }
}

TEST_CASE("F(2,2,s) matches the rectangle-free maxima") {
    auto f222 = max_hypercube_free(2, 2, 2);
    CHECK(f222.value == 3);
    auto f223 = max_hypercube_free(2, 2, 3);
    CHECK(f223.value == 6);
    auto f224 = max_hypercube_free(2, 2, 4);
    CHECK(f224.value == 9);
}

TEST_CASE("F is monotone in s and m") {
    long f222 = max_hypercube_free(2, 2, 2).value;
    long f223 = max_hypercube_free(2, 2, 3).value;
    long f232 = max_hypercube_free(2, 3, 2, 30).value;
    CHECK(f222 <= f223);
    CHECK(f232 >= f222);
}

TEST_CASE("computed values satisfy the fractional exponent bound") {
    CHECK(claim_bound_holds(2, 2, max_hypercube_free(2, 2, 2).value, 2));
    CHECK(claim_bound_holds(2, 2, max_hypercube_free(2, 2, 3).value, 3));
    CHECK(claim_bound_holds(2, 2, max_hypercube_free(2, 2, 4).value, 4));
    CHECK(claim_bound_holds(2, 3, max_hypercube_free(2, 3, 2, 30).value, 2));
    CHECK(claim_bound_holds(2, 3, max_hypercube_free(2, 3, 3, 30).value, 3));
}

TEST_CASE("double-counting recursion bound on exact values") {
    std::map<std::tuple<int, int, int>, long> table;
    for (int s : {2, 3}) {
        table[{1, 2, s}] = max_hypercube_free(1, 2, s, 100).value;
        table[{2, 2, s}] = max_hypercube_free(2, 2, s).value;
        table[{2, 3, s}] = max_hypercube_free(2, 3, s, 30).value;
    }
    CHECK(verify_recursion_bound(2, 3, 2, table).pass);
    CHECK(verify_recursion_bound(2, 3, 3, table).pass);

    // fabricated oversized value must be flagged
    auto bad = table;
    bad[{2, 3, 2}] = 9;
    CHECK_FALSE(verify_recursion_bound(2, 3, 2, bad).pass);

    auto missing = table;
    missing.erase({2, 2, 3});
    CHECK_THROWS_AS(verify_recursion_bound(2, 3, 3, missing), invalid_input);
}

TEST_CASE("box Turan values at desk scale") {
    CHECK(box_turan(3, 2).value == 3);
    CHECK(box_turan(4, 2).value == 4);
    CHECK(box_turan(4, 3).value == 4);
    CHECK_THROWS_AS(box_turan(12, 2), cap_exceeded);
}

TEST_CASE("intersection hypergraph of interval families") {
    std::vector<std::vector<VPolytope>> families{
        {seg1(0, 2), seg1(4, 6)},
        {VPolytope({{rat(1)}, {rat(5, 1)}}), seg1(8, 9)}};
    auto g = intersection_hypergraph(families);
    REQUIRE(g.parts.size() == 2);
    // B1 = [1,5] meets both A1 = [0,2] and A2 = [4,6]; B2 = [8,9] meets nothing
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0] == std::vector<int>{0, 2});
    CHECK(g.edges[1] == std::vector<int>{1, 2});

    std::vector<std::vector<VPolytope>> apart{{seg1(0, 1), seg1(2, 3)}, {seg1(10, 11), seg1(13, 14)}};
    CHECK(intersection_hypergraph(apart).edges.empty());

    std::vector<std::vector<VPolytope>> overlapping{{seg1(0, 2), seg1(1, 3)}};
    CHECK_THROWS_AS(intersection_hypergraph(overlapping), invalid_input);
}

TEST_CASE("triple point makes a 3-partite edge") {
    std::vector<std::vector<VPolytope>> families{
        {boxp(0, 2, 0, 2), boxp(10, 11, 10, 11)},
        {boxp(1, 3, 0, 2), boxp(10, 11, -11, -10)},
        {boxp(0, 2, 1, 3), boxp(-11, -10, 10, 11)}};
    auto g = intersection_hypergraph(families);
    bool found = false;
    for (const auto& e : g.edges)
        if (e == std::vector<int>{0, 2, 4}) found = true;
    CHECK(found);
}

TEST_CASE("box freeness check") {
    Hypergraph complete22;
    complete22.num_vertices = 4;
    complete22.parts = {{0, 1}, {2, 3}};
    complete22.edges = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    auto bad = check_box_freeness(complete22, 2);
    CHECK_FALSE(bad.free);
    CHECK(bad.violating_pairs.size() == 2);

    Hypergraph empty;
    empty.num_vertices = 4;
    empty.parts = {{0, 1}, {2, 3}};
    CHECK(check_box_freeness(empty, 2).free);
}

TEST_CASE("geometric intersection hypergraphs are box-free") {
    // the freeness claim is at block size dim+1, so 2-family instances live
    // on the line and 3-family instances in the plane
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto families = random_family_collection(2, 3, seed, 1);
        auto g = intersection_hypergraph(families);
        CHECK(check_box_freeness(g, 2).free);
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto families = random_family_collection(3, 2, 100 + seed, 2);
        auto g = intersection_hypergraph(families);
        CHECK(check_box_freeness(g, 3).free);
    }
}

TEST_CASE("empty tuple: two pairs of intervals") {
    PairFamily pairs{{seg1(0, 1), seg1(2, 3)}, {seg1(0, 3), seg1(5, 6)}};
    auto res = find_empty_tuple(pairs);
    CHECK(res.empty_count >= 1);
    // re-verify both selections, belt and braces
    for (const auto& sel : {res.brute, res.inductive}) {
        std::vector<VPolytope> tuple;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            tuple.push_back(pairs[p][static_cast<std::size_t>(sel[p])]);
        CHECK_FALSE(multi_hulls_intersect(tuple).intersects);
    }
}

TEST_CASE("empty tuple: adversarial planar instance with a unique empty triple") {
    VPolytope xm({v2(-1, -500), v2(-1, 500), v2(-1000, 0)});
    VPolytope xp({v2(1, -500), v2(1, 500), v2(1000, 0)});
    VPolytope ym({v2(-500, -1), v2(500, -1), v2(0, -1000)});
    VPolytope yp({v2(-500, 1), v2(500, 1), v2(0, 1000)});
    VPolytope sp({v2(-479, 500), v2(521, -500), v2(510, 510)});   // x + y >= 21
    VPolytope sm({v2(-481, 500), v2(519, -500), v2(-510, -510)}); // x + y <= 19
    PairFamily pairs{{xm, xp}, {ym, yp}, {sp, sm}};
    auto res = find_empty_tuple(pairs);
    CHECK(res.empty_count == 1);
    CHECK(res.brute == std::vector<int>{0, 0, 0});
    CHECK(res.inductive == res.brute);
}

TEST_CASE("empty tuple: inductive route agrees with brute force on random instances") {
    for (std::size_t d : {1u, 2u, 3u}) {
        for (std::uint64_t seed = 1; seed <= 60; ++seed) {
            auto pairs = random_disjoint_pairs(d, 777 * d + seed);
            auto res = find_empty_tuple(pairs);  // throws on any disagreement
            CHECK(res.empty_count >= 1);
        }
    }
}

TEST_CASE("pair validation errors") {
    PairFamily not_disjoint{{seg1(0, 2), seg1(1, 3)}, {seg1(0, 1), seg1(2, 3)}};
    CHECK_THROWS_AS(find_empty_tuple(not_disjoint), invalid_input);
}

TEST_CASE("r-shattering on explicit hypergraphs") {
    // powerset edges: everything is 2-shattered
    Hypergraph power;
    power.num_vertices = 3;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> e;
        for (int v = 0; v < 3; ++v)
            if (mask & (1 << v)) e.push_back(v);
        power.edges.push_back(e);
    }
    CHECK(r_shattered(power, {0, 1, 2}, 2));
    CHECK(r_shattered(power, {0, 2}, 2));

    // single edge covering everything: never shattered
    Hypergraph single;
    single.num_vertices = 3;
    single.edges = {{0, 1, 2}};
    CHECK_FALSE(r_shattered(single, {0}, 2));
    CHECK_FALSE(r_shattered(single, {0, 1, 2}, 2));
}

TEST_CASE("the s=2 grid is 2-shattered by row/column container ranges") {
    auto g = generate_scalloped(choose_params(2));
    std::vector<Vec> pts{g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1)};
    Hypergraph h;
    h.num_vertices = 4;
    std::set<std::vector<int>> edge_set;
    auto add_ranges = [&](bool rows) {
        for (int mask = 0; mask < 16; ++mask) {
            // hulls of the selection within each row (or column)
            std::vector<int> trace;
            for (int group = 0; group < 2; ++group) {
                std::vector<Vec> gens;
                for (int v = 0; v < 4; ++v) {
                    int gid = rows ? v / 2 : v % 2;
                    if (gid == group && (mask & (1 << v))) gens.push_back(pts[static_cast<std::size_t>(v)]);
                }
                if (gens.empty()) continue;
                VPolytope hull(gens);
                for (int v = 0; v < 4; ++v)
                    if (hull_membership(pts[static_cast<std::size_t>(v)], hull)) trace.push_back(v);
            }
            std::sort(trace.begin(), trace.end());
            trace.erase(std::unique(trace.begin(), trace.end()), trace.end());
            edge_set.insert(trace);
        }
    };
    add_ranges(true);
    add_ranges(false);
    for (const auto& e : edge_set) h.edges.push_back(e);
    CHECK(r_shattered(h, {0, 1, 2, 3}, 2));
}

TEST_CASE("vc dimension basics") {
    Hypergraph singles;
    singles.num_vertices = 3;
    singles.edges = {{0}, {1}, {2}};
    CHECK(vc_dimension(singles).dimension == 1);

    Hypergraph power4;
    power4.num_vertices = 4;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> e;
        for (int v = 0; v < 4; ++v)
            if (mask & (1 << v)) e.push_back(v);
        power4.edges.push_back(e);
    }
    CHECK(vc_dimension(power4).dimension == 4);
}

TEST_CASE("halfplane ranges on five generic points have VC dimension 3") {
    std::vector<Vec> pts{v2(0, 0), v2(4, 0), v2(1, 3), v2(-3, 2), v2(2, -2)};
    const int n = 5;

    // route 1: a subset is halfplane-realizable iff its hull misses the
    // complement's hull
    std::set<std::uint32_t> realizable;
    for (std::uint32_t mask = 0; mask < 32; ++mask) {
        std::vector<Vec> in, outp;
        for (int v = 0; v < n; ++v)
            ((mask & (1u << v)) ? in : outp).push_back(pts[static_cast<std::size_t>(v)]);
        if (in.empty() || outp.empty()) {
            realizable.insert(mask);
            continue;
        }
        std::vector<VPolytope> pair{VPolytope(in), VPolytope(outp)};
        if (!multi_hulls_intersect(pair).intersects) realizable.insert(mask);
    }

    // route 2: orientation-test enumeration over lines through point pairs
    std::set<std::uint32_t> oriented{0, 31};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            std::uint32_t base = 0;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                Rat o = cross2(vsub(pts[static_cast<std::size_t>(j)], pts[static_cast<std::size_t>(i)]),
                               vsub(pts[static_cast<std::size_t>(k)], pts[static_cast<std::size_t>(i)]));
                if (o > 0) base |= 1u << k;
            }
            for (std::uint32_t add = 0; add < 4; ++add) {
                std::uint32_t m = base;
                if (add & 1) m |= 1u << i;
                if (add & 2) m |= 1u << j;
                oriented.insert(m);
            }
        }
    CHECK(realizable == oriented);

    Hypergraph h;
    h.num_vertices = n;
    for (auto mask : realizable) {
        std::vector<int> e;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) e.push_back(v);
        h.edges.push_back(e);
    }
    auto vc = vc_dimension(h);
    CHECK(vc.dimension == 3);
}

TEST_CASE("thickening two disjoint segments gives two halfplanes") {
    std::vector<std::vector<VPolytope>> families{{VPolytope({v2(0, 0), v2(1, 0)})},
                                                 {VPolytope({v2(3, 0), v2(4, 1)})}};
    auto res = polyhedral_thickening(families);
    CHECK(res.audit.all_ok());
    CHECK(res.audit.total_facets == 2);
    CHECK(res.audit.total_facets <= res.audit.budget);
}

TEST_CASE("thickening interval families on the line") {
    std::vector<std::vector<VPolytope>> families{{seg1(0, 1), seg1(4, 5)},
                                                 {seg1(2, 3), seg1(7, 8)}};
    auto res = polyhedral_thickening(families);
    CHECK(res.audit.all_ok());
    CHECK(res.audit.total_facets <= res.audit.budget);
}

TEST_CASE("thickening planar boxes with empty triple intersections") {
    // pairwise overlaps exist across families but no triple point
    std::vector<std::vector<VPolytope>> families{
        {boxp(0, 4, 0, 1), boxp(0, 4, 10, 11)},
        {boxp(0, 1, 0, 4), boxp(10, 11, 0, 4)},
        {boxp(2, 6, 2, 6), boxp(-6, -2, -6, -2)}};
    auto res = polyhedral_thickening(families);
    CHECK(res.audit.all_ok());
    CHECK(res.audit.total_facets <= res.audit.budget);
}
