#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scallop/containers.hpp"

namespace scallop {

struct CertificateReport {
    std::string claim_id;
    bool pass = false;
    long long checked_count = 0;
    std::optional<Json> counterexample;
    Json params_echo = Json::object();
    std::string input_hash;
    std::vector<std::pair<std::string, bool>> sub_verdicts;

    Json to_json() const {
        Json sub = Json::array();
        for (const auto& [name, ok] : sub_verdicts)
            sub.push_back(Json{{"check", name}, {"status", ok ? "pass" : "fail"}});
        return Json{{"schema", "v1"},
                    {"claim_id", claim_id},
                    {"status", pass ? "pass" : "fail"},
                    {"checked_count", checked_count},
                    {"counterexample", counterexample ? *counterexample : Json()},
                    {"params_echo", params_echo},
                    {"input_hash", input_hash},
                    {"sub_verdicts", sub}};
    }
};

namespace detail {

inline bool hulls_disjoint(const VPolytope& a, const VPolytope& b) {
    std::vector<VPolytope> pair{a, b};
    return !multi_hulls_intersect(pair).intersects;
}

inline Json grid_params_echo(const PointGrid& g) {
    return Json{{"s", g.s}, {"cols", g.cols}, {"precision_bits", g.params.precision_bits}};
}

}  // namespace detail

// Sign condition behind the tangent-halfspace argument: for points vـk on
// arc k and v_l on arc l != k, (v_k - y_k) . (v_k - v_l) must be strictly
// negative. Evaluated exactly for every cross-arc pair of grid points.
inline CertificateReport check_claim_negative(const PointGrid& g) {
    CertificateReport rep;
    rep.claim_id = "claim-negative";
    rep.params_echo = detail::grid_params_echo(g);
    rep.input_hash = g.hash();
    rep.pass = true;
    for (long k = 0; k < g.s && rep.pass; ++k)
        for (long l = 0; l < g.s && rep.pass; ++l) {
            if (k == l) continue;
            for (long a = 0; a < g.cols && rep.pass; ++a)
                for (long b = 0; b < g.cols; ++b) {
                    Vec radial = vsub(g.at(k, a), g.centers[static_cast<std::size_t>(k)]);
                    Vec chord = vsub(g.at(k, a), g.at(l, b));
                    Rat value = dot(radial, chord);
                    ++rep.checked_count;
                    if (!(value < 0)) {
                        rep.pass = false;
                        rep.counterexample = Json{{"k", k + 1},
                                                  {"l", l + 1},
                                                  {"a", a + 1},
                                                  {"b", b + 1},
                                                  {"value", rat_to_string(value)}};
                        break;
                    }
                }
        }
    return rep;
}

// The maximal-case criterion: for every row i and column group j,
//   Conv(row_i) and Conv(group_j minus the shared points)  are disjoint, and
//   Conv(row_i minus the shared points) and Conv(group_j)  are disjoint.
// Points belong to exactly one side of any bipartition, so by hull
// monotonicity these 2 s^2 exact disjointness LPs dominate the container
// pairs of every bipartition.
inline CertificateReport certify_planar_witness(const PointGrid& g) {
    CertificateReport rep;
    rep.claim_id = "maximal-case";
    rep.params_echo = detail::grid_params_echo(g);
    rep.input_hash = g.hash();
    if (g.cols != g.s && g.cols != 2 * g.s)
        throw invalid_input("certify_planar_witness: cols must be s or 2s");
    for (long i = 0; i < g.s; ++i)
        for (long j = 0; j < g.cols; ++j)
            for (long i2 = 0; i2 < g.s; ++i2)
                for (long j2 = 0; j2 < g.cols; ++j2)
                    if ((i != i2 || j != j2) && g.at(i, j) == g.at(i2, j2))
                        throw invalid_input("certify_planar_witness: duplicate grid points");

    rep.pass = true;
    for (long i = 0; i < g.s && rep.pass; ++i) {
        std::vector<Vec> full_row(g.points[static_cast<std::size_t>(i)]);
        for (long j = 0; j < column_group_count(g) && rep.pass; ++j) {
            auto members = column_group_members(g, j);
            std::vector<Vec> full_group;
            std::vector<Vec> group_minus;
            for (long k = 0; k < g.s; ++k)
                for (long c : members) {
                    full_group.push_back(g.at(k, c));
                    if (k != i) group_minus.push_back(g.at(k, c));
                }
            std::vector<Vec> row_minus;
            for (long c = 0; c < g.cols; ++c) {
                bool excluded = false;
                for (long m : members) excluded = excluded || (c == m);
                if (!excluded) row_minus.push_back(g.at(i, c));
            }
            struct Case {
                const std::vector<Vec>* left;
                const std::vector<Vec>* right;
                int id;
            };
            for (const Case& cs : {Case{&full_row, &group_minus, 1}, Case{&row_minus, &full_group, 2}}) {
                ++rep.checked_count;
                if (cs.left->empty() || cs.right->empty()) continue;
                std::vector<VPolytope> pair{VPolytope(*cs.left), VPolytope(*cs.right)};
                auto res = multi_hulls_intersect(pair);
                if (res.intersects) {
                    rep.pass = false;
                    rep.counterexample = Json{{"row", i + 1},
                                              {"col_group", j + 1},
                                              {"case", cs.id},
                                              {"common_point", to_json(*res.common)}};
                    break;
                }
            }
        }
    }
    return rep;
}

// Brute-force oracle over every bipartition of the grid points. Hull
// disjointness per (row container, column container) pair is memoized on
// the exact generator masks; every pair is still decided by the LP.
inline CertificateReport exhaustive_bipartitions(const PointGrid& g, long cap = 20) {
    CertificateReport rep;
    rep.claim_id = "exhaustive-bipartition";
    rep.params_echo = detail::grid_params_echo(g);
    rep.input_hash = g.hash();
    const long n = g.s * g.cols;
    if (n > cap)
        throw cap_exceeded(
            "exhaustive_bipartitions: 2^" + std::to_string(n) +
            " partitions exceed the cap; use certify_planar_witness for large grids");

    const long groups = column_group_count(g);
    std::map<std::uint64_t, bool> memo;
    auto pair_disjoint = [&](long i, std::uint32_t row_mask, long j, std::uint32_t col_mask,
                             std::optional<Vec>& common) {
        std::uint64_t key = ((static_cast<std::uint64_t>(i * groups + j)) << 40) |
                            (static_cast<std::uint64_t>(row_mask) << 20) | col_mask;
        auto it = memo.find(key);
        if (it != memo.end() && it->second) return true;  // cached disjoint
        std::vector<Vec> left;
        for (long c = 0; c < g.cols; ++c)
            if (row_mask & (1u << c)) left.push_back(g.at(i, c));
        std::vector<Vec> right;
        auto members = column_group_members(g, j);
        for (long k = 0; k < g.s; ++k)
            for (std::size_t mi = 0; mi < members.size(); ++mi)
                if (col_mask & (1u << (static_cast<std::size_t>(k) * members.size() + mi)))
                    right.push_back(g.at(k, members[mi]));
        std::vector<VPolytope> pair{VPolytope(left), VPolytope(right)};
        auto res = multi_hulls_intersect(pair);
        memo[key] = !res.intersects;
        if (res.intersects) common = res.common;
        return !res.intersects;
    };

    rep.pass = true;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t assign = 0; assign < total && rep.pass; ++assign) {
        ++rep.checked_count;
        // bit (i*cols + j) set: point in part 1, else part 2
        for (long i = 0; i < g.s && rep.pass; ++i) {
            std::uint32_t row_mask = 0;
            for (long c = 0; c < g.cols; ++c)
                if (assign & (1ull << (i * g.cols + c))) row_mask |= 1u << c;
            if (!row_mask) continue;
            for (long j = 0; j < groups; ++j) {
                auto members = column_group_members(g, j);
                std::uint32_t col_mask = 0;
                for (long k = 0; k < g.s; ++k)
                    for (std::size_t mi = 0; mi < members.size(); ++mi)
                        if (!(assign & (1ull << (k * g.cols + members[mi]))))
                            col_mask |= 1u << (static_cast<std::size_t>(k) * members.size() + mi);
                if (!col_mask) continue;
                std::optional<Vec> common;
                if (!pair_disjoint(i, row_mask, j, col_mask, common)) {
                    rep.pass = false;
                    std::string bits(static_cast<std::size_t>(n), '2');
                    for (long t = 0; t < n; ++t)
                        if (assign & (1ull << t)) bits[static_cast<std::size_t>(t)] = '1';
                    rep.counterexample = Json{{"assignment", bits},
                                              {"row", i + 1},
                                              {"col_group", j + 1},
                                              {"common_point", common ? to_json(*common) : Json()}};
                    break;
                }
            }
        }
    }
    return rep;
}

// Structural certificate for the torus lift: (a) the torus factors are in
// convex position and every occurring product combination is an extreme
// point of the product set, (b) the planar base grid passes the
// maximal-case certificate. A common point of layer hulls would project to
// a planar row/column hull intersection, which (b) rules out.
inline CertificateReport certify_torus_witness(const TorusWitness& w) {
    CertificateReport rep;
    rep.claim_id = "torus-structural";
    rep.params_echo = Json{{"s", w.s}, {"r", w.r}, {"dim", w.dim}};
    rep.input_hash = w.hash();

    bool factors_ok = convex_position(w.torus_vertices).in_convex_position;
    long long combos_checked = 0;
    if (w.r > 2 && factors_ok) {
        // enumerate the s^(r-2) product combinations
        long m = 1;
        for (long f = 2; f < w.r; ++f) m *= w.s;
        std::vector<Vec> product_points;
        product_points.reserve(static_cast<std::size_t>(m));
        for (long rank = 0; rank < m; ++rank) {
            long rr = rank;
            std::vector<long> idx(static_cast<std::size_t>(w.r - 2));
            for (long f = w.r - 3; f >= 0; --f) {
                idx[static_cast<std::size_t>(f)] = rr % w.s;
                rr /= w.s;
            }
            Vec p;
            for (long f = 0; f < w.r - 2; ++f) {
                const Vec& u = w.torus_vertices[static_cast<std::size_t>(idx[static_cast<std::size_t>(f)])];
                p.push_back(u[0]);
                p.push_back(u[1]);
            }
            product_points.push_back(std::move(p));
        }
        auto cp = convex_position(product_points);
        combos_checked = m;
        factors_ok = cp.in_convex_position;
        if (!factors_ok)
            rep.counterexample = Json{{"non_extreme_product_index", static_cast<long>(*cp.violator) + 1}};
    }
    rep.sub_verdicts.push_back({"torus-factors-extreme", factors_ok});

    CertificateReport base = certify_planar_witness(w.base);
    rep.sub_verdicts.push_back({"planar-base-maximal-case", base.pass});
    if (!base.pass && !rep.counterexample) rep.counterexample = base.counterexample;

    rep.checked_count = combos_checked + base.checked_count;
    rep.pass = factors_ok && base.pass;
    return rep;
}

// Brute-force oracle for the torus witness: every r-partition of the s^r
// points, every layer tuple (k_1, ..., k_r); the intersection of the
// present layer hulls must be empty. Empty layers make a tuple vacuously
// empty. Layer-hull intersections are memoized on exact generator masks.
inline CertificateReport exhaustive_rpartitions(const TorusWitness& w, long long cap = 10000000) {
    CertificateReport rep;
    rep.claim_id = "exhaustive-rpartition";
    rep.params_echo = Json{{"s", w.s}, {"r", w.r}, {"dim", w.dim}};
    rep.input_hash = w.hash();

    const long n = w.tuple_count();
    double log_parts = static_cast<double>(n) * std::log2(static_cast<double>(w.r));
    if (log_parts > 60 || std::pow(static_cast<double>(w.r), static_cast<double>(n)) > static_cast<double>(cap))
        throw cap_exceeded("exhaustive_rpartitions: r^(s^r) exceeds the cap; use certify_torus_witness");

    // layer_members[j][k] = ranks of tuples with i_j = k
    std::vector<std::vector<std::vector<long>>> layer_members(
        static_cast<std::size_t>(w.r),
        std::vector<std::vector<long>>(static_cast<std::size_t>(w.s)));
    for (long rank = 0; rank < n; ++rank) {
        auto tuple = w.tuple_of(rank);
        for (long j = 0; j < w.r; ++j)
            layer_members[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                              tuple[static_cast<std::size_t>(j)])]
                .push_back(rank);
    }

    std::map<std::vector<std::uint32_t>, bool> memo;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    rep.pass = true;
    bool done = false;
    while (!done && rep.pass) {
        long cross = 1;
        for (long i = 0; i < w.r; ++i) cross *= w.s;
        for (long code = 0; code < cross && rep.pass; ++code) {
            ++rep.checked_count;
            long cc = code;
            std::vector<long> ks(static_cast<std::size_t>(w.r));
            for (long j = w.r - 1; j >= 0; --j) {
                ks[static_cast<std::size_t>(j)] = cc % w.s;
                cc /= w.s;
            }
            std::vector<std::uint32_t> key;
            std::vector<VPolytope> hulls;
            bool vacuous = false;
            for (long j = 0; j < w.r && !vacuous; ++j) {
                const auto& members =
                    layer_members[static_cast<std::size_t>(j)][static_cast<std::size_t>(ks[static_cast<std::size_t>(j)])];
                std::uint32_t mask = 0;
                std::vector<Vec> gens;
                for (std::size_t mi = 0; mi < members.size(); ++mi)
                    if (assign[static_cast<std::size_t>(members[mi])] == j) {
                        mask |= 1u << mi;
                        gens.push_back(w.points[static_cast<std::size_t>(members[mi])]);
                    }
                if (!mask) {
                    vacuous = true;
                    break;
                }
                key.push_back(static_cast<std::uint32_t>(j));
                key.push_back(static_cast<std::uint32_t>(ks[static_cast<std::size_t>(j)]));
                key.push_back(mask);
                hulls.push_back(VPolytope(std::move(gens)));
            }
            if (vacuous) continue;
            auto it = memo.find(key);
            bool empty_intersection;
            std::optional<Vec> common;
            if (it != memo.end()) {
                empty_intersection = it->second;
            } else {
                auto res = multi_hulls_intersect(hulls);
                empty_intersection = !res.intersects;
                common = res.common;
                memo[key] = empty_intersection;
            }
            if (!empty_intersection) {
                rep.pass = false;
                std::string digits;
                for (int a : assign) digits += static_cast<char>('1' + a);
                Json tuple_j = Json::array();
                for (long kv : ks) tuple_j.push_back(kv + 1);
                rep.counterexample = Json{{"assignment", digits},
                                          {"layer_tuple", tuple_j},
                                          {"common_point", common ? to_json(*common) : Json()}};
            }
        }
        // next assignment, lexicographic
        long pos = n - 1;
        while (pos >= 0) {
            if (++assign[static_cast<std::size_t>(pos)] < w.r) break;
            assign[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) done = true;
    }
    return rep;
}

}  // namespace scallop
