#pragma once

#include <array>

#include "scallop/geometry.hpp"
#include "scallop/turan.hpp"

namespace scallop {

// (r-1)-partite intersection hypergraph of convex-set families: one vertex
// per set, an edge per cross tuple with a common point. Sets within each
// family must be pairwise disjoint (the disjoint-union hypothesis).
inline Hypergraph intersection_hypergraph(const std::vector<std::vector<VPolytope>>& families) {
    if (families.empty()) throw invalid_input("intersection_hypergraph: no families");
    for (std::size_t f = 0; f < families.size(); ++f)
        for (std::size_t a = 0; a < families[f].size(); ++a)
            for (std::size_t b = a + 1; b < families[f].size(); ++b) {
                std::vector<VPolytope> pair{families[f][a], families[f][b]};
                if (multi_hulls_intersect(pair).intersects)
                    throw invalid_input("intersection_hypergraph: family " + std::to_string(f + 1) +
                                        " sets " + std::to_string(a + 1) + " and " +
                                        std::to_string(b + 1) + " overlap");
            }
    Hypergraph g;
    std::vector<int> offset;
    for (const auto& fam : families) {
        offset.push_back(g.num_vertices);
        std::vector<int> part;
        for (std::size_t a = 0; a < fam.size(); ++a) part.push_back(g.num_vertices++);
        g.parts.push_back(std::move(part));
    }
    std::vector<std::size_t> idx(families.size(), 0);
    for (;;) {
        std::vector<VPolytope> tuple;
        for (std::size_t f = 0; f < families.size(); ++f) tuple.push_back(families[f][idx[f]]);
        bool meets = tuple.size() == 1 ? true : multi_hulls_intersect(tuple).intersects;
        if (meets) {
            std::vector<int> edge;
            for (std::size_t f = 0; f < families.size(); ++f)
                edge.push_back(offset[f] + static_cast<int>(idx[f]));
            g.edges.push_back(std::move(edge));
        }
        std::size_t pos = families.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < families[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) return g;
        }
    }
}

struct BoxFreenessResult {
    bool free = true;
    std::vector<int> violating_parts;               // the k-subset of part indices
    std::vector<std::pair<int, int>> violating_pairs;  // one vertex pair per part
};

// Every k-subset of parts must project to a hypergraph avoiding the
// complete k-partite structure with all parts of size 2.
inline BoxFreenessResult check_box_freeness(const Hypergraph& g, int block_size) {
    if (!g.partite()) throw invalid_input("check_box_freeness: hypergraph must be partite");
    const int p = static_cast<int>(g.parts.size());
    if (block_size < 1 || block_size > p)
        throw invalid_input("check_box_freeness: block size out of range");

    // part index of each vertex
    std::vector<int> part_of(static_cast<std::size_t>(g.num_vertices), -1);
    for (int i = 0; i < p; ++i)
        for (int v : g.parts[static_cast<std::size_t>(i)]) part_of[static_cast<std::size_t>(v)] = i;

    std::vector<int> subset(static_cast<std::size_t>(block_size));
    for (int i = 0; i < block_size; ++i) subset[static_cast<std::size_t>(i)] = i;
    BoxFreenessResult out;
    for (;;) {
        // projection of edges onto the chosen parts
        std::set<std::vector<int>> cells;
        for (const auto& e : g.edges) {
            std::vector<int> cell;
            for (int pi : subset)
                for (int v : e)
                    if (part_of[static_cast<std::size_t>(v)] == pi) cell.push_back(v);
            if (static_cast<int>(cell.size()) == block_size) cells.insert(std::move(cell));
        }
        // search for a complete 2x...x2 block: two vertices per chosen part
        std::vector<std::pair<int, int>> pairs;
        std::function<bool(int)> found = [&](int level) -> bool {
            if (level == block_size) return detail::corners_present(cells, pairs);
            const auto& verts = g.parts[static_cast<std::size_t>(subset[static_cast<std::size_t>(level)])];
            for (std::size_t a = 0; a < verts.size(); ++a)
                for (std::size_t b = a + 1; b < verts.size(); ++b) {
                    pairs.push_back({verts[a], verts[b]});
                    if (found(level + 1)) return true;
                    pairs.pop_back();
                }
            return false;
        };
        if (found(0)) {
            out.free = false;
            out.violating_parts = subset;
            out.violating_pairs = pairs;
            return out;
        }
        int pos = block_size - 1;
        while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == p - block_size + pos) --pos;
        if (pos < 0) break;
        ++subset[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < block_size; ++q)
            subset[static_cast<std::size_t>(q)] = subset[static_cast<std::size_t>(q - 1)] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// empty-tuple finder (d+1 pairs of disjoint convex sets in R^d)

using PairFamily = std::vector<std::array<VPolytope, 2>>;

inline void validate_pair_family(const PairFamily& pairs, std::size_t d) {
    if (pairs.size() != d + 1) throw invalid_input("find_empty_tuple: need d+1 pairs in R^d");
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (pairs[p][0].dim() != d || pairs[p][1].dim() != d)
            throw dimension_mismatch("find_empty_tuple: dimension mismatch");
        std::vector<VPolytope> pr{pairs[p][0], pairs[p][1]};
        if (multi_hulls_intersect(pr).intersects)
            throw invalid_input("find_empty_tuple: pair " + std::to_string(p + 1) +
                                " is not disjoint");
    }
}

inline std::vector<std::vector<int>> empty_tuples_brute(const PairFamily& pairs) {
    const std::size_t m = pairs.size();
    std::vector<std::vector<int>> empties;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<VPolytope> tuple;
        std::vector<int> sel;
        for (std::size_t p = 0; p < m; ++p) {
            int side = (mask >> p) & 1;
            sel.push_back(side);
            tuple.push_back(pairs[p][static_cast<std::size_t>(side)]);
        }
        if (!multi_hulls_intersect(tuple).intersects) empties.push_back(std::move(sel));
    }
    return empties;
}

namespace detail {

inline std::vector<int> empty_tuple_rec(const PairFamily& pairs, std::size_t m,
                                        const std::vector<std::pair<Vec, Rat>>& eqs) {
    Body a(pairs[m - 1][0]);
    Body b(pairs[m - 1][1]);
    a.eqs = eqs;
    b.eqs = eqs;
    std::vector<int> sel(m, 0);
    if (body_empty(a)) {
        sel[m - 1] = 0;
        return sel;
    }
    if (body_empty(b)) {
        sel[m - 1] = 1;
        return sel;
    }
    if (m == 1)
        throw invalid_input("empty_tuple_rec: a pair meets a zero-dimensional slice twice");
    auto wit = separate_bodies(a, b);
    if (!wit) throw invalid_input("empty_tuple_rec: slice separation failed");

    auto eqs2 = eqs;
    eqs2.push_back({wit->normal, wit->offset});
    std::vector<int> inner = empty_tuple_rec(pairs, m - 1, eqs2);

    // which side of the separating hyperplane holds the partial intersection?
    std::vector<Body> k_bodies;
    for (std::size_t p = 0; p + 1 < m; ++p) {
        Body kb(pairs[p][static_cast<std::size_t>(inner[p])]);
        kb.eqs = eqs;
        k_bodies.push_back(std::move(kb));
    }
    std::vector<int> sel_out = inner;
    sel_out.resize(m);
    if (!bodies_intersect(k_bodies).intersects) {
        sel_out[m - 1] = 0;
        return sel_out;
    }
    auto test_side = [&](bool upper) {
        auto probe = k_bodies;
        Vec n = wit->normal;
        Rat off = wit->offset;
        if (!upper) {
            for (auto& c : n) c = -c;
            off = -off;
        }
        probe[0].cuts.push_back({n, off});  // w.x >= c (upper) or w.x <= c (lower)
        return bodies_intersect(probe).intersects;
    };
    if (!test_side(true)) {
        // partial intersection lies strictly below the hyperplane; the upper
        // pair element is separated from it
        sel_out[m - 1] = 1;
        return sel_out;
    }
    if (!test_side(false)) {
        sel_out[m - 1] = 0;
        return sel_out;
    }
    throw invalid_input("empty_tuple_rec: partial intersection crosses its separating hyperplane");
}

}  // namespace detail

struct EmptyTupleResult {
    std::vector<int> brute;      // lexicographically first empty tuple
    std::vector<int> inductive;  // tuple from the hyperplane recursion
    long empty_count = 0;        // number of empty tuples among all 2^(d+1)
};

// Both routes to an empty tuple: exhaustive over all 2^(d+1) selections,
// and the inductive hyperplane-slicing procedure. Both results are
// re-verified empty; the tuples themselves may differ.
inline EmptyTupleResult find_empty_tuple(const PairFamily& pairs) {
    const std::size_t d = pairs.front()[0].dim();
    validate_pair_family(pairs, d);
    EmptyTupleResult out;
    auto empties = empty_tuples_brute(pairs);
    if (empties.empty())
        throw invalid_input("find_empty_tuple: no empty tuple exists (hypothesis violated?)");
    out.brute = empties.front();
    out.empty_count = static_cast<long>(empties.size());
    out.inductive = detail::empty_tuple_rec(pairs, pairs.size(), {});
    // cross-validate the inductive tuple against the brute-force list
    bool found = false;
    for (const auto& e : empties)
        if (e == out.inductive) found = true;
    if (!found)
        throw invalid_input("find_empty_tuple: inductive tuple is not empty by brute force");
    return out;
}

// ---------------------------------------------------------------------------
// polyhedral thickening

struct ThickeningAudit {
    long r = 0, s = 0;
    long total_facets = 0;
    long q_observed = 0;           // max nonempty cross-tuple count over steps
    long budget = 0;               // r * s * (q_observed + s)
    bool containment = false;
    bool family_disjoint = false;
    bool tuples_empty = false;

    bool all_ok() const { return containment && family_disjoint && tuples_empty; }

    Json to_json() const {
        return Json{{"r", r},
                    {"s", s},
                    {"total_facets", total_facets},
                    {"q_observed", q_observed},
                    {"budget", budget},
                    {"containment", containment},
                    {"family_disjoint", family_disjoint},
                    {"tuples_empty", tuples_empty}};
    }
};

struct ThickeningResult {
    std::vector<std::vector<HPolyhedron>> polys;
    ThickeningAudit audit;
};

// Replace each convex set by a polyhedron cut out by separating halfspaces:
// against its own family members and against every nonempty cross-tuple
// region of the other families, processing sets in order and replacing as
// it goes. The audit re-verifies every postcondition by LP.
inline ThickeningResult polyhedral_thickening(const std::vector<std::vector<VPolytope>>& families) {
    const long r = static_cast<long>(families.size());
    if (r < 2) throw invalid_input("polyhedral_thickening: need at least 2 families");
    const long s = static_cast<long>(families[0].size());
    const std::size_t d = families[0][0].dim();
    for (const auto& fam : families) {
        if (static_cast<long>(fam.size()) != s)
            throw invalid_input("polyhedral_thickening: families of unequal size");
        for (const auto& c : fam)
            if (c.dim() != d) throw dimension_mismatch("polyhedral_thickening: dimension mismatch");
    }
    // intra-family disjointness
    for (long f = 0; f < r; ++f)
        for (long a = 0; a < s; ++a)
            for (long b = a + 1; b < s; ++b) {
                std::vector<VPolytope> pair{families[f][static_cast<std::size_t>(a)],
                                            families[f][static_cast<std::size_t>(b)]};
                if (multi_hulls_intersect(pair).intersects)
                    throw invalid_input("polyhedral_thickening: family " + std::to_string(f + 1) +
                                        " is not disjoint");
            }
    // every cross tuple of the input must be empty
    {
        std::vector<long> idx(static_cast<std::size_t>(r), 0);
        for (;;) {
            std::vector<VPolytope> tuple;
            for (long f = 0; f < r; ++f)
                tuple.push_back(families[static_cast<std::size_t>(f)]
                                        [static_cast<std::size_t>(idx[static_cast<std::size_t>(f)])]);
            if (multi_hulls_intersect(tuple).intersects)
                throw invalid_input("polyhedral_thickening: a cross tuple of the input intersects");
            long pos = r - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == s) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }

    // current state: thickened polyhedra replace hulls as we sweep
    std::vector<std::vector<std::optional<HPolyhedron>>> done(
        static_cast<std::size_t>(r), std::vector<std::optional<HPolyhedron>>(static_cast<std::size_t>(s)));
    ThickeningResult out;
    out.audit.r = r;
    out.audit.s = s;
    out.polys.assign(static_cast<std::size_t>(r), {});

    for (long i = 0; i < r; ++i)
        for (long k = 0; k < s; ++k) {
            const VPolytope& c = families[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            std::vector<Halfspace> cons;
            // within-family separations
            for (long k2 = 0; k2 < s; ++k2) {
                if (k2 == k) continue;
                const auto& other_done = done[static_cast<std::size_t>(i)][static_cast<std::size_t>(k2)];
                std::optional<SeparationWitness> w;
                if (other_done) {
                    std::vector<VPolytope> no_hulls;
                    w = separate_from_region(c, no_hulls, other_done->constraints);
                } else {
                    std::vector<VPolytope> hull{families[static_cast<std::size_t>(i)][static_cast<std::size_t>(k2)]};
                    std::vector<Halfspace> no_cuts;
                    w = separate_from_region(c, hull, no_cuts);
                }
                if (!w) throw invalid_input("polyhedral_thickening: family separation LP failed");
                Vec neg(d);
                for (std::size_t t = 0; t < d; ++t) neg[t] = -w->normal[t];
                cons.push_back(Halfspace(neg, -w->offset));  // c on the low side
            }
            // cross-tuple separations over the other families' current sets
            long q_here = 0;
            std::vector<long> fs;
            for (long f = 0; f < r; ++f)
                if (f != i) fs.push_back(f);
            std::vector<long> idx(fs.size(), 0);
            for (;;) {
                std::vector<VPolytope> hulls;
                std::vector<Halfspace> cuts;
                for (std::size_t t = 0; t < fs.size(); ++t) {
                    long f = fs[t];
                    long kk = idx[t];
                    const auto& dd = done[static_cast<std::size_t>(f)][static_cast<std::size_t>(kk)];
                    if (dd)
                        cuts.insert(cuts.end(), dd->constraints.begin(), dd->constraints.end());
                    else
                        hulls.push_back(families[static_cast<std::size_t>(f)][static_cast<std::size_t>(kk)]);
                }
                // region emptiness
                bool region_nonempty;
                if (hulls.empty()) {
                    region_nonempty = !hpoly_empty(HPolyhedron(d, cuts));
                } else {
                    std::vector<Body> bodies;
                    for (std::size_t t = 0; t < hulls.size(); ++t) bodies.push_back(Body(hulls[t]));
                    for (const auto& cut : cuts) bodies[0].cuts.push_back({cut.normal, cut.offset});
                    region_nonempty = bodies_intersect(bodies).intersects;
                }
                if (region_nonempty) {
                    ++q_here;
                    auto w = separate_from_region(c, hulls, cuts);
                    if (!w) throw invalid_input("polyhedral_thickening: tuple separation LP failed");
                    Vec neg(d);
                    for (std::size_t t = 0; t < d; ++t) neg[t] = -w->normal[t];
                    cons.push_back(Halfspace(neg, -w->offset));
                }
                std::size_t pos = fs.size();
                bool rolled = true;
                while (pos > 0) {
                    --pos;
                    if (++idx[pos] < static_cast<std::size_t>(s)) {
                        rolled = false;
                        break;
                    }
                    idx[pos] = 0;
                }
                if (rolled) break;
            }
            out.audit.q_observed = std::max(out.audit.q_observed, q_here);
            HPolyhedron kk = cons.empty() ? HPolyhedron(d, {})
                                          : facet_irredundant(HPolyhedron(d, std::move(cons)));
            done[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = std::move(kk);
        }

    for (long i = 0; i < r; ++i)
        for (long k = 0; k < s; ++k)
            out.polys[static_cast<std::size_t>(i)].push_back(
                *done[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);

    // audit: re-verify all postconditions
    out.audit.containment = true;
    for (long i = 0; i < r && out.audit.containment; ++i)
        for (long k = 0; k < s && out.audit.containment; ++k)
            for (const auto& g : families[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].gens)
                if (!out.polys[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].contains(g)) {
                    out.audit.containment = false;
                    break;
                }
    out.audit.family_disjoint = true;
    for (long i = 0; i < r && out.audit.family_disjoint; ++i)
        for (long a = 0; a < s && out.audit.family_disjoint; ++a)
            for (long b = a + 1; b < s; ++b) {
                std::vector<Halfspace> joint =
                    out.polys[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)].constraints;
                const auto& other =
                    out.polys[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)].constraints;
                joint.insert(joint.end(), other.begin(), other.end());
                if (!hpoly_empty(HPolyhedron(d, joint))) {
                    out.audit.family_disjoint = false;
                    break;
                }
            }
    out.audit.tuples_empty = true;
    {
        std::vector<long> idx(static_cast<std::size_t>(r), 0);
        for (;;) {
            std::vector<Halfspace> joint;
            for (long f = 0; f < r; ++f) {
                const auto& p = out.polys[static_cast<std::size_t>(f)]
                                         [static_cast<std::size_t>(idx[static_cast<std::size_t>(f)])];
                joint.insert(joint.end(), p.constraints.begin(), p.constraints.end());
            }
            if (!hpoly_empty(HPolyhedron(d, joint))) {
                out.audit.tuples_empty = false;
                break;
            }
            long pos = r - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == s) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    for (long i = 0; i < r; ++i)
        for (long k = 0; k < s; ++k)
            out.audit.total_facets +=
                static_cast<long>(out.polys[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].facet_count());
    out.audit.budget = r * s * (out.audit.q_observed + s);
    return out;
}

}  // namespace scallop
