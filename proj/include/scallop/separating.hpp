#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "scallop/geometry.hpp"
#include "scallop/json_io.hpp"

namespace scallop {

// ---------------------------------------------------------------------------
// families and systems

struct DisjointFamily {
    std::vector<VPolytope> sets;

    // Validates pairwise disjointness exactly; throws naming the first
    // offending pair. Witnesses are kept for the naive construction.
    static DisjointFamily validated(std::vector<VPolytope> sets) {
        DisjointFamily f;
        for (const auto& s : sets)
            if (s.dim() != 2) throw invalid_input("disjoint family lives in the plane");
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                auto r = hulls_intersect(sets[i], sets[j]);
                if (r.intersects)
                    throw invalid_input("family sets " + std::to_string(i + 1) + " and " +
                                        std::to_string(j + 1) + " are not disjoint");
                f.witnesses.push_back({i, j, *r.witness});
            }
        f.sets = std::move(sets);
        return f;
    }

    struct PairWitness {
        std::size_t i, j;
        SeparationWitness witness;
    };
    std::vector<PairWitness> witnesses;

    Json to_json() const {
        Json sets_j = Json::array();
        for (const auto& s : sets) sets_j.push_back(scallop::to_json(s));
        return Json{{"schema", "v1"}, {"sets", sets_j}};
    }
};

struct SeparatingSystem {
    std::vector<HPolyhedron> polys;  // irredundant H-reps, one per family set

    long fac() const {
        long total = 0;
        for (const auto& p : polys) total += static_cast<long>(p.facet_count());
        return total;
    }

    Json to_json() const {
        Json arr = Json::array();
        for (const auto& p : polys) arr.push_back(scallop::to_json(p));
        return Json{{"schema", "v1"}, {"polyhedra", arr}, {"fac", fac()}};
    }
};

// containment of every generator plus pairwise interior-disjointness,
// re-verified by LP; used after construction and after every move.
inline bool system_valid(const SeparatingSystem& s, const DisjointFamily& f,
                         std::string* why = nullptr) {
    if (s.polys.size() != f.sets.size()) {
        if (why) *why = "size mismatch";
        return false;
    }
    for (std::size_t i = 0; i < f.sets.size(); ++i)
        for (const auto& g : f.sets[i].gens)
            if (!s.polys[i].contains(g)) {
                if (why) *why = "containment fails at set " + std::to_string(i + 1);
                return false;
            }
    for (std::size_t i = 0; i < s.polys.size(); ++i)
        for (std::size_t j = i + 1; j < s.polys.size(); ++j)
            if (hpoly_interiors_intersect(s.polys[i], s.polys[j])) {
                if (why)
                    *why = "interiors of " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " meet";
                return false;
            }
    return true;
}

// One separating halfplane per ordered pair, from the max-gap witness of
// the pair; the two sides share the midline, so interior-disjointness is
// structural. Facet counts come out at most a(a-1) before reduction.
inline SeparatingSystem naive_separating_system(const DisjointFamily& f) {
    const std::size_t a = f.sets.size();
    if (a < 2) throw invalid_input("naive_separating_system needs at least 2 sets");
    std::vector<std::vector<Halfspace>> cons(a);
    for (const auto& pw : f.witnesses) {
        const auto& w = pw.witness;
        Vec neg(w.normal.size());
        for (std::size_t k = 0; k < w.normal.size(); ++k) neg[k] = -w.normal[k];
        cons[pw.i].push_back(Halfspace(neg, -w.offset));     // n.x <= c
        cons[pw.j].push_back(Halfspace(w.normal, w.offset)); // n.x >= c
    }
    SeparatingSystem s;
    for (std::size_t i = 0; i < a; ++i)
        s.polys.push_back(facet_irredundant(HPolyhedron(2, std::move(cons[i]))));
    std::string why;
    if (!system_valid(s, f, &why))
        throw invalid_input("naive_separating_system produced an invalid system: " + why);
    return s;
}

// ---------------------------------------------------------------------------
// facet geometry

enum class SegKind { point, segment, ray, line };

struct FacetGeo {
    SegKind kind = SegKind::segment;
    Vec lo, hi;   // segment endpoints (lex param order); ray: lo = endpoint
    Vec dir;      // ray/line direction; segment: hi - lo
};

namespace detail {

struct ParamBound {
    bool bounded;
    Rat value;
    Vec point;
};

// min/max of v.x over P intersected with {a.x = b}
inline ParamBound facet_param_bound(const HPolyhedron& p, const Halfspace& facet, const Vec& v,
                                    bool maximize) {
    LpProblem lp;
    int x0 = lp.add_var(false);
    int x1 = lp.add_var(false);
    for (const auto& c : p.constraints)
        lp.add_constraint({{x0, c.normal[0]}, {x1, c.normal[1]}}, Rel::ge, c.offset);
    lp.add_constraint({{x0, facet.normal[0]}, {x1, facet.normal[1]}}, Rel::eq, facet.offset);
    std::vector<LpTerm> obj{{x0, v[0]}, {x1, v[1]}};
    if (maximize) lp.maximize(std::move(obj));
    else lp.minimize(std::move(obj));
    auto res = lp.solve();
    if (res.status == LpStatus::infeasible)
        throw invalid_input("facet_param_bound: constraint is not active anywhere");
    if (res.status == LpStatus::unbounded) return {false, Rat(0), {}};
    return {true, res.objective, {res.values[0], res.values[1]}};
}

inline int rank2(const std::vector<Vec>& normals) {
    if (normals.empty()) return 0;
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = i + 1; j < normals.size(); ++j)
            if (cross2(normals[i], normals[j]) != 0) return 2;
    return 1;
}

}  // namespace detail

inline FacetGeo facet_geometry(const HPolyhedron& p, std::size_t f) {
    if (p.dim != 2) throw invalid_input("facet_geometry expects the plane");
    const Halfspace& h = p.constraints[f];
    Vec v = perp_ccw(h.normal);
    auto lo = detail::facet_param_bound(p, h, v, false);
    auto hi = detail::facet_param_bound(p, h, v, true);
    FacetGeo g;
    if (lo.bounded && hi.bounded) {
        if (lo.value == hi.value) {
            g.kind = SegKind::point;
            g.lo = lo.point;
            g.hi = lo.point;
            g.dir = {Rat(0), Rat(0)};
        } else {
            g.kind = SegKind::segment;
            g.lo = lo.point;
            g.hi = hi.point;
            g.dir = vsub(g.hi, g.lo);
        }
    } else if (lo.bounded) {
        g.kind = SegKind::ray;
        g.lo = lo.point;
        g.dir = v;
    } else if (hi.bounded) {
        g.kind = SegKind::ray;
        g.lo = hi.point;
        g.dir = vscale(rat(-1), v);
    } else {
        g.kind = SegKind::line;
        // any point on the facet line
        auto any = detail::facet_param_bound(p, h, Vec{Rat(0), Rat(0)}, false);
        g.lo = any.point;
        g.dir = v;
    }
    return g;
}

// tight-constraint rank at a boundary point: 1 means the point lies in the
// relative interior of exactly one facet line, 2 means it is a vertex
inline int tight_rank_at(const HPolyhedron& p, const Vec& x) {
    std::vector<Vec> tight;
    for (const auto& c : p.constraints)
        if (dot(c.normal, x) == c.offset) tight.push_back(c.normal);
    return detail::rank2(tight);
}

inline std::optional<std::size_t> tight_facet_at(const HPolyhedron& p, const Vec& x) {
    for (std::size_t f = 0; f < p.constraints.size(); ++f)
        if (dot(p.constraints[f].normal, x) == p.constraints[f].offset) return f;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// incidences

enum class IncidenceKind { type1, type2 };

struct CarrierFacet {
    int poly;
    int facet;
};

struct IncidenceRecord {
    int i = 0, j = 0;  // polyhedron indices, i < j
    IncidenceKind kind = IncidenceKind::type2;
    SegKind geo_kind = SegKind::point;
    Vec lo, hi, dir;   // as in FacetGeo; for type2, lo is the point
    std::vector<CarrierFacet> carriers;

    // the y_{i,j} of the drawing: the point itself for type 2, a canonical
    // relative-interior point otherwise
    Vec rep_point() const {
        switch (geo_kind) {
            case SegKind::point: return lo;
            case SegKind::segment: {
                Vec m(lo.size());
                for (std::size_t k = 0; k < lo.size(); ++k) m[k] = (lo[k] + hi[k]) / 2;
                return m;
            }
            case SegKind::ray: return vadd(lo, dir);
            case SegKind::line: return lo;
        }
        return lo;
    }

    Json to_json() const {
        const char* kinds[] = {"point", "segment", "ray", "line"};
        Json carriers_j = Json::array();
        for (const auto& c : carriers)
            carriers_j.push_back(Json{{"poly", c.poly + 1}, {"facet", c.facet}});
        Json g{{"kind", kinds[static_cast<int>(geo_kind)]}, {"anchor", scallop::to_json(lo)}};
        if (geo_kind == SegKind::segment) g["end"] = scallop::to_json(hi);
        if (geo_kind == SegKind::ray || geo_kind == SegKind::line) g["direction"] = scallop::to_json(dir);
        return Json{{"pair", Json::array({i + 1, j + 1})},
                    {"type", kind == IncidenceKind::type1 ? 1 : 2},
                    {"geometry", g},
                    {"carriers", carriers_j}};
    }
};

namespace detail {

inline std::optional<Vec> hpoly_any_point(const HPolyhedron& p) {
    LpProblem lp;
    int x0 = lp.add_var(false);
    int x1 = lp.add_var(false);
    for (const auto& c : p.constraints)
        lp.add_constraint({{x0, c.normal[0]}, {x1, c.normal[1]}}, Rel::ge, c.offset);
    auto res = lp.solve();
    if (!res.ok()) return std::nullopt;
    return Vec{res.values[0], res.values[1]};
}

// maximum of n.x over the joint system, or nullopt when unbounded
inline std::optional<Rat> joint_max(const std::vector<Halfspace>& cons, const Vec& n) {
    LpProblem lp;
    int x0 = lp.add_var(false);
    int x1 = lp.add_var(false);
    for (const auto& c : cons)
        lp.add_constraint({{x0, c.normal[0]}, {x1, c.normal[1]}}, Rel::ge, c.offset);
    lp.maximize({{x0, n[0]}, {x1, n[1]}});
    auto res = lp.solve();
    if (res.status == LpStatus::unbounded) return std::nullopt;
    if (!res.ok()) throw invalid_input("joint_max: infeasible system");
    return res.objective;
}

}  // namespace detail

// Exact boundary intersection of an interior-disjoint pair, classified by
// affine dimension via implicit equalities. At most one incidence per pair
// (the intersection is convex). A single contact point that is a vertex of
// both polyhedra is not an incidence.
inline std::optional<IncidenceRecord> pair_incidence(const SeparatingSystem& s, int i, int j) {
    const HPolyhedron& pi = s.polys[static_cast<std::size_t>(i)];
    const HPolyhedron& pj = s.polys[static_cast<std::size_t>(j)];
    std::vector<Halfspace> joint = pi.constraints;
    joint.insert(joint.end(), pj.constraints.begin(), pj.constraints.end());
    HPolyhedron cap(2, joint);
    if (hpoly_empty(cap)) return std::nullopt;

    // implicit equalities of the joint system
    std::vector<Vec> implicit_normals;
    std::vector<Rat> implicit_offsets;
    for (const auto& c : joint) {
        auto mx = detail::joint_max(joint, c.normal);
        if (mx && *mx == c.offset) {
            implicit_normals.push_back(c.normal);
            implicit_offsets.push_back(c.offset);
        }
    }
    int rank = detail::rank2(implicit_normals);
    if (rank == 0)
        throw invalid_input("pair_incidence: full-dimensional overlap between polyhedra " +
                            std::to_string(i + 1) + " and " + std::to_string(j + 1));

    IncidenceRecord rec;
    rec.i = i;
    rec.j = j;
    if (rank == 2) {
        // single point: solve two independent implicit equalities
        std::size_t b = 1;
        while (cross2(implicit_normals[0], implicit_normals[b]) == 0) ++b;
        Rat det = cross2(implicit_normals[0], implicit_normals[b]);
        const Vec& n1 = implicit_normals[0];
        const Vec& n2 = implicit_normals[b];
        Rat c1 = implicit_offsets[0], c2 = implicit_offsets[b];
        Vec pt{(c1 * n2[1] - c2 * n1[1]) / det, (n1[0] * c2 - n2[0] * c1) / det};
        int rank_i = tight_rank_at(pi, pt);
        int rank_j = tight_rank_at(pj, pt);
        if (rank_i == 0 || rank_j == 0)
            throw invalid_input("pair_incidence: contact point interior to one polyhedron");
        if (rank_i == 2 && rank_j == 2) return std::nullopt;  // shared vertex, not an incidence
        rec.kind = IncidenceKind::type2;
        rec.geo_kind = SegKind::point;
        rec.lo = pt;
        if (rank_i == 1) rec.carriers.push_back({i, static_cast<int>(*tight_facet_at(pi, pt))});
        if (rank_j == 1) rec.carriers.push_back({j, static_cast<int>(*tight_facet_at(pj, pt))});
        return rec;
    }

    // rank 1: one-dimensional contact along the carrier line
    const Vec& n = implicit_normals[0];
    const Rat& off = implicit_offsets[0];
    Vec v = perp_ccw(n);
    Halfspace carrier(n, off);
    auto lo = detail::facet_param_bound(cap, carrier, v, false);
    auto hi = detail::facet_param_bound(cap, carrier, v, true);
    rec.kind = IncidenceKind::type1;
    if (lo.bounded && hi.bounded) {
        if (lo.value == hi.value)
            throw invalid_input("pair_incidence: rank-1 contact degenerated to a point");
        rec.geo_kind = SegKind::segment;
        rec.lo = lo.point;
        rec.hi = hi.point;
        rec.dir = vsub(rec.hi, rec.lo);
    } else if (lo.bounded) {
        rec.geo_kind = SegKind::ray;
        rec.lo = lo.point;
        rec.dir = v;
    } else if (hi.bounded) {
        rec.geo_kind = SegKind::ray;
        rec.lo = hi.point;
        rec.dir = vscale(rat(-1), v);
    } else {
        rec.geo_kind = SegKind::line;
        auto any = detail::hpoly_any_point(cap);
        rec.lo = *any;
        rec.dir = v;
    }
    // carrier facets: constraints tight on the whole contact set
    Vec probe1 = rec.lo;
    Vec probe2 = rec.geo_kind == SegKind::segment ? rec.hi : vadd(rec.lo, rec.dir);
    auto add_carriers = [&](const HPolyhedron& p, int poly_idx) {
        for (std::size_t f = 0; f < p.constraints.size(); ++f) {
            const auto& c = p.constraints[f];
            if (dot(c.normal, probe1) == c.offset && dot(c.normal, probe2) == c.offset)
                rec.carriers.push_back({poly_idx, static_cast<int>(f)});
        }
    };
    add_carriers(pi, i);
    add_carriers(pj, j);
    return rec;
}

inline std::vector<IncidenceRecord> extract_incidences(const SeparatingSystem& s) {
    std::vector<IncidenceRecord> out;
    const int a = static_cast<int>(s.polys.size());
    for (int i = 0; i < a; ++i)
        for (int j = i + 1; j < a; ++j) {
            auto rec = pair_incidence(s, i, j);
            if (rec) out.push_back(std::move(*rec));
        }
    return out;
}

inline long type1_count(const std::vector<IncidenceRecord>& inc) {
    long n = 0;
    for (const auto& r : inc)
        if (r.kind == IncidenceKind::type1) ++n;
    return n;
}

// facet (poly, f) is supported when some incidence lies inside its
// relative interior; incidences record exactly those facets as carriers
inline bool facet_supported(const std::vector<IncidenceRecord>& inc, int poly, int facet) {
    for (const auto& r : inc)
        for (const auto& c : r.carriers)
            if (c.poly == poly && c.facet == facet) {
                if (r.kind == IncidenceKind::type1) return true;
                return true;  // type2 carriers are relative-interior by construction
            }
    return false;
}

inline bool system_supported(const SeparatingSystem& s, const std::vector<IncidenceRecord>& inc) {
    for (std::size_t i = 0; i < s.polys.size(); ++i)
        for (std::size_t f = 0; f < s.polys[i].constraints.size(); ++f)
            if (!facet_supported(inc, static_cast<int>(i), static_cast<int>(f))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// improvement moves

namespace detail {

// strictly smaller angle to u0 (both angles in [0, pi]); exact via signed
// cosines compared after squaring against the norms
inline bool angle_less(const Vec& u0, const Vec& d1, const Vec& d2) {
    Rat c1 = dot(u0, d1), c2 = dot(u0, d2);
    int s1 = scallop::sgn(c1), s2 = scallop::sgn(c2);
    if (s1 != s2) return s1 > s2;
    if (s1 == 0) return false;
    Rat lhs = c1 * c1 * dot(d2, d2);
    Rat rhs = c2 * c2 * dot(d1, d1);
    return s1 > 0 ? lhs > rhs : lhs < rhs;
}

// open-region feasibility: all listed constraints strictly satisfiable
inline bool strict_region_nonempty(const std::vector<Halfspace>& cons) {
    HPolyhedron h(2, cons);
    return hpoly_interior_point(h).has_value();
}

struct PushAnalysis {
    bool any_blocker = false;  // some other polyhedron limits the push
    Rat limit;                 // meaningful when any_blocker
};

// How far facet f of polyhedron i can be relaxed (in offset units) before
// its interior would invade another polyhedron's interior. No blocker at
// all means the facet can be dropped outright (the exterior wedge is free).
inline PushAnalysis analyze_push(const SeparatingSystem& s, std::size_t i, std::size_t f) {
    const HPolyhedron& p = s.polys[i];
    const Halfspace& e = p.constraints[f];
    std::vector<Halfspace> others;
    for (std::size_t k = 0; k < p.constraints.size(); ++k)
        if (k != f) others.push_back(p.constraints[k]);
    PushAnalysis out;
    for (std::size_t j = 0; j < s.polys.size(); ++j) {
        if (j == i) continue;
        std::vector<Halfspace> region = s.polys[j].constraints;
        region.insert(region.end(), others.begin(), others.end());
        if (!strict_region_nonempty(region)) continue;
        auto sup = joint_max(region, e.normal);
        if (!sup) continue;  // cannot happen for valid systems; defensive
        Rat d = e.offset - *sup;
        if (!out.any_blocker || d < out.limit) {
            out.any_blocker = true;
            out.limit = d;
        }
    }
    return out;
}

// Case 1 (d > 0): relax the facet to first contact. Case 2: drop it. The
// raw (unreduced) polyhedron is also returned so a follow-up wedge
// absorption can refer to the same facet index.
struct PushCandidate {
    HPolyhedron reduced;
    std::optional<HPolyhedron> raw;  // present for positive pushes
};

inline std::optional<PushCandidate> push_or_drop(const SeparatingSystem& s, std::size_t i,
                                                 std::size_t f) {
    const HPolyhedron& p = s.polys[i];
    auto analysis = analyze_push(s, i, f);
    if (!analysis.any_blocker) {
        std::vector<Halfspace> kept;
        for (std::size_t k = 0; k < p.constraints.size(); ++k)
            if (k != f) kept.push_back(p.constraints[k]);
        HPolyhedron dropped(2, std::move(kept));
        if (hpoly_empty(dropped)) return std::nullopt;
        return PushCandidate{facet_irredundant(dropped), std::nullopt};
    }
    if (analysis.limit <= 0) return std::nullopt;  // endpoint contact; wedge case
    HPolyhedron raw = p;
    raw.constraints[f].offset -= analysis.limit;
    return PushCandidate{facet_irredundant(raw), raw};
}

// Case 1 with d = 0: absorb a thin trapezoid T_eps beyond the facet,
// bounded sideways by the least-angle contact facets through the facet's
// endpoints. eps is half the exact minimum clearance of the other
// polyhedra over T, so validity is preserved.
inline std::optional<HPolyhedron> absorb_wedge(const SeparatingSystem& s, std::size_t i,
                                               std::size_t f) {
    const HPolyhedron& p = s.polys[i];
    const Halfspace& e = p.constraints[f];
    FacetGeo geo = facet_geometry(p, f);
    if (geo.kind == SegKind::line || geo.kind == SegKind::point) return std::nullopt;

    struct Endpoint {
        Vec at;
        Vec ref;  // direction pointing away from the facet along its line
    };
    std::vector<Endpoint> ends;
    if (geo.kind == SegKind::segment) {
        ends.push_back({geo.lo, vscale(rat(-1), geo.dir)});
        ends.push_back({geo.hi, geo.dir});
    } else {
        ends.push_back({geo.lo, vscale(rat(-1), geo.dir)});
    }

    std::vector<Halfspace> side_planes;
    for (const auto& end : ends) {
        // constraints of p tight at the endpoint, other than the facet itself
        std::vector<Vec> adjacent;
        for (std::size_t k = 0; k < p.constraints.size(); ++k) {
            if (k == f) continue;
            if (dot(p.constraints[k].normal, end.at) == p.constraints[k].offset)
                adjacent.push_back(p.constraints[k].normal);
        }
        std::optional<Vec> best_dir;
        Vec best_line_normal;
        Rat best_line_offset;
        for (std::size_t j = 0; j < s.polys.size(); ++j) {
            if (j == i) continue;
            const HPolyhedron& q = s.polys[j];
            if (!q.contains(end.at)) continue;
            for (std::size_t fj = 0; fj < q.constraints.size(); ++fj) {
                const Halfspace& cj = q.constraints[fj];
                if (dot(cj.normal, end.at) != cj.offset) continue;
                if (cross2(cj.normal, e.normal) == 0) continue;  // same or parallel line
                FacetGeo gj = facet_geometry(q, fj);
                std::vector<Vec> dirs;
                if (gj.kind == SegKind::point) continue;
                if (gj.kind == SegKind::segment) {
                    if (end.at == gj.lo) dirs.push_back(gj.dir);
                    else if (end.at == gj.hi) dirs.push_back(vscale(rat(-1), gj.dir));
                    else {
                        dirs.push_back(gj.dir);
                        dirs.push_back(vscale(rat(-1), gj.dir));
                    }
                } else if (gj.kind == SegKind::ray) {
                    if (end.at == gj.lo) dirs.push_back(gj.dir);
                    else {
                        dirs.push_back(gj.dir);
                        dirs.push_back(vscale(rat(-1), gj.dir));
                    }
                } else {
                    dirs.push_back(gj.dir);
                    dirs.push_back(vscale(rat(-1), gj.dir));
                }
                for (const auto& d : dirs) {
                    if (!(dot(e.normal, d) < 0)) continue;  // must head beyond the facet line
                    bool inside = true;
                    for (const auto& g : adjacent)
                        if (dot(g, d) < 0) inside = false;  // leaves the wedge sideways
                    if (!inside) continue;
                    if (!best_dir || angle_less(end.ref, d, *best_dir)) {
                        best_dir = d;
                        best_line_normal = cj.normal;
                        best_line_offset = cj.offset;
                    }
                }
            }
        }
        if (best_dir) {
            // halfspace of that contact line containing the facet's other side
            Vec ref_inside = vsub(end.at, end.ref);  // a point toward the facet interior
            Rat side = dot(best_line_normal, ref_inside) - best_line_offset;
            if (side == 0) continue;
            if (side > 0) side_planes.push_back(Halfspace(best_line_normal, best_line_offset));
            else {
                Vec neg(2);
                neg[0] = -best_line_normal[0];
                neg[1] = -best_line_normal[1];
                side_planes.push_back(Halfspace(neg, -best_line_offset));
            }
        }
    }
    if (side_planes.empty()) return std::nullopt;

    // clearance of the other polyhedra over T, in offset units of e
    std::vector<Halfspace> t_region;
    {
        Vec neg{-e.normal[0], -e.normal[1]};
        t_region.push_back(Halfspace(neg, -e.offset));  // beyond the facet line
        for (const auto& sp : side_planes) t_region.push_back(sp);
    }
    Rat eps(1);
    for (std::size_t j = 0; j < s.polys.size(); ++j) {
        if (j == i) continue;
        std::vector<Halfspace> meet = s.polys[j].constraints;
        meet.insert(meet.end(), t_region.begin(), t_region.end());
        if (hpoly_empty(HPolyhedron(2, meet))) continue;
        auto sup = joint_max(meet, e.normal);
        if (!sup) return std::nullopt;
        Rat clearance = e.offset - *sup;
        if (clearance <= 0) return std::nullopt;  // contact inside T; no safe slab
        if (clearance / 2 < eps) eps = clearance / 2;
    }
    // keep the slab below a crossing of the two side rays, if any
    if (side_planes.size() == 2) {
        Rat det = cross2(side_planes[0].normal, side_planes[1].normal);
        if (det != 0) {
            const Vec& n1 = side_planes[0].normal;
            const Vec& n2 = side_planes[1].normal;
            Rat c1 = side_planes[0].offset, c2 = side_planes[1].offset;
            Vec x{(c1 * n2[1] - c2 * n1[1]) / det, (n1[0] * c2 - n2[0] * c1) / det};
            Rat depth = e.offset - dot(e.normal, x);
            if (depth > 0 && depth / 2 < eps) eps = depth / 2;
        }
    }

    std::vector<Halfspace> cons;
    for (std::size_t k = 0; k < p.constraints.size(); ++k)
        if (k != f) cons.push_back(p.constraints[k]);
    cons.push_back(Halfspace(e.normal, e.offset - eps));
    for (const auto& sp : side_planes) cons.push_back(sp);
    HPolyhedron widened(2, std::move(cons));
    if (hpoly_empty(widened)) return std::nullopt;
    return facet_irredundant(widened);
}

// fast validity delta when only polyhedron i changed
inline bool candidate_valid(const SeparatingSystem& s, const DisjointFamily& fam, std::size_t i) {
    for (const auto& g : fam.sets[i].gens)
        if (!s.polys[i].contains(g)) return false;
    for (std::size_t j = 0; j < s.polys.size(); ++j)
        if (j != i && hpoly_interiors_intersect(s.polys[i], s.polys[j])) return false;
    return true;
}

struct IncidenceCache {
    int a = 0;
    std::vector<std::optional<IncidenceRecord>> pairs;  // index i*a+j for i<j

    void recompute_all(const SeparatingSystem& s) {
        a = static_cast<int>(s.polys.size());
        pairs.assign(static_cast<std::size_t>(a * a), std::nullopt);
        for (int i = 0; i < a; ++i)
            for (int j = i + 1; j < a; ++j)
                pairs[static_cast<std::size_t>(i * a + j)] = pair_incidence(s, i, j);
    }

    void recompute_for(const SeparatingSystem& s, int changed) {
        for (int j = 0; j < a; ++j) {
            if (j == changed) continue;
            int lo = std::min(changed, j), hi = std::max(changed, j);
            pairs[static_cast<std::size_t>(lo * a + hi)] = pair_incidence(s, lo, hi);
        }
    }

    std::vector<IncidenceRecord> list() const {
        std::vector<IncidenceRecord> out;
        for (const auto& p : pairs)
            if (p) out.push_back(*p);
        return out;
    }
};

struct LexObjective {
    long inc = 0, inc1 = 0, neg_fac = 0;
    friend bool operator>(const LexObjective& x, const LexObjective& y) {
        if (x.inc != y.inc) return x.inc > y.inc;
        if (x.inc1 != y.inc1) return x.inc1 > y.inc1;
        return x.neg_fac > y.neg_fac;
    }
};

inline LexObjective objective_of(const SeparatingSystem& s, const std::vector<IncidenceRecord>& inc) {
    return {static_cast<long>(inc.size()), type1_count(inc), -s.fac()};
}

}  // namespace detail

struct ImproveResult {
    SeparatingSystem system;
    bool supported = false;
    int rounds = 0;
    long moves_applied = 0;
};

// Greedy local search over the two proof moves: push an unsupported facet
// outward to first contact (or drop it when its exterior wedge is free),
// and absorb a thin wedge when the contact sits at facet endpoints. A move
// is applied only if it keeps the system valid and strictly improves
// (#incidences, #type-1, -facets) lexicographically, which bounds the
// number of applied moves. Reaching a fully supported system is reported,
// not guaranteed.
inline ImproveResult improve_separating_system(SeparatingSystem s, const DisjointFamily& fam,
                                               int max_rounds = 200) {
    ImproveResult out;
    detail::IncidenceCache cache;
    cache.recompute_all(s);
    for (out.rounds = 0; out.rounds < max_rounds; ++out.rounds) {
        auto inc = cache.list();
        auto obj = detail::objective_of(s, inc);
        std::vector<std::pair<std::size_t, std::size_t>> unsupported;
        for (std::size_t i = 0; i < s.polys.size(); ++i)
            for (std::size_t f = 0; f < s.polys[i].constraints.size(); ++f)
                if (!facet_supported(inc, static_cast<int>(i), static_cast<int>(f)))
                    unsupported.push_back({i, f});
        if (unsupported.empty()) {
            out.supported = true;
            break;
        }
        bool applied = false;
        for (const auto& [i, f] : unsupported) {
            std::vector<HPolyhedron> candidates;
            auto push = detail::push_or_drop(s, i, f);
            if (push) {
                candidates.push_back(push->reduced);
                if (push->raw) {
                    // first contact may land on endpoints only; follow with a wedge
                    SeparatingSystem pushed = s;
                    pushed.polys[i] = *push->raw;
                    auto wedge = detail::absorb_wedge(pushed, i, f);
                    if (wedge) candidates.push_back(*wedge);
                }
            }
            auto wedge_now = detail::absorb_wedge(s, i, f);
            if (wedge_now) candidates.push_back(*wedge_now);

            for (const auto& cand : candidates) {
                SeparatingSystem trial = s;
                trial.polys[i] = cand;
                if (!detail::candidate_valid(trial, fam, i)) continue;
                detail::IncidenceCache trial_cache = cache;
                trial_cache.recompute_for(trial, static_cast<int>(i));
                auto trial_obj = detail::objective_of(trial, trial_cache.list());
                if (trial_obj > obj) {
                    s = std::move(trial);
                    cache = std::move(trial_cache);
                    ++out.moves_applied;
                    applied = true;
                    break;
                }
            }
            if (applied) break;
        }
        if (!applied) break;  // no improving move on any unsupported facet
    }
    out.supported = system_supported(s, cache.list());
    out.system = std::move(s);
    return out;
}

// ---------------------------------------------------------------------------
// auxiliary graph and facet bound

struct AuxiliaryGraph {
    std::vector<Vec> anchors;
    struct Edge {
        int i, j;
        Vec y;
    };
    std::vector<Edge> edges;

    Json to_json() const {
        Json anchors_j = Json::array();
        for (const auto& x : anchors) anchors_j.push_back(scallop::to_json(x));
        Json edges_j = Json::array();
        for (const auto& e : edges)
            edges_j.push_back(Json{{"i", e.i + 1}, {"j", e.j + 1}, {"y", scallop::to_json(e.y)}});
        return Json{{"schema", "v1"}, {"anchors", anchors_j}, {"edges", edges_j}};
    }
};

struct drawing_conflict : std::runtime_error {
    int edge1, edge2;
    drawing_conflict(int e1, int e2)
        : std::runtime_error("auxiliary graph drawing self-intersects (edges " +
                             std::to_string(e1) + ", " + std::to_string(e2) + ")"),
          edge1(e1),
          edge2(e2) {}
};

namespace detail {

enum class SegMeet { none, point, overlap };

inline int orient(const Vec& p, const Vec& q, const Vec& r) {
    return scallop::sgn(cross2(vsub(q, p), vsub(r, p)));
}

inline bool within_box(const Vec& p, const Vec& q, const Vec& r) {
    for (std::size_t k = 0; k < 2; ++k) {
        Rat lo = std::min(p[k], q[k]), hi = std::max(p[k], q[k]);
        if (r[k] < lo || r[k] > hi) return false;
    }
    return true;
}

inline SegMeet segment_meet(const Vec& a, const Vec& b, const Vec& c, const Vec& d, Vec& point) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
        if (o1 != o2 && o3 != o4) {
            // proper crossing; solve the 2x2 line system
            Vec ab = vsub(b, a), cd = vsub(d, c);
            Rat det = cross2(ab, cd);
            Rat t = cross2(vsub(c, a), cd) / det;
            point = {a[0] + t * ab[0], a[1] + t * ab[1]};
            return SegMeet::point;
        }
        return SegMeet::none;
    }
    std::vector<Vec> touches;
    auto add_touch = [&](const Vec& p) {
        for (const auto& q : touches)
            if (q == p) return;
        touches.push_back(p);
    };
    if (o1 == 0 && within_box(a, b, c)) add_touch(c);
    if (o2 == 0 && within_box(a, b, d)) add_touch(d);
    if (o3 == 0 && within_box(c, d, a)) add_touch(a);
    if (o4 == 0 && within_box(c, d, b)) add_touch(b);
    if (touches.empty()) return SegMeet::none;
    if (touches.size() == 1) {
        point = touches[0];
        return SegMeet::point;
    }
    return SegMeet::overlap;
}

}  // namespace detail

// Anchors are strict interior points; each incidence contributes one edge
// drawn as the two-segment path x_i -- y -- x_j. The plane-embedding
// property is verified pairwise with exact segment intersection tests; a
// crossing would falsify the planarity claim for this instance and throws.
inline AuxiliaryGraph build_auxiliary_graph(const SeparatingSystem& s,
                                            const std::vector<IncidenceRecord>& inc) {
    AuxiliaryGraph g;
    for (std::size_t i = 0; i < s.polys.size(); ++i) {
        auto x = hpoly_interior_point(s.polys[i]);
        if (!x) throw invalid_input("build_auxiliary_graph: polyhedron without interior");
        g.anchors.push_back(*x);
    }
    for (const auto& r : inc) g.edges.push_back({r.i, r.j, r.rep_point()});

    // simple graph: no duplicate pairs
    for (std::size_t e1 = 0; e1 < g.edges.size(); ++e1)
        for (std::size_t e2 = e1 + 1; e2 < g.edges.size(); ++e2)
            if (g.edges[e1].i == g.edges[e2].i && g.edges[e1].j == g.edges[e2].j)
                throw invalid_input("build_auxiliary_graph: duplicate incidence pair");

    struct Seg {
        Vec a, b;
        std::size_t edge;
        int anchor;  // index of the anchor endpoint, -1 for the y endpoint
    };
    std::vector<Seg> segs;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        segs.push_back({g.anchors[static_cast<std::size_t>(g.edges[e].i)], g.edges[e].y, e,
                        g.edges[e].i});
        segs.push_back({g.anchors[static_cast<std::size_t>(g.edges[e].j)], g.edges[e].y, e,
                        g.edges[e].j});
    }
    for (std::size_t s1 = 0; s1 < segs.size(); ++s1)
        for (std::size_t s2 = s1 + 1; s2 < segs.size(); ++s2) {
            Vec meet_point;
            auto meet = detail::segment_meet(segs[s1].a, segs[s1].b, segs[s2].a, segs[s2].b,
                                             meet_point);
            if (meet == detail::SegMeet::none) continue;
            int e1 = static_cast<int>(segs[s1].edge), e2 = static_cast<int>(segs[s2].edge);
            if (meet == detail::SegMeet::overlap) throw drawing_conflict(e1, e2);
            if (e1 == e2) {
                // the two halves of one arc may share exactly their y point
                if (meet_point == g.edges[static_cast<std::size_t>(e1)].y) continue;
                throw drawing_conflict(e1, e2);
            }
            // different arcs may meet only at a common anchor
            if (segs[s1].anchor >= 0 && segs[s1].anchor == segs[s2].anchor &&
                meet_point == g.anchors[static_cast<std::size_t>(segs[s1].anchor)])
                continue;
            throw drawing_conflict(e1, e2);
        }
    return g;
}

struct FacBoundReport {
    long a = 0;
    long fac = 0;
    long incidences = 0;
    long type1 = 0;
    long bound = 0;  // 6a - 12
    bool fac_le_two_incidences = false;
    bool fac_le_bound = false;
    bool supported = false;

    Json to_json() const {
        return Json{{"a", a},
                    {"fac", fac},
                    {"incidences", incidences},
                    {"type1", type1},
                    {"bound_6a_minus_12", bound},
                    {"fac_le_2I", fac_le_two_incidences},
                    {"fac_le_bound", fac_le_bound},
                    {"supported", supported}};
    }
};

inline FacBoundReport check_fac_bound(const SeparatingSystem& s,
                                      const std::vector<IncidenceRecord>& inc) {
    const long a = static_cast<long>(s.polys.size());
    if (a < 3) throw invalid_input("check_fac_bound: bound 6a-12 needs a >= 3");
    FacBoundReport r;
    r.a = a;
    r.fac = s.fac();
    r.incidences = static_cast<long>(inc.size());
    r.type1 = type1_count(inc);
    r.bound = 6 * a - 12;
    r.fac_le_two_incidences = r.fac <= 2 * r.incidences;
    r.fac_le_bound = r.fac <= r.bound;
    r.supported = system_supported(s, inc);
    return r;
}

}  // namespace scallop
