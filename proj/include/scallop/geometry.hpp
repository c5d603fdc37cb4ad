#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scallop/lp.hpp"

namespace scallop {

using Vec = std::vector<Rat>;

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw dimension_mismatch("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec vsub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw dimension_mismatch("vsub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vadd(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw dimension_mismatch("vadd: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vscale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline Rat l1_norm(const Vec& a) {
    Rat s = 0;
    for (const auto& x : a) s += rat_abs(x);
    return s;
}

// 2D cross product (z component).
inline Rat cross2(const Vec& a, const Vec& b) {
    if (a.size() != 2 || b.size() != 2) throw dimension_mismatch("cross2 expects 2d");
    return a[0] * b[1] - a[1] * b[0];
}

inline Vec perp_ccw(const Vec& a) {
    if (a.size() != 2) throw dimension_mismatch("perp expects 2d");
    return {-a[1], a[0]};
}

// {x : normal . x >= offset}; strict switches to the open side. H-polyhedra
// only ever store closed halfspaces; the strict sense exists for membership
// queries against open sides.
struct Halfspace {
    Vec normal;
    Rat offset;
    bool strict = false;

    Halfspace() = default;
    Halfspace(Vec n, Rat o, bool s = false) : normal(std::move(n)), offset(std::move(o)), strict(s) {
        if (is_zero(normal)) throw invalid_input("halfspace with zero normal");
    }

    bool contains(const Vec& x) const {
        Rat v = dot(normal, x);
        return strict ? v > offset : v >= offset;
    }
};

struct VPolytope {
    std::vector<Vec> gens;

    VPolytope() = default;
    explicit VPolytope(std::vector<Vec> g) : gens(std::move(g)) {
        if (gens.empty()) throw invalid_input("vpolytope needs at least one generator");
        for (const auto& p : gens)
            if (p.size() != gens.front().size())
                throw dimension_mismatch("vpolytope generators of mixed dimension");
    }

    std::size_t dim() const { return gens.front().size(); }

    bool has_duplicate_gens() const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (gens[i] == gens[j]) return true;
        return false;
    }

    VPolytope deduped() const {
        std::vector<Vec> out;
        for (const auto& p : gens) {
            bool seen = false;
            for (const auto& q : out)
                if (p == q) {
                    seen = true;
                    break;
                }
            if (!seen) out.push_back(p);
        }
        return VPolytope(std::move(out));
    }
};

struct HPolyhedron {
    std::size_t dim = 0;
    std::vector<Halfspace> constraints;

    HPolyhedron() = default;
    HPolyhedron(std::size_t d, std::vector<Halfspace> cs) : dim(d), constraints(std::move(cs)) {
        for (const auto& h : constraints) {
            if (h.normal.size() != dim) throw dimension_mismatch("hpolyhedron constraint dimension");
            if (h.strict) throw invalid_input("hpolyhedron stores closed halfspaces only");
        }
    }

    bool contains(const Vec& x) const {
        for (const auto& h : constraints)
            if (!h.contains(x)) return false;
        return true;
    }

    std::size_t facet_count() const { return constraints.size(); }
};

// Witness of strict separation: A in {n.x <= c - m}, B in {n.x >= c + m}.
struct SeparationWitness {
    Vec normal;
    Rat offset;
    Rat margin;

    bool separates(const VPolytope& a, const VPolytope& b) const {
        for (const auto& p : a.gens)
            if (!(dot(normal, p) <= offset - margin)) return false;
        for (const auto& p : b.gens)
            if (!(dot(normal, p) >= offset + margin)) return false;
        return margin > 0;
    }
};

namespace detail {

// Adds the convex-combination block for `pts` tied to the ambient point
// variables `xvars`; returns the alpha variable indices.
inline std::vector<int> add_hull_block(LpProblem& lp, std::span<const Vec> pts,
                                       const std::vector<int>& xvars) {
    std::vector<int> alphas;
    alphas.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) alphas.push_back(lp.add_var(true));
    for (std::size_t d = 0; d < xvars.size(); ++d) {
        std::vector<LpTerm> terms;
        for (std::size_t i = 0; i < pts.size(); ++i) terms.push_back({alphas[i], pts[i][d]});
        terms.push_back({xvars[d], Rat(-1)});
        lp.add_constraint(std::move(terms), Rel::eq, Rat(0));
    }
    std::vector<LpTerm> ones;
    for (int a : alphas) ones.push_back({a, Rat(1)});
    lp.add_constraint(std::move(ones), Rel::eq, Rat(1));
    return alphas;
}

inline bool membership_lp(const Vec& q, std::span<const Vec> pts) {
    if (pts.empty()) return false;
    LpProblem lp;
    std::vector<int> alphas;
    for (std::size_t i = 0; i < pts.size(); ++i) alphas.push_back(lp.add_var(true));
    for (std::size_t d = 0; d < q.size(); ++d) {
        std::vector<LpTerm> terms;
        for (std::size_t i = 0; i < pts.size(); ++i) terms.push_back({alphas[i], pts[i][d]});
        lp.add_constraint(std::move(terms), Rel::eq, q[d]);
    }
    std::vector<LpTerm> ones;
    for (int a : alphas) ones.push_back({a, Rat(1)});
    lp.add_constraint(std::move(ones), Rel::eq, Rat(1));
    return lp.solve().ok();
}

}  // namespace detail

// q in Conv(V.gens), decided exactly (no tolerance).
inline bool hull_membership(const Vec& q, const VPolytope& v) {
    if (q.size() != v.dim()) throw dimension_mismatch("hull_membership: dimension mismatch");
    return detail::membership_lp(q, v.gens);
}

struct HullsResult {
    bool intersects = false;
    std::optional<Vec> common;
    std::optional<SeparationWitness> witness;
};

struct MultiHullsResult {
    bool intersects = false;
    std::optional<Vec> common;
};

// Emptiness of an intersection of vertex hulls, via one LP with a shared
// ambient point and one convex-combination block per hull.
inline MultiHullsResult multi_hulls_intersect(std::span<const VPolytope> vs) {
    if (vs.size() < 2) throw invalid_input("multi_hulls_intersect needs >= 2 polytopes");
    const std::size_t d = vs.front().dim();
    for (const auto& v : vs)
        if (v.dim() != d) throw dimension_mismatch("multi_hulls_intersect: dimension mismatch");
    LpProblem lp;
    std::vector<int> xvars;
    for (std::size_t k = 0; k < d; ++k) xvars.push_back(lp.add_var(false));
    for (const auto& v : vs) detail::add_hull_block(lp, v.gens, xvars);
    auto res = lp.solve();
    MultiHullsResult out;
    out.intersects = res.ok();
    if (out.intersects) {
        Vec x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = res.values[static_cast<std::size_t>(xvars[k])];
        out.common = std::move(x);
    }
    return out;
}

// Disjointness of two compact hulls is certified by a strictly separating
// hyperplane; that hyperplane is found by maximizing the separation gap
// subject to a sup-norm box on the normal and reporting the midpoint.
inline HullsResult hulls_intersect(const VPolytope& a_in, const VPolytope& b_in) {
    if (a_in.dim() != b_in.dim()) throw dimension_mismatch("hulls_intersect: dimension mismatch");
    VPolytope a = a_in.deduped();
    VPolytope b = b_in.deduped();
    const std::size_t d = a.dim();

    HullsResult out;
    {
        std::vector<VPolytope> pair{a, b};
        auto m = multi_hulls_intersect(pair);
        if (m.intersects) {
            out.intersects = true;
            out.common = std::move(m.common);
            return out;
        }
    }

    // Two stages keep the witness canonical: first maximize the gap, then,
    // at the optimal gap, minimize the l1 norm of the normal (the gap LP
    // has degenerate optimal faces whenever a coordinate of the normal is
    // free to wiggle).
    auto build = [&](LpProblem& lp, std::vector<int>& w, int& ta, int& tb) {
        for (std::size_t k = 0; k < d; ++k) w.push_back(lp.add_var(false));
        ta = lp.add_var(false);
        tb = lp.add_var(false);
        for (const auto& p : a.gens) {
            std::vector<LpTerm> terms;
            for (std::size_t k = 0; k < d; ++k) terms.push_back({w[k], p[k]});
            terms.push_back({ta, Rat(-1)});
            lp.add_constraint(std::move(terms), Rel::le, Rat(0));  // w.p <= ta
        }
        for (const auto& p : b.gens) {
            std::vector<LpTerm> terms;
            for (std::size_t k = 0; k < d; ++k) terms.push_back({w[k], p[k]});
            terms.push_back({tb, Rat(-1)});
            lp.add_constraint(std::move(terms), Rel::ge, Rat(0));  // w.p >= tb
        }
        for (std::size_t k = 0; k < d; ++k) {
            lp.add_constraint({{w[k], Rat(1)}}, Rel::le, Rat(1));
            lp.add_constraint({{w[k], Rat(1)}}, Rel::ge, Rat(-1));
        }
    };
    Rat gap;
    {
        LpProblem lp;
        std::vector<int> w;
        int ta, tb;
        build(lp, w, ta, tb);
        lp.maximize({{tb, Rat(1)}, {ta, Rat(-1)}});
        auto res = lp.solve();
        if (!res.ok() || res.objective <= 0)
            throw invalid_input("hulls_intersect: separation LP failed on disjoint hulls");
        gap = res.objective;
    }
    LpProblem lp;
    std::vector<int> w;
    int ta, tb;
    build(lp, w, ta, tb);
    lp.add_constraint({{tb, Rat(1)}, {ta, Rat(-1)}}, Rel::eq, gap);
    std::vector<int> s;
    std::vector<LpTerm> l1;
    for (std::size_t k = 0; k < d; ++k) {
        int sk = lp.add_var(true);
        lp.add_constraint({{sk, Rat(1)}, {w[k], Rat(-1)}}, Rel::ge, Rat(0));
        lp.add_constraint({{sk, Rat(1)}, {w[k], Rat(1)}}, Rel::ge, Rat(0));
        l1.push_back({sk, Rat(1)});
        s.push_back(sk);
    }
    lp.minimize(std::move(l1));
    auto res = lp.solve();
    if (!res.ok()) throw invalid_input("hulls_intersect: witness normalization LP failed");
    SeparationWitness wit;
    wit.normal.resize(d);
    for (std::size_t k = 0; k < d; ++k) wit.normal[k] = res.values[static_cast<std::size_t>(w[k])];
    Rat va = res.values[static_cast<std::size_t>(ta)];
    Rat vb = res.values[static_cast<std::size_t>(tb)];
    wit.offset = (va + vb) / 2;
    wit.margin = (vb - va) / 2;
    out.witness = std::move(wit);
    return out;
}

inline bool hpoly_empty(const HPolyhedron& h) {
    LpProblem lp;
    std::vector<int> x;
    for (std::size_t k = 0; k < h.dim; ++k) x.push_back(lp.add_var(false));
    for (const auto& c : h.constraints) {
        std::vector<LpTerm> terms;
        for (std::size_t k = 0; k < h.dim; ++k)
            if (c.normal[k] != 0) terms.push_back({x[k], c.normal[k]});
        lp.add_constraint(std::move(terms), Rel::ge, c.offset);
    }
    return !lp.solve().ok();
}

// A point of {x : Ax > b}, when one exists. Since a nonempty strict system
// is exactly the interior of the closed system, this doubles as the
// interior-point oracle.
inline std::optional<Vec> hpoly_interior_point(const HPolyhedron& h) {
    LpProblem lp;
    std::vector<int> x;
    for (std::size_t k = 0; k < h.dim; ++k) x.push_back(lp.add_var(false));
    int t = lp.add_var(true);
    for (const auto& c : h.constraints) {
        std::vector<LpTerm> terms;
        for (std::size_t k = 0; k < h.dim; ++k)
            if (c.normal[k] != 0) terms.push_back({x[k], c.normal[k]});
        terms.push_back({t, -l1_norm(c.normal)});
        lp.add_constraint(std::move(terms), Rel::ge, c.offset);
    }
    lp.add_constraint({{t, Rat(1)}}, Rel::le, Rat(1));
    lp.maximize({{t, Rat(1)}});
    auto res = lp.solve();
    if (!res.ok() || res.objective <= 0) return std::nullopt;
    Vec p(h.dim);
    for (std::size_t k = 0; k < h.dim; ++k) p[k] = res.values[static_cast<std::size_t>(x[k])];
    return p;
}

// Open interiors of two closed H-polyhedra meet?
inline bool hpoly_interiors_intersect(const HPolyhedron& a, const HPolyhedron& b) {
    if (a.dim != b.dim) throw dimension_mismatch("hpoly_interiors_intersect: dimension mismatch");
    HPolyhedron joint(a.dim, {});
    joint.constraints = a.constraints;
    joint.constraints.insert(joint.constraints.end(), b.constraints.begin(), b.constraints.end());
    return hpoly_interior_point(joint).has_value();
}

namespace detail {

inline Halfspace canonical_halfspace(const Halfspace& h) {
    Rat scale;
    for (const auto& c : h.normal)
        if (c != 0) {
            scale = rat_abs(c);
            break;
        }
    Halfspace out = h;
    for (auto& c : out.normal) c /= scale;
    out.offset /= scale;
    return out;
}

}  // namespace detail

// Equivalent H-rep in which every remaining constraint is irredundant
// (facet-defining for full-dimensional polyhedra). Classic sequential LP
// redundancy elimination; order-deterministic.
inline HPolyhedron facet_irredundant(const HPolyhedron& h) {
    if (hpoly_empty(h)) throw invalid_input("facet_irredundant: empty polyhedron");
    std::vector<Halfspace> cs;
    for (const auto& c : h.constraints) {
        Halfspace canon = detail::canonical_halfspace(c);
        bool merged = false;
        for (auto& kept : cs) {
            if (kept.normal == canon.normal) {
                if (canon.offset > kept.offset) kept.offset = canon.offset;
                merged = true;
                break;
            }
        }
        if (!merged) cs.push_back(std::move(canon));
    }
    std::vector<bool> alive(cs.size(), true);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        LpProblem lp;
        std::vector<int> x;
        for (std::size_t k = 0; k < h.dim; ++k) x.push_back(lp.add_var(false));
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (j == i || !alive[j]) continue;
            std::vector<LpTerm> terms;
            for (std::size_t k = 0; k < h.dim; ++k)
                if (cs[j].normal[k] != 0) terms.push_back({x[k], cs[j].normal[k]});
            lp.add_constraint(std::move(terms), Rel::ge, cs[j].offset);
        }
        std::vector<LpTerm> objective;
        for (std::size_t k = 0; k < h.dim; ++k)
            if (cs[i].normal[k] != 0) objective.push_back({x[k], cs[i].normal[k]});
        lp.minimize(std::move(objective));
        auto res = lp.solve();
        if (res.status == LpStatus::optimal && res.objective >= cs[i].offset) alive[i] = false;
    }
    std::vector<Halfspace> kept;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (alive[i]) kept.push_back(cs[i]);
    return HPolyhedron(h.dim, std::move(kept));
}

struct ConvexPositionResult {
    bool in_convex_position = false;
    std::optional<std::size_t> violator;  // smallest violating index
};

inline ConvexPositionResult convex_position(std::span<const Vec> points) {
    if (points.empty()) throw invalid_input("convex_position needs at least one point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> rest;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) rest.push_back(points[j]);
        if (detail::membership_lp(points[i], rest)) return {false, i};
    }
    return {true, std::nullopt};
}

// Conv(gens) further intersected with affine equalities and halfspace cuts.
// This is the working representation for hyperplane slices: downstream
// operations never need an explicit vertex description of the slice.
struct Body {
    VPolytope poly;
    std::vector<std::pair<Vec, Rat>> eqs;   // a.x = b
    std::vector<std::pair<Vec, Rat>> cuts;  // a.x >= b

    explicit Body(VPolytope p) : poly(std::move(p)) {}
};

inline MultiHullsResult bodies_intersect(std::span<const Body> bodies) {
    if (bodies.empty()) throw invalid_input("bodies_intersect needs >= 1 body");
    const std::size_t d = bodies.front().poly.dim();
    LpProblem lp;
    std::vector<int> xvars;
    for (std::size_t k = 0; k < d; ++k) xvars.push_back(lp.add_var(false));
    for (const auto& b : bodies) {
        if (b.poly.dim() != d) throw dimension_mismatch("bodies_intersect: dimension mismatch");
        detail::add_hull_block(lp, b.poly.gens, xvars);
        for (const auto& [n, off] : b.eqs) {
            std::vector<LpTerm> terms;
            for (std::size_t k = 0; k < d; ++k)
                if (n[k] != 0) terms.push_back({xvars[k], n[k]});
            lp.add_constraint(std::move(terms), Rel::eq, off);
        }
        for (const auto& [n, off] : b.cuts) {
            std::vector<LpTerm> terms;
            for (std::size_t k = 0; k < d; ++k)
                if (n[k] != 0) terms.push_back({xvars[k], n[k]});
            lp.add_constraint(std::move(terms), Rel::ge, off);
        }
    }
    auto res = lp.solve();
    MultiHullsResult out;
    out.intersects = res.ok();
    if (out.intersects) {
        Vec x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = res.values[static_cast<std::size_t>(xvars[k])];
        out.common = std::move(x);
    }
    return out;
}

inline bool body_empty(const Body& b) {
    std::vector<Body> one{b};
    return !bodies_intersect(one).intersects;
}

// Max-margin strict separation of two nonempty, disjoint bodies. The
// suprema over each body are bounded through LP duality, so the whole
// search is a single exact LP even though the bodies are hull slices
// without an explicit vertex description. Returns nullopt when no positive
// margin exists (bodies touch or overlap).
inline std::optional<SeparationWitness> separate_bodies(const Body& a, const Body& b) {
    const std::size_t d = a.poly.dim();
    if (b.poly.dim() != d) throw dimension_mismatch("separate_bodies: dimension mismatch");
    LpProblem lp;
    std::vector<int> w;
    for (std::size_t k = 0; k < d; ++k) w.push_back(lp.add_var(false));
    int c = lp.add_var(false);
    int t = lp.add_var(true);
    lp.add_constraint({{t, Rat(1)}}, Rel::le, Rat(1));

    auto add_side = [&](const Body& body, bool upper) {
        // upper: sup_{x in body} w.x <= c - t ; else inf >= c + t
        int u = lp.add_var(false);
        std::vector<int> lambda, mu;
        for (std::size_t e = 0; e < body.eqs.size(); ++e) lambda.push_back(lp.add_var(false));
        for (std::size_t g = 0; g < body.cuts.size(); ++g) mu.push_back(lp.add_var(true));
        for (const auto& v : body.poly.gens) {
            std::vector<LpTerm> terms{{u, Rat(1)}};
            for (std::size_t e = 0; e < body.eqs.size(); ++e)
                terms.push_back({lambda[e], dot(body.eqs[e].first, v)});
            for (std::size_t g = 0; g < body.cuts.size(); ++g) {
                Rat coef = dot(body.cuts[g].first, v);
                terms.push_back({mu[g], upper ? Rat(-coef) : coef});
            }
            for (std::size_t k = 0; k < d; ++k)
                if (v[k] != 0) terms.push_back({w[k], -v[k]});
            lp.add_constraint(std::move(terms), upper ? Rel::ge : Rel::le, Rat(0));
        }
        std::vector<LpTerm> bound{{u, Rat(1)}};
        for (std::size_t e = 0; e < body.eqs.size(); ++e)
            bound.push_back({lambda[e], body.eqs[e].second});
        for (std::size_t g = 0; g < body.cuts.size(); ++g)
            bound.push_back({mu[g], upper ? Rat(-body.cuts[g].second) : body.cuts[g].second});
        bound.push_back({c, Rat(-1)});
        bound.push_back({t, upper ? Rat(1) : Rat(-1)});
        lp.add_constraint(std::move(bound), upper ? Rel::le : Rel::ge, Rat(0));
    };
    add_side(a, true);
    add_side(b, false);
    for (std::size_t k = 0; k < d; ++k) {
        lp.add_constraint({{w[k], Rat(1)}}, Rel::le, Rat(1));
        lp.add_constraint({{w[k], Rat(1)}}, Rel::ge, Rat(-1));
    }
    lp.maximize({{t, Rat(1)}});
    auto res = lp.solve();
    if (!res.ok() || res.objective <= 0) return std::nullopt;
    SeparationWitness wit;
    wit.normal.resize(d);
    for (std::size_t k = 0; k < d; ++k) wit.normal[k] = res.values[static_cast<std::size_t>(w[k])];
    wit.offset = res.values[static_cast<std::size_t>(c)];
    wit.margin = res.objective;
    return wit;
}

// Max-margin separation of a plain hull A from a region given as the
// intersection of hulls and halfspace cuts (A on the low side). The region
// side is bounded through duality as in separate_bodies. Region must be
// nonempty and disjoint from Conv(A).
inline std::optional<SeparationWitness> separate_from_region(const VPolytope& a,
                                                             std::span<const VPolytope> hulls,
                                                             std::span<const Halfspace> cuts) {
    const std::size_t d = a.dim();
    LpProblem lp;
    std::vector<int> w;
    for (std::size_t k = 0; k < d; ++k) w.push_back(lp.add_var(false));
    int c = lp.add_var(false);
    int t = lp.add_var(true);
    lp.add_constraint({{t, Rat(1)}}, Rel::le, Rat(1));

    for (const auto& p : a.gens) {
        std::vector<LpTerm> terms;
        for (std::size_t k = 0; k < d; ++k)
            if (p[k] != 0) terms.push_back({w[k], p[k]});
        terms.push_back({c, Rat(-1)});
        terms.push_back({t, Rat(1)});
        lp.add_constraint(std::move(terms), Rel::le, Rat(0));  // w.p <= c - t
    }

    // duals: per hull j a block (u_j, lambda_j in R^d), per cut a nu >= 0
    std::vector<int> us;
    std::vector<std::vector<int>> lambdas;
    for (std::size_t j = 0; j < hulls.size(); ++j) {
        if (hulls[j].dim() != d) throw dimension_mismatch("separate_from_region: dimension mismatch");
        us.push_back(lp.add_var(false));
        std::vector<int> lj;
        for (std::size_t k = 0; k < d; ++k) lj.push_back(lp.add_var(false));
        lambdas.push_back(std::move(lj));
    }
    std::vector<int> nus;
    for (std::size_t g = 0; g < cuts.size(); ++g) nus.push_back(lp.add_var(true));

    // stationarity in the shared region point: -sum_j lambda_j + sum_g nu_g a_g = w
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<LpTerm> terms;
        for (std::size_t j = 0; j < hulls.size(); ++j) terms.push_back({lambdas[j][k], Rat(-1)});
        for (std::size_t g = 0; g < cuts.size(); ++g)
            if (cuts[g].normal[k] != 0) terms.push_back({nus[g], cuts[g].normal[k]});
        terms.push_back({w[k], Rat(-1)});
        lp.add_constraint(std::move(terms), Rel::eq, Rat(0));
    }
    for (std::size_t j = 0; j < hulls.size(); ++j)
        for (const auto& v : hulls[j].gens) {
            std::vector<LpTerm> terms{{us[j], Rat(1)}};
            for (std::size_t k = 0; k < d; ++k)
                if (v[k] != 0) terms.push_back({lambdas[j][k], v[k]});
            lp.add_constraint(std::move(terms), Rel::le, Rat(0));
        }
    // weak duality bound: sum_j u_j + sum_g nu_g b_g >= c + t
    std::vector<LpTerm> bound;
    for (std::size_t j = 0; j < hulls.size(); ++j) bound.push_back({us[j], Rat(1)});
    for (std::size_t g = 0; g < cuts.size(); ++g) bound.push_back({nus[g], cuts[g].offset});
    bound.push_back({c, Rat(-1)});
    bound.push_back({t, Rat(-1)});
    lp.add_constraint(std::move(bound), Rel::ge, Rat(0));

    for (std::size_t k = 0; k < d; ++k) {
        lp.add_constraint({{w[k], Rat(1)}}, Rel::le, Rat(1));
        lp.add_constraint({{w[k], Rat(1)}}, Rel::ge, Rat(-1));
    }
    lp.maximize({{t, Rat(1)}});
    auto res = lp.solve();
    if (!res.ok() || res.objective <= 0) return std::nullopt;
    SeparationWitness wit;
    wit.normal.resize(d);
    for (std::size_t k = 0; k < d; ++k) wit.normal[k] = res.values[static_cast<std::size_t>(w[k])];
    wit.offset = res.values[static_cast<std::size_t>(c)];
    wit.margin = res.objective;
    return wit;
}

}  // namespace scallop
