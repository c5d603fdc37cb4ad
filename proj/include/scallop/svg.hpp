#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "scallop/containers.hpp"
#include "scallop/separating.hpp"

namespace scallop {

// Deterministic SVG emission. Coordinates are rendered in decimal at 12
// significant digits for display only; persisted JSON stays exact.

namespace svg_detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);  // avoid "-0"
    return buf;
}

inline std::string num(const Rat& v) { return num(rat_to_double(v)); }

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
                                   "#aec7e8", "#98df8a"};
    return colors[i % 12];
}

struct Bounds {
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    void grow(double x, double y) {
        if (first) {
            min_x = max_x = x;
            min_y = max_y = y;
            first = false;
        } else {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
};

inline std::string document(const Bounds& b, const std::string& body, double pad) {
    std::ostringstream out;
    double w = b.max_x - b.min_x + 2 * pad, h = b.max_y - b.min_y + 2 * pad;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.min_x - pad) << " "
        << num(-(b.max_y + pad)) << " " << num(w) << " " << num(h) << "\">\n"
        << body << "</svg>\n";
    return out.str();
}

// SVG y grows downward; emit with y negated
inline std::string pt(const Vec& p) { return num(p[0]) + "," + num(-rat_to_double(p[1])); }

inline std::string polygon(const std::vector<Vec>& pts, const std::string& color, bool fill) {
    std::ostringstream out;
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " " : "") << pt(pts[i]);
    out << "\" stroke=\"" << color << "\" stroke-width=\"0.5%\" fill=\"" << (fill ? color : "none")
        << "\" fill-opacity=\"" << (fill ? "0.15" : "0") << "\"/>\n";
    return out.str();
}

// convex-order the generators (for display only)
inline std::vector<Vec> hull_order(std::vector<Vec> pts) {
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += rat_to_double(p[0]);
        cy += rat_to_double(p[1]);
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(rat_to_double(a[1]) - cy, rat_to_double(a[0]) - cx) <
               std::atan2(rat_to_double(b[1]) - cy, rat_to_double(b[0]) - cx);
    });
    return pts;
}

}  // namespace svg_detail

// The scalloped figure: dashed circular arcs spanning each polygon side,
// the selected points, and, when a partition is given, the row hulls of
// part 1 and the column-group hulls of part 2.
inline std::string render_grid_svg(const PointGrid& g, const GridIndexSet* part1 = nullptr,
                                   const GridIndexSet* part2 = nullptr) {
    using namespace svg_detail;
    std::ostringstream body;
    Bounds bounds;
    const double r = rat_to_double(g.radius);
    const double m = rat_to_double(g.params.M);
    const double span = M_PI / static_cast<double>(g.s) * 0.92;

    for (long k = 0; k < g.s; ++k) {
        const Vec& c = g.centers[static_cast<std::size_t>(k)];
        double cx = rat_to_double(c[0]), cy = rat_to_double(c[1]);
        double base = std::atan2(-cy, -cx);  // inward direction
        double a0 = base - span, a1 = base + span;
        double x0 = cx + r * std::cos(a0), y0 = cy + r * std::sin(a0);
        double x1 = cx + r * std::cos(a1), y1 = cy + r * std::sin(a1);
        bounds.grow(x0, y0);
        bounds.grow(x1, y1);
        // minor arc, swept so it faces the origin; y axis flipped
        body << "<path d=\"M " << num(x0) << " " << num(-y0) << " A " << num(r) << " " << num(r)
             << " 0 0 1 " << num(x1) << " " << num(-y1)
             << "\" stroke=\"#444\" stroke-width=\"0.4%\" stroke-dasharray=\"2,1.2\" fill=\"none\"/>\n";
        double u = m - r;  // distance of the arc midpoint from the origin
        bounds.grow(u * std::cos(base + M_PI), u * std::sin(base + M_PI));
    }
    if (part1 && part2) {
        auto containers = build_planar_containers(g, *part1, *part2);
        for (std::size_t i = 0; i < containers.rows.size(); ++i)
            if (containers.rows[i] && containers.rows[i]->gens.size() >= 2)
                body << polygon(hull_order(containers.rows[i]->gens), palette(i), true);
        for (std::size_t j = 0; j < containers.col_groups.size(); ++j)
            if (containers.col_groups[j] && containers.col_groups[j]->gens.size() >= 2)
                body << polygon(hull_order(containers.col_groups[j]->gens), palette(6 + j), true);
    }
    double dot = 2.0 * m / 300.0;
    for (long i = 0; i < g.s; ++i)
        for (long j = 0; j < g.cols; ++j) {
            const Vec& p = g.at(i, j);
            bounds.grow(rat_to_double(p[0]), rat_to_double(p[1]));
            body << "<circle cx=\"" << num(p[0]) << "\" cy=\"" << num(-rat_to_double(p[1]))
                 << "\" r=\"" << num(dot) << "\" fill=\"black\"/>\n";
        }
    return document(bounds, body.str(), m / 10.0);
}

// Separating system with its incidence points and, optionally, the
// auxiliary-graph drawing overlay. Unbounded polyhedra are clipped to the
// display box.
inline std::string render_system_svg(const SeparatingSystem& s, const DisjointFamily& fam,
                                     const std::vector<IncidenceRecord>& inc,
                                     const AuxiliaryGraph* graph = nullptr) {
    using namespace svg_detail;
    Bounds bounds;
    for (const auto& set : fam.sets)
        for (const auto& gpt : set.gens) bounds.grow(rat_to_double(gpt[0]), rat_to_double(gpt[1]));
    if (graph)
        for (const auto& a : graph->anchors) bounds.grow(rat_to_double(a[0]), rat_to_double(a[1]));
    for (const auto& r : inc) {
        Vec y = r.rep_point();
        bounds.grow(rat_to_double(y[0]), rat_to_double(y[1]));
    }
    double pad = std::max(3.0, (bounds.max_x - bounds.min_x) * 0.2);
    Rat bx0 = rat(static_cast<long>(std::floor(bounds.min_x - pad)));
    Rat bx1 = rat(static_cast<long>(std::ceil(bounds.max_x + pad)));
    Rat by0 = rat(static_cast<long>(std::floor(bounds.min_y - pad)));
    Rat by1 = rat(static_cast<long>(std::ceil(bounds.max_y + pad)));

    std::ostringstream body;
    for (std::size_t i = 0; i < s.polys.size(); ++i) {
        // clip to the display box, then enumerate vertices from constraint pairs
        std::vector<Halfspace> cs = s.polys[i].constraints;
        cs.push_back(Halfspace({rat(1), rat(0)}, bx0));
        cs.push_back(Halfspace({rat(-1), rat(0)}, -bx1));
        cs.push_back(Halfspace({rat(0), rat(1)}, by0));
        cs.push_back(Halfspace({rat(0), rat(-1)}, -by1));
        std::vector<Vec> verts;
        for (std::size_t a = 0; a < cs.size(); ++a)
            for (std::size_t b = a + 1; b < cs.size(); ++b) {
                Rat det = cross2(cs[a].normal, cs[b].normal);
                if (det == 0) continue;
                Vec x{(cs[a].offset * cs[b].normal[1] - cs[b].offset * cs[a].normal[1]) / det,
                      (cs[a].normal[0] * cs[b].offset - cs[b].normal[0] * cs[a].offset) / det};
                bool feasible = true;
                for (const auto& c : cs)
                    if (dot(c.normal, x) < c.offset) {
                        feasible = false;
                        break;
                    }
                if (feasible) {
                    bool dup = false;
                    for (const auto& v : verts) dup = dup || v == x;
                    if (!dup) verts.push_back(std::move(x));
                }
            }
        if (verts.size() >= 3) body << polygon(hull_order(verts), palette(i), true);
        for (const auto& gpt : fam.sets[i].gens)
            body << "<circle cx=\"" << num(gpt[0]) << "\" cy=\"" << num(-rat_to_double(gpt[1]))
                 << "\" r=\"0.45%\" fill=\"" << palette(i) << "\"/>\n";
    }
    for (const auto& r : inc) {
        Vec y = r.rep_point();
        body << "<circle cx=\"" << num(y[0]) << "\" cy=\"" << num(-rat_to_double(y[1]))
             << "\" r=\"0.5%\" fill=\"black\"/>\n"
             << "<text x=\"" << num(y[0]) << "\" y=\"" << num(-rat_to_double(y[1]) - 0.4)
             << "\" font-size=\"3%\">y" << r.i + 1 << "," << r.j + 1 << "</text>\n";
    }
    if (graph) {
        for (const auto& e : graph->edges) {
            const Vec& xi = graph->anchors[static_cast<std::size_t>(e.i)];
            const Vec& xj = graph->anchors[static_cast<std::size_t>(e.j)];
            body << "<polyline points=\"" << pt(xi) << " " << pt(e.y) << " " << pt(xj)
                 << "\" stroke=\"black\" stroke-width=\"0.3%\" fill=\"none\"/>\n";
        }
        for (std::size_t i = 0; i < graph->anchors.size(); ++i) {
            const Vec& a = graph->anchors[i];
            body << "<circle cx=\"" << num(a[0]) << "\" cy=\"" << num(-rat_to_double(a[1]))
                 << "\" r=\"0.55%\" fill=\"black\"/>\n"
                 << "<text x=\"" << num(a[0]) << "\" y=\"" << num(-rat_to_double(a[1]) - 0.5)
                 << "\" font-size=\"3%\">x" << i + 1 << "</text>\n";
        }
    }
    Bounds display;
    display.grow(rat_to_double(bx0), rat_to_double(by0));
    display.grow(rat_to_double(bx1), rat_to_double(by1));
    return document(display, body.str(), 1.0);
}

}  // namespace scallop
