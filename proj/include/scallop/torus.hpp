#pragma once

#include <map>

#include "scallop/scalloped.hpp"

namespace scallop {

// Product witness: planar grid coordinates in the first R^2 block, regular
// s-gon vertices in the remaining r-2 blocks. Points are indexed by tuples
// in [s]^r, stored in lexicographic order of (i1, ..., ir).
struct TorusWitness {
    long s = 0;
    long r = 0;
    std::size_t dim = 0;  // 2r - 2
    PointGrid base;
    std::vector<Vec> torus_vertices;  // s rational approximations of the s-gon
    std::vector<Vec> points;          // s^r points, lexicographic tuple order

    long tuple_count() const {
        long n = 1;
        for (long i = 0; i < r; ++i) n *= s;
        return n;
    }

    long rank_of(const std::vector<long>& tuple) const {
        long rank = 0;
        for (long v : tuple) rank = rank * s + v;
        return rank;
    }

    std::vector<long> tuple_of(long rank) const {
        std::vector<long> t(static_cast<std::size_t>(r));
        for (long i = r - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = rank % s;
            rank /= s;
        }
        return t;
    }

    const Vec& point_at(const std::vector<long>& tuple) const {
        return points[static_cast<std::size_t>(rank_of(tuple))];
    }

    Json to_json() const {
        Json verts = Json::array();
        for (const auto& u : torus_vertices) verts.push_back(scallop::to_json(u));
        Json pts = Json::array();
        for (long rank = 0; rank < tuple_count(); ++rank) {
            Json idx = Json::array();
            for (long v : tuple_of(rank)) idx.push_back(v + 1);
            pts.push_back(Json{{"index", idx}, {"point", scallop::to_json(points[static_cast<std::size_t>(rank)])}});
        }
        return Json{{"schema", "v1"}, {"s", s},      {"r", r},
                    {"dim", dim},     {"base", base.to_json()}, {"torus_vertices", verts},
                    {"points", pts}};
    }

    static TorusWitness from_json(const Json& j) {
        TorusWitness w;
        w.s = j.at("s").get<long>();
        w.r = j.at("r").get<long>();
        w.dim = j.at("dim").get<std::size_t>();
        w.base = PointGrid::from_json(j.at("base"));
        for (const auto& u : j.at("torus_vertices")) w.torus_vertices.push_back(vec_from_json(u));
        w.points.resize(static_cast<std::size_t>(w.tuple_count()));
        for (const auto& e : j.at("points")) {
            std::vector<long> tuple;
            for (const auto& v : e.at("index")) tuple.push_back(v.get<long>() - 1);
            w.points[static_cast<std::size_t>(w.rank_of(tuple))] = vec_from_json(e.at("point"));
        }
        return w;
    }

    std::string hash() const { return json_hash(to_json()); }
};

inline TorusWitness generate_torus(long s, long r, long precision_bits = 128) {
    if (s < 2 || r < 2) throw invalid_input("generate_torus requires s >= 2 and r >= 2");
    TorusWitness w;
    w.s = s;
    w.r = r;
    w.dim = static_cast<std::size_t>(2 * r - 2);
    w.base = generate_scalloped(choose_params(s, precision_bits, s));

    for (long k = 1; k <= s; ++k) {
        Rat rho = rat(2 * k, s);  // angle 2 pi k / s as a multiple of pi
        auto [ux, uy] = rational_unit_vector(rho, precision_bits);
        w.torus_vertices.push_back(Vec{ux, uy});
    }
    for (std::size_t i = 0; i < w.torus_vertices.size(); ++i)
        for (std::size_t j = i + 1; j < w.torus_vertices.size(); ++j)
            if (w.torus_vertices[i] == w.torus_vertices[j])
                throw invalid_input("generate_torus: coincident torus vertices; retry with more bits");
    if (!convex_position(w.torus_vertices).in_convex_position)
        throw invalid_input("generate_torus: torus vertices not in convex position");

    const long n = w.tuple_count();
    w.points.reserve(static_cast<std::size_t>(n));
    for (long rank = 0; rank < n; ++rank) {
        auto tuple = w.tuple_of(rank);
        Vec p = w.base.at(tuple[0], tuple[1]);
        for (long f = 2; f < r; ++f) {
            const Vec& u = w.torus_vertices[static_cast<std::size_t>(tuple[static_cast<std::size_t>(f)])];
            p.push_back(u[0]);
            p.push_back(u[1]);
        }
        w.points.push_back(std::move(p));
    }
    return w;
}

}  // namespace scallop
