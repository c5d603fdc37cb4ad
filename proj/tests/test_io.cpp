#include <catch2/catch_amalgamated.hpp>

#include "scallop/scallop.hpp"

using namespace scallop;

TEST_CASE("rationals serialize as p/q strings, never floats") {
    auto g = generate_scalloped(choose_params(3));
    auto j = g.to_json();
    CHECK(j.at("schema") == "v1");
    CHECK(j.at("radius").is_string());
    for (const auto& row : j.at("points"))
        for (const auto& p : row)
            for (const auto& coord : p) {
                CHECK(coord.is_string());
                CHECK(coord.get<std::string>().find('.') == std::string::npos);
            }
    // round trip preserves exact values
    auto back = PointGrid::from_json(j);
    for (long i = 0; i < 3; ++i)
        for (long jj = 0; jj < 3; ++jj) CHECK(back.at(i, jj) == g.at(i, jj));
}

TEST_CASE("halfspace and polytope json round trips") {
    Halfspace h({rat(2, 3), rat(-1)}, rat(5, 7));
    auto h2 = halfspace_from_json(to_json(h));
    CHECK(h2.normal == h.normal);
    CHECK(h2.offset == h.offset);

    VPolytope v({{rat(0), rat(0)}, {rat(1, 2), rat(-3, 4)}});
    auto v2 = vpolytope_from_json(to_json(v));
    CHECK(v2.gens == v.gens);

    HPolyhedron p(2, {h});
    auto p2 = hpolyhedron_from_json(to_json(p));
    CHECK(p2.dim == 2);
    CHECK(p2.constraints.size() == 1);
}

TEST_CASE("certificate reports carry the fail-iff-counterexample invariant") {
    auto g = generate_scalloped(choose_params(2));
    auto rep = certify_planar_witness(g);
    auto j = rep.to_json();
    CHECK(j.at("schema") == "v1");
    CHECK(j.at("status") == "pass");
    CHECK(j.at("counterexample").is_null());
    CHECK(j.at("input_hash").get<std::string>().size() == 16);
}

TEST_CASE("svg output is deterministic and decimal-only") {
    auto g = generate_scalloped(choose_params(4));
    auto svg1 = render_grid_svg(g);
    auto svg2 = render_grid_svg(g);
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<svg") == 0);
    CHECK(svg1.find("dasharray") != std::string::npos);
    // one dashed arc per row, one dot per point
    std::size_t arcs = 0, dots = 0;
    for (std::size_t pos = 0; (pos = svg1.find("<path", pos)) != std::string::npos; ++pos) ++arcs;
    for (std::size_t pos = 0; (pos = svg1.find("<circle", pos)) != std::string::npos; ++pos) ++dots;
    CHECK(arcs == 4);
    CHECK(dots == 16);
}

TEST_CASE("partitioned grid svg colors hulls") {
    auto g = generate_scalloped(choose_params(3));
    GridIndexSet p1, p2;
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) ((i + j) % 2 == 0 ? p1 : p2).insert({i, j});
    auto svg = render_grid_svg(g, &p1, &p2);
    CHECK(svg.find("<polygon") != std::string::npos);
}

TEST_CASE("system svg renders polygons and the graph overlay") {
    auto fam = random_disjoint_family(4, 5);
    auto res = improve_separating_system(naive_separating_system(fam), fam);
    auto inc = extract_incidences(res.system);
    auto graph = build_auxiliary_graph(res.system, inc);
    auto svg = render_system_svg(res.system, fam, inc, &graph);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(render_system_svg(res.system, fam, inc, &graph) == svg);
}

TEST_CASE("grid hashes are stable across identical generations") {
    auto a = generate_scalloped(choose_params(5));
    auto b = generate_scalloped(choose_params(5));
    CHECK(a.hash() == b.hash());
    auto c = generate_scalloped(choose_params(5, 256));
    CHECK(a.hash() != c.hash());  // precision is part of the artifact
}
