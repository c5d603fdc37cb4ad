#pragma once

#include <optional>
#include <set>

#include "scallop/torus.hpp"

namespace scallop {

using GridIndex = std::pair<long, long>;  // (row, col), 0-based
using GridIndexSet = std::set<GridIndex>;

struct PlanarContainers {
    // rows[i] = Conv(row-i points of part 1); col_groups[j] = Conv(column
    // group j points of part 2). Empty selections are absent (Conv of the
    // empty set is the empty set).
    std::vector<std::optional<VPolytope>> rows;
    std::vector<std::optional<VPolytope>> col_groups;
};

// Column group j of a grid: single column j when cols == s, the pair
// {2j, 2j+1} (0-based) when cols == 2s. Either way there are s groups.
inline long column_group_count(const PointGrid& g) { return g.s; }

inline std::vector<long> column_group_members(const PointGrid& g, long j) {
    if (g.cols == g.s) return {j};
    return {2 * j, 2 * j + 1};
}

inline PlanarContainers build_planar_containers(const PointGrid& g, const GridIndexSet& part1,
                                                const GridIndexSet& part2) {
    if (g.cols != g.s && g.cols != 2 * g.s)
        throw invalid_input("build_planar_containers: cols must be s or 2s");
    const long total = g.s * g.cols;
    if (static_cast<long>(part1.size() + part2.size()) != total)
        throw invalid_input("build_planar_containers: parts do not partition the grid");
    for (const auto& idx : part1)
        if (part2.count(idx)) throw invalid_input("build_planar_containers: parts overlap");
    for (const auto& part : {part1, part2})
        for (const auto& [i, j] : part)
            if (i < 0 || i >= g.s || j < 0 || j >= g.cols)
                throw invalid_input("build_planar_containers: index out of range");

    PlanarContainers out;
    for (long i = 0; i < g.s; ++i) {
        std::vector<Vec> gens;
        for (long j = 0; j < g.cols; ++j)
            if (part1.count({i, j})) gens.push_back(g.at(i, j));
        out.rows.push_back(gens.empty() ? std::nullopt : std::make_optional(VPolytope(gens)));
    }
    for (long j = 0; j < column_group_count(g); ++j) {
        std::vector<Vec> gens;
        for (long i = 0; i < g.s; ++i)
            for (long c : column_group_members(g, j))
                if (part2.count({i, c})) gens.push_back(g.at(i, c));
        out.col_groups.push_back(gens.empty() ? std::nullopt : std::make_optional(VPolytope(gens)));
    }
    return out;
}

// Layer hulls of the torus witness: C[j][k] = Conv{p in part j : i_j = k}.
// partition[rank] gives the 0-based part of the tuple with that rank.
inline std::vector<std::vector<std::optional<VPolytope>>> build_highdim_containers(
    const TorusWitness& w, const std::vector<int>& partition) {
    const long n = w.tuple_count();
    if (static_cast<long>(partition.size()) != n)
        throw invalid_input("build_highdim_containers: partition must cover all tuples");
    for (int part : partition)
        if (part < 0 || part >= w.r) throw invalid_input("build_highdim_containers: part out of range");

    std::vector<std::vector<std::vector<Vec>>> gens(
        static_cast<std::size_t>(w.r),
        std::vector<std::vector<Vec>>(static_cast<std::size_t>(w.s)));
    for (long rank = 0; rank < n; ++rank) {
        auto tuple = w.tuple_of(rank);
        int j = partition[static_cast<std::size_t>(rank)];
        long k = tuple[static_cast<std::size_t>(j)];
        gens[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].push_back(
            w.points[static_cast<std::size_t>(rank)]);
    }
    std::vector<std::vector<std::optional<VPolytope>>> out(
        static_cast<std::size_t>(w.r),
        std::vector<std::optional<VPolytope>>(static_cast<std::size_t>(w.s)));
    for (long j = 0; j < w.r; ++j)
        for (long k = 0; k < w.s; ++k) {
            auto& gg = gens[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (!gg.empty()) out[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                VPolytope(std::move(gg));
        }
    return out;
}

}  // namespace scallop
