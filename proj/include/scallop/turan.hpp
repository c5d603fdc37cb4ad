#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "scallop/json_io.hpp"

namespace scallop {

// Tuples over the alphabet {0, ..., s-1}; the carrier of the hypercube-free
// extremal function F(k, m, s).
struct TupleSet {
    int m = 0;
    int s = 0;
    std::set<std::vector<int>> members;

    Json to_json() const {
        Json arr = Json::array();
        for (const auto& t : members) {
            Json tj = Json::array();
            for (int v : t) tj.push_back(v + 1);
            arr.push_back(tj);
        }
        return Json{{"m", m}, {"s", s}, {"members", arr}};
    }
};

struct Hypergraph {
    int num_vertices = 0;
    std::vector<std::vector<int>> parts;  // empty when not partite
    std::vector<std::vector<int>> edges;  // each sorted ascending

    bool partite() const { return !parts.empty(); }
};

using HypercubeWitness = std::vector<std::pair<int, int>>;  // one value pair per coordinate

namespace detail {

// all 2^k corners over the chosen value pairs present in `cells`?
inline bool corners_present(const std::set<std::vector<int>>& cells,
                            const HypercubeWitness& pairs) {
    const std::size_t k = pairs.size();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> corner(k);
        for (std::size_t j = 0; j < k; ++j)
            corner[j] = (mask & (1u << j)) ? pairs[j].second : pairs[j].first;
        if (!cells.count(corner)) return false;
    }
    return true;
}

inline bool find_hypercube(const std::set<std::vector<int>>& cells, int k,
                           const std::vector<std::set<int>>& values_per_coord,
                           HypercubeWitness& acc) {
    int j = static_cast<int>(acc.size());
    if (j == k) return corners_present(cells, acc);
    for (auto a = values_per_coord[static_cast<std::size_t>(j)].begin();
         a != values_per_coord[static_cast<std::size_t>(j)].end(); ++a)
        for (auto b = std::next(a); b != values_per_coord[static_cast<std::size_t>(j)].end(); ++b) {
            acc.push_back({*a, *b});
            if (find_hypercube(cells, k, values_per_coord, acc)) return true;
            acc.pop_back();
        }
    return false;
}

}  // namespace detail

// Does the tuple set contain a k-dimensional combinatorial hypercube: two
// distinct values per coordinate whose full 2^k combination grid is
// present? Requires m == k (project first for smaller k).
inline std::optional<HypercubeWitness> contains_hypercube(const TupleSet& t, int k) {
    if (k > t.m) throw invalid_input("contains_hypercube: k exceeds the tuple length");
    if (k != t.m) throw invalid_input("contains_hypercube: expects m == k; project first");
    if (k < 1) throw invalid_input("contains_hypercube: k must be positive");
    std::vector<std::set<int>> values(static_cast<std::size_t>(k));
    for (const auto& tup : t.members)
        for (int j = 0; j < k; ++j) values[static_cast<std::size_t>(j)].insert(tup[static_cast<std::size_t>(j)]);
    HypercubeWitness acc;
    if (detail::find_hypercube(t.members, k, values, acc)) return acc;
    return std::nullopt;
}

inline TupleSet project(const TupleSet& t, const std::vector<int>& coords) {
    TupleSet out;
    out.m = static_cast<int>(coords.size());
    out.s = t.s;
    for (const auto& tup : t.members) {
        std::vector<int> p;
        p.reserve(coords.size());
        for (int c : coords) p.push_back(tup[static_cast<std::size_t>(c)]);
        out.members.insert(std::move(p));
    }
    return out;
}

struct HypercubeFreeResult {
    long value = 0;
    TupleSet witness;
    long long nodes = 0;
};

namespace detail {

struct FSearch {
    int k, m, s;
    std::vector<std::vector<int>> coord_subsets;  // all k-subsets of coordinates
    // cell multiplicity per projection: distinct tuples can share a cell
    std::vector<std::map<std::vector<int>, int>> projections;
    std::vector<std::vector<int>> tuples;  // all tuples, lex order
    std::vector<int> chosen;
    long best = 0;
    std::vector<int> best_set;
    long long nodes = 0;

    bool present(std::size_t pi, const std::vector<int>& cell) const {
        auto it = projections[pi].find(cell);
        return it != projections[pi].end() && it->second > 0;
    }

    // would adding `cell` to projection `pi` complete a hypercube through it?
    bool completes(std::size_t pi, const std::vector<int>& cell) {
        std::vector<int> partner(static_cast<std::size_t>(k));
        return complete_rec(pi, cell, 0, partner);
    }

    bool complete_rec(std::size_t pi, const std::vector<int>& cell, int j,
                      std::vector<int>& partner) {
        if (j == k) {
            // all corners over {cell_j, partner_j}, excluding the new cell itself
            for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
                std::vector<int> corner(static_cast<std::size_t>(k));
                for (int jj = 0; jj < k; ++jj)
                    corner[static_cast<std::size_t>(jj)] = (mask & (1u << jj))
                                                               ? partner[static_cast<std::size_t>(jj)]
                                                               : cell[static_cast<std::size_t>(jj)];
                if (!present(pi, corner)) return false;
            }
            return true;
        }
        for (int v = 0; v < s; ++v) {
            if (v == cell[static_cast<std::size_t>(j)]) continue;
            partner[static_cast<std::size_t>(j)] = v;
            if (complete_rec(pi, cell, j + 1, partner)) return true;
        }
        return false;
    }

    bool can_add(std::size_t tuple_idx) {
        const auto& t = tuples[tuple_idx];
        for (std::size_t pi = 0; pi < coord_subsets.size(); ++pi) {
            std::vector<int> cell;
            for (int c : coord_subsets[pi]) cell.push_back(t[static_cast<std::size_t>(c)]);
            if (present(pi, cell)) continue;  // no new cell, no new hypercube here
            if (completes(pi, cell)) return false;
        }
        return true;
    }

    void add(std::size_t tuple_idx, int delta) {
        const auto& t = tuples[tuple_idx];
        for (std::size_t pi = 0; pi < coord_subsets.size(); ++pi) {
            std::vector<int> cell;
            for (int c : coord_subsets[pi]) cell.push_back(t[static_cast<std::size_t>(c)]);
            projections[pi][cell] += delta;
        }
    }

    void dfs(std::size_t next) {
        ++nodes;
        if (static_cast<long>(chosen.size()) > best) {
            best = static_cast<long>(chosen.size());
            best_set = chosen;
        }
        for (std::size_t idx = next; idx < tuples.size(); ++idx) {
            if (static_cast<long>(chosen.size() + (tuples.size() - idx)) <= best) break;
            if (!can_add(idx)) continue;
            chosen.push_back(static_cast<int>(idx));
            add(idx, +1);
            dfs(idx + 1);
            add(idx, -1);
            chosen.pop_back();
        }
    }
};

}  // namespace detail

// Exact maximum size of a subset of [s]^m all of whose k-coordinate
// projections are hypercube-free, by depth-first search with incremental
// projection tables. Value relabeling lets the search fix the all-zero
// tuple as the first member. The default position cap keeps accidental
// big runs out; callers may raise it deliberately.
inline HypercubeFreeResult max_hypercube_free(int k, int m, int s, long position_cap = 25) {
    if (k < 1 || m < k || s < 1) throw invalid_input("max_hypercube_free: need 1 <= k <= m, s >= 1");
    double positions = std::pow(static_cast<double>(s), static_cast<double>(m));
    if (positions > static_cast<double>(position_cap))
        throw cap_exceeded("max_hypercube_free: s^m exceeds the position cap");

    detail::FSearch search;
    search.k = k;
    search.m = m;
    search.s = s;
    // enumerate k-subsets of {0..m-1}
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        search.coord_subsets.push_back(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < k; ++q)
            idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
    search.projections.resize(search.coord_subsets.size());

    std::vector<int> tup(static_cast<std::size_t>(m), 0);
    for (;;) {
        search.tuples.push_back(tup);
        int pos = m - 1;
        while (pos >= 0 && tup[static_cast<std::size_t>(pos)] == s - 1) {
            tup[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tup[static_cast<std::size_t>(pos)];
    }

    // nonempty sets can be relabeled per coordinate to contain the all-zero
    // tuple, so root the search there
    search.chosen.push_back(0);
    search.add(0, +1);
    search.best = 1;
    search.best_set = search.chosen;
    search.dfs(1);

    HypercubeFreeResult out;
    out.value = search.best;
    out.nodes = search.nodes;
    out.witness.m = m;
    out.witness.s = s;
    for (int t : search.best_set) out.witness.members.insert(search.tuples[static_cast<std::size_t>(t)]);

    // verify the witness: every projection hypercube-free
    for (const auto& coords : search.coord_subsets) {
        auto proj = project(out.witness, coords);
        if (contains_hypercube(proj, k))
            throw invalid_input("max_hypercube_free: witness verification failed");
    }
    return out;
}

struct RecursionBoundReport {
    int k, m, s;
    long f_kms, f_km1s, f_k1m1s;
    Rat lhs;
    bool pass;

    Json to_json() const {
        return Json{{"k", k},    {"m", m},        {"s", s},
                    {"F(k,m,s)", f_kms},          {"F(k,m-1,s)", f_km1s},
                    {"F(k-1,m-1,s)", f_k1m1s},    {"lhs", rat_to_string(lhs)},
                    {"status", pass ? "pass" : "fail"}};
    }
};

// The double-counting inequality relating consecutive F values:
//   F(k,m,s)^2 / F(k,m-1,s) - F(k,m,s) - s(s-1) F(k-1,m-1,s) <= 0 ,
// evaluated in exact rational arithmetic on computed table entries.
inline RecursionBoundReport verify_recursion_bound(
    int k, int m, int s, const std::map<std::tuple<int, int, int>, long>& table) {
    auto need = [&](int kk, int mm) {
        auto it = table.find({kk, mm, s});
        if (it == table.end())
            throw invalid_input("verify_recursion_bound: missing table entry F(" +
                                std::to_string(kk) + "," + std::to_string(mm) + "," +
                                std::to_string(s) + ")");
        return it->second;
    };
    RecursionBoundReport rep{k, m, s, need(k, m), need(k, m - 1), need(k - 1, m - 1), Rat(0), false};
    Rat f = rat(rep.f_kms);
    rep.lhs = f * f / rat(rep.f_km1s) - f - rat(s) * rat(s - 1) * rat(rep.f_k1m1s);
    rep.pass = rep.lhs <= 0;
    return rep;
}

struct BoxTuranResult {
    long value = 0;
    Hypergraph witness;
    long long nodes = 0;
};

namespace detail {

// does the d-uniform edge set contain a complete d-partite block with all
// parts of size 2 (one vertex pair per coordinate class)?
inline bool contains_box(const std::set<std::vector<int>>& edges, int n, int d,
                         std::vector<std::pair<int, int>>& pairs, int used_mask) {
    int level = static_cast<int>(pairs.size());
    if (level == d) {
        std::vector<int> corner(static_cast<std::size_t>(d));
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            for (int j = 0; j < d; ++j)
                corner[static_cast<std::size_t>(j)] =
                    (mask & (1u << j)) ? pairs[static_cast<std::size_t>(j)].second
                                       : pairs[static_cast<std::size_t>(j)].first;
            std::vector<int> e = corner;
            std::sort(e.begin(), e.end());
            if (std::unique(e.begin(), e.end()) != e.end()) return false;  // vertices collide
            if (!edges.count(e)) return false;
        }
        return true;
    }
    int start = level == 0 ? 0 : pairs.back().first + 1;  // order classes by first vertex
    for (int a = start; a < n; ++a) {
        if (used_mask & (1 << a)) continue;
        for (int b = a + 1; b < n; ++b) {
            if (used_mask & (1 << b)) continue;
            pairs.push_back({a, b});
            if (contains_box(edges, n, d, pairs, used_mask | (1 << a) | (1 << b))) return true;
            pairs.pop_back();
        }
    }
    return false;
}

}  // namespace detail

// Exact ex_d(n, K^{(d)}_{2,...,2}) by branch-and-bound over the edge pool
// in lexicographic order.
inline BoxTuranResult box_turan(int n, int d, long edge_cap = 30) {
    if (d < 2 || n < d) throw invalid_input("box_turan: need n >= d >= 2");
    std::vector<std::vector<int>> pool;
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        pool.push_back(idx);
        int pos = d - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - d + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < d; ++q)
            idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
    if (static_cast<long>(pool.size()) > edge_cap)
        throw cap_exceeded("box_turan: edge pool exceeds the cap");

    std::set<std::vector<int>> chosen;
    std::vector<int> chosen_idx, best_idx;
    long best = 0;
    long long nodes = 0;
    auto creates_box = [&](const std::vector<int>& e) {
        chosen.insert(e);
        std::vector<std::pair<int, int>> pairs;
        bool has = detail::contains_box(chosen, n, d, pairs, 0);
        chosen.erase(e);
        return has;
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t next) {
        ++nodes;
        if (static_cast<long>(chosen_idx.size()) > best) {
            best = static_cast<long>(chosen_idx.size());
            best_idx = chosen_idx;
        }
        for (std::size_t i = next; i < pool.size(); ++i) {
            if (static_cast<long>(chosen_idx.size() + (pool.size() - i)) <= best) break;
            if (creates_box(pool[i])) continue;
            chosen.insert(pool[i]);
            chosen_idx.push_back(static_cast<int>(i));
            dfs(i + 1);
            chosen_idx.pop_back();
            chosen.erase(pool[i]);
        }
    };
    dfs(0);

    BoxTuranResult out;
    out.value = best;
    out.nodes = nodes;
    out.witness.num_vertices = n;
    for (int i : best_idx) out.witness.edges.push_back(pool[static_cast<std::size_t>(i)]);
    return out;
}

// ---------------------------------------------------------------------------
// shattering

namespace detail {

inline std::uint64_t vertex_mask(const std::vector<int>& vs) {
    std::uint64_t m = 0;
    for (int v : vs) m |= 1ull << v;
    return m;
}

}  // namespace detail

// S is r-shattered when every r-partition of S admits hyperedges e_i with
// S_i inside e_i and S disjoint from the common intersection of the e_i.
inline bool r_shattered(const Hypergraph& h, const std::vector<int>& s_vertices, int r,
                        std::size_t size_cap = 12) {
    if (h.num_vertices > 63) throw cap_exceeded("r_shattered: vertex universe too large");
    if (s_vertices.size() > size_cap) throw cap_exceeded("r_shattered: set too large");
    if (r < 2) throw invalid_input("r_shattered: r >= 2");
    const std::size_t n = s_vertices.size();
    std::vector<std::uint64_t> edge_masks;
    for (const auto& e : h.edges) edge_masks.push_back(detail::vertex_mask(e));
    std::uint64_t s_mask = detail::vertex_mask(s_vertices);

    std::vector<int> assign(n, 0);
    for (;;) {
        std::vector<std::uint64_t> part_masks(static_cast<std::size_t>(r), 0);
        for (std::size_t i = 0; i < n; ++i)
            part_masks[static_cast<std::size_t>(assign[i])] |= 1ull << s_vertices[i];
        // candidate edges per part, then DFS for a tuple with empty common
        // trace on S
        std::vector<std::vector<std::uint64_t>> cands(static_cast<std::size_t>(r));
        bool feasible = true;
        for (int i = 0; i < r && feasible; ++i) {
            for (auto em : edge_masks)
                if ((part_masks[static_cast<std::size_t>(i)] & ~em) == 0)
                    cands[static_cast<std::size_t>(i)].push_back(em);
            feasible = !cands[static_cast<std::size_t>(i)].empty();
        }
        if (!feasible) return false;
        std::function<bool(int, std::uint64_t)> pick = [&](int level, std::uint64_t common) {
            if ((common & s_mask) == 0) return true;  // remaining parts have candidates
            if (level == r) return false;
            for (auto em : cands[static_cast<std::size_t>(level)])
                if (pick(level + 1, common & em)) return true;
            return false;
        };
        if (!pick(0, ~0ull)) return false;

        std::size_t pos = 0;
        while (pos < n) {
            if (++assign[pos] < r) break;
            assign[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return true;
}

struct VcResult {
    int dimension = 0;
    std::vector<int> witness;
};

// classical VC dimension by brute force: the largest S whose every subset
// is realized as S ∩ e for some edge
inline VcResult vc_dimension(const Hypergraph& h, int vertex_cap = 16) {
    if (h.num_vertices > vertex_cap) throw cap_exceeded("vc_dimension: vertex cap exceeded");
    const int n = h.num_vertices;
    std::vector<std::uint64_t> edge_masks;
    for (const auto& e : h.edges) edge_masks.push_back(detail::vertex_mask(e));
    VcResult out;
    out.dimension = -1;  // stays -1 only for an edgeless hypergraph
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
        int size = __builtin_popcount(subset);
        if (size <= out.dimension) continue;
        std::set<std::uint64_t> traces;
        for (auto em : edge_masks) traces.insert(em & subset);
        if (traces.size() == (1ull << size)) {
            out.dimension = size;
            out.witness.clear();
            for (int v = 0; v < n; ++v)
                if (subset & (1u << v)) out.witness.push_back(v);
        }
    }
    return out;
}

}  // namespace scallop
