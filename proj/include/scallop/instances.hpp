#pragma once

#include <array>
#include <random>

#include "scallop/separating.hpp"

namespace scallop {

// Seeded instance generators. Everything is driven by mt19937_64 (whose
// output sequence is pinned by the standard), so a (generator, seed) pair
// reproduces instances bit-identically anywhere.

namespace detail {

inline long rand_range(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

}  // namespace detail

inline VPolytope random_polytope(std::mt19937_64& rng, std::size_t dim, long box_halfwidth,
                                 long max_gens, long denominator = 2) {
    long n = detail::rand_range(rng, 1, max_gens);
    std::vector<Vec> gens;
    for (long g = 0; g < n; ++g) {
        Vec p(dim);
        for (auto& c : p)
            c = rat(detail::rand_range(rng, -box_halfwidth * denominator, box_halfwidth * denominator),
                    denominator);
        gens.push_back(std::move(p));
    }
    return VPolytope(std::move(gens));
}

// count pairwise-disjoint compact convex sets in R^dim; rejection sampling
// inside a growing box keeps it total.
inline std::vector<VPolytope> random_disjoint_sets(std::mt19937_64& rng, long count,
                                                   long box_halfwidth = 12, std::size_t dim = 2) {
    std::vector<VPolytope> sets;
    long box = box_halfwidth;
    int failures = 0;
    while (static_cast<long>(sets.size()) < count) {
        Vec center(dim);
        for (auto& c : center) c = rat(detail::rand_range(rng, -box, box));
        long n = detail::rand_range(rng, 1, 5);
        std::vector<Vec> gens;
        for (long g = 0; g < n; ++g) {
            Vec p(dim);
            for (std::size_t k = 0; k < dim; ++k)
                p[k] = center[k] + rat(detail::rand_range(rng, -4, 4), 2);
            gens.push_back(std::move(p));
        }
        VPolytope cand(std::move(gens));
        bool ok = true;
        for (const auto& other : sets) {
            std::vector<VPolytope> pair{cand, other};
            if (multi_hulls_intersect(pair).intersects) {
                ok = false;
                break;
            }
        }
        if (ok) {
            sets.push_back(std::move(cand));
            failures = 0;
        } else if (++failures > 40) {
            box += 6;  // widen the arena instead of looping forever
            failures = 0;
        }
    }
    return sets;
}

inline DisjointFamily random_disjoint_family(long a, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return DisjointFamily::validated(random_disjoint_sets(rng, a));
}

// d+1 pairs of convex sets in R^d, disjoint within each pair; different
// pairs overlap freely.
inline std::vector<std::array<VPolytope, 2>> random_disjoint_pairs(std::size_t d,
                                                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::array<VPolytope, 2>> pairs;
    for (std::size_t p = 0; p + 1 <= d + 1; ++p) {
        VPolytope first = random_polytope(rng, d, 6, static_cast<long>(d) + 3);
        for (;;) {
            VPolytope second = random_polytope(rng, d, 6, static_cast<long>(d) + 3);
            std::vector<VPolytope> pr{first, second};
            if (!multi_hulls_intersect(pr).intersects) {
                pairs.push_back({std::move(first), std::move(second)});
                break;
            }
            // nudge apart along a random axis; terminates since both are bounded
            std::size_t axis = rng() % d;
            for (auto& g : second.gens) g[axis] += rat(3);
            std::vector<VPolytope> pr2{first, second};
            if (!multi_hulls_intersect(pr2).intersects) {
                pairs.push_back({std::move(first), std::move(second)});
                break;
            }
        }
    }
    return pairs;
}

// k families of s convex sets each in R^dim, pairwise disjoint within
// every family, sharing one arena so cross-family intersections are common.
inline std::vector<std::vector<VPolytope>> random_family_collection(long k, long s,
                                                                    std::uint64_t seed,
                                                                    std::size_t dim = 2) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<VPolytope>> families;
    for (long f = 0; f < k; ++f) families.push_back(random_disjoint_sets(rng, s, 8, dim));
    return families;
}

// r families of s planar convex sets for the thickening procedure:
// disjoint within each family, and every cross tuple of one set per family
// has empty intersection. Instances violating the cross-tuple condition
// are resampled; as a last resort the families are pulled apart.
inline std::vector<std::vector<VPolytope>> random_thickening_instance(long r, long s,
                                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<std::vector<VPolytope>> families;
        for (long f = 0; f < r; ++f) families.push_back(random_disjoint_sets(rng, s, 7));
        bool ok = true;
        std::vector<long> idx(static_cast<std::size_t>(r), 0);
        for (;;) {
            std::vector<VPolytope> tuple;
            for (long f = 0; f < r; ++f)
                tuple.push_back(families[static_cast<std::size_t>(f)]
                                        [static_cast<std::size_t>(idx[static_cast<std::size_t>(f)])]);
            if (multi_hulls_intersect(tuple).intersects) {
                ok = false;
                break;
            }
            long pos = r - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == s) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        if (ok) return families;
    }
    // guaranteed fallback: shift family 0 far out so no tuple can close
    std::vector<std::vector<VPolytope>> families;
    for (long f = 0; f < r; ++f) families.push_back(random_disjoint_sets(rng, s, 7));
    for (auto& set : families[0])
        for (auto& g : set.gens) g[0] += rat(1000);
    return families;
}

}  // namespace scallop
