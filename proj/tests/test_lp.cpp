#include <catch2/catch_amalgamated.hpp>

#include "scallop/lp.hpp"

using namespace scallop;

TEST_CASE("basic maximization") {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), obj 14/5
    LpProblem lp;
    int x = lp.add_var(true);
    int y = lp.add_var(true);
    lp.add_constraint({{x, rat(1)}, {y, rat(2)}}, Rel::le, rat(4));
    lp.add_constraint({{x, rat(3)}, {y, rat(1)}}, Rel::le, rat(6));
    lp.maximize({{x, rat(1)}, {y, rat(1)}});
    auto res = lp.solve();
    REQUIRE(res.ok());
    CHECK(res.objective == rat(14, 5));
    CHECK(res.values[0] == rat(8, 5));
    CHECK(res.values[1] == rat(6, 5));
}

TEST_CASE("infeasible system detected") {
    LpProblem lp;
    int x = lp.add_var(true);
    lp.add_constraint({{x, rat(1)}}, Rel::ge, rat(2));
    lp.add_constraint({{x, rat(1)}}, Rel::le, rat(1));
    lp.minimize({{x, rat(1)}});
    CHECK(lp.solve().status == LpStatus::infeasible);
}

TEST_CASE("unbounded objective detected") {
    LpProblem lp;
    int x = lp.add_var(true);
    int y = lp.add_var(false);
    lp.add_constraint({{x, rat(1)}, {y, rat(-1)}}, Rel::ge, rat(0));
    lp.maximize({{x, rat(1)}, {y, rat(1)}});
    CHECK(lp.solve().status == LpStatus::unbounded);
}

TEST_CASE("free variables and equalities") {
    // x free, y >= 0: x + y = 1, x - y = -3 -> x = -1, y = 2
    LpProblem lp;
    int x = lp.add_var(false);
    int y = lp.add_var(true);
    lp.add_constraint({{x, rat(1)}, {y, rat(1)}}, Rel::eq, rat(1));
    lp.add_constraint({{x, rat(1)}, {y, rat(-1)}}, Rel::eq, rat(-3));
    lp.minimize({{x, rat(1)}});
    auto res = lp.solve();
    REQUIRE(res.ok());
    CHECK(res.values[0] == rat(-1));
    CHECK(res.values[1] == rat(2));
}

TEST_CASE("exact rational pivoting has no drift") {
    // Degenerate-prone system with awkward fractions.
    LpProblem lp;
    int x = lp.add_var(true);
    int y = lp.add_var(true);
    int z = lp.add_var(true);
    lp.add_constraint({{x, rat(1, 3)}, {y, rat(1, 7)}, {z, rat(1, 11)}}, Rel::le, rat(1));
    lp.add_constraint({{x, rat(1, 5)}, {y, rat(1, 2)}, {z, rat(1, 13)}}, Rel::le, rat(1));
    lp.add_constraint({{x, rat(1)}, {y, rat(1)}, {z, rat(1)}}, Rel::ge, rat(1, 9));
    lp.maximize({{x, rat(2)}, {y, rat(3)}, {z, rat(1, 2)}});
    auto res = lp.solve();
    REQUIRE(res.ok());
    // verify feasibility and optimality value by substitution
    Rat vx = res.values[0], vy = res.values[1], vz = res.values[2];
    CHECK(vx / 3 + vy / 7 + vz / 11 <= 1);
    CHECK(vx / 5 + vy / 2 + vz / 13 <= 1);
    CHECK(vx + vy + vz >= rat(1, 9));
    CHECK(res.objective == 2 * vx + 3 * vy + vz / 2);
}

TEST_CASE("redundant equalities are tolerated") {
    LpProblem lp;
    int x = lp.add_var(true);
    int y = lp.add_var(true);
    lp.add_constraint({{x, rat(1)}, {y, rat(1)}}, Rel::eq, rat(2));
    lp.add_constraint({{x, rat(2)}, {y, rat(2)}}, Rel::eq, rat(4));
    lp.minimize({{x, rat(1)}});
    auto res = lp.solve();
    REQUIRE(res.ok());
    CHECK(res.values[0] == 0);
    CHECK(res.values[1] == 2);
}

TEST_CASE("determinism: identical inputs give identical bases") {
    auto run = [] {
        LpProblem lp;
        int x = lp.add_var(true);
        int y = lp.add_var(true);
        int z = lp.add_var(true);
        // deliberately degenerate: multiple optima on a face
        lp.add_constraint({{x, rat(1)}, {y, rat(1)}}, Rel::le, rat(1));
        lp.add_constraint({{y, rat(1)}, {z, rat(1)}}, Rel::le, rat(1));
        lp.maximize({{x, rat(1)}, {y, rat(1)}, {z, rat(1)}});
        return lp.solve();
    };
    auto a = run();
    auto b = run();
    REQUIRE(a.ok());
    CHECK(a.values == b.values);
    CHECK(a.objective == b.objective);
}
