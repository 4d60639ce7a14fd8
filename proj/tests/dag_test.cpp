#include "dagchain/dag.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace dagchain {
namespace {

using testing::make;

TEST(Dag, StartsEmpty) {
    const Dag g(5);
    EXPECT_EQ(g.n(), 5);
    EXPECT_EQ(g.arc_count(), 0u);
    EXPECT_TRUE(g.arcs().empty());
}

TEST(Dag, RejectsTooFewVertices) {
    EXPECT_THROW(Dag(1), InputError);
    EXPECT_THROW(Dag(0), InputError);
}

TEST(Dag, FromArcsValidates) {
    EXPECT_THROW(make(3, {{1, 4}}), InputError);
    EXPECT_THROW(make(3, {{0, 1}}), InputError);
    EXPECT_THROW(make(3, {{2, 2}}), InputError);
    EXPECT_THROW(make(3, {{1, 2}, {1, 2}}), InputError);
    EXPECT_THROW(make(3, {{1, 2}, {2, 1}}), InputError);
    EXPECT_THROW(make(3, {{1, 2}, {2, 3}, {3, 1}}), InputError);
}

TEST(Dag, ArcsComeOutSorted) {
    const Dag g = make(4, {{3, 1}, {1, 4}, {2, 4}, {1, 2}});
    const std::vector<Arc> expected{{1, 2}, {1, 4}, {2, 4}, {3, 1}};
    EXPECT_EQ(g.arcs(), expected);
    EXPECT_EQ(g.out_degree(1), 2);
    EXPECT_EQ(g.in_degree(4), 2);
}

TEST(Dag, WideGraphsCrossWordBoundaries) {
    Dag g(130);
    g.add_arc(1, 130);
    g.add_arc(64, 65);
    g.add_arc(129, 2);
    EXPECT_TRUE(g.has_arc(1, 130));
    EXPECT_TRUE(g.has_arc(64, 65));
    EXPECT_FALSE(g.has_arc(65, 64));
    EXPECT_TRUE(would_create_circuit(g, 130, 1));
    EXPECT_FALSE(would_create_circuit(g, 130, 129));
    g.reverse_arc(64, 65);
    EXPECT_TRUE(g.has_arc(65, 64));
    EXPECT_EQ(g.arc_count(), 3u);
}

TEST(UndirectedView, IgnoresOrientation) {
    const Dag g = make(4, {{1, 2}, {3, 2}});
    const UndirectedView u(g);
    EXPECT_TRUE(u.has_edge(2, 1));
    EXPECT_TRUE(u.has_edge(2, 3));
    EXPECT_FALSE(u.has_edge(1, 3));
    EXPECT_EQ(u.degree(2), 2);
    EXPECT_EQ(u.neighbors(2), (std::vector<Vertex>{1, 3}));
    EXPECT_EQ(u.degree(4), 0);
}

TEST(WouldCreateCircuit, ClosingAPath) {
    const Dag g = make(3, {{1, 2}, {2, 3}});
    EXPECT_TRUE(would_create_circuit(g, 3, 1));
    EXPECT_FALSE(would_create_circuit(g, 1, 3));
}

TEST(WouldCreateCircuit, SelfLoopIsACircuit) {
    const Dag g(4);
    for (Vertex v = 1; v <= 4; ++v) EXPECT_TRUE(would_create_circuit(g, v, v));
}

TEST(WouldCreateCircuit, OutOfRangeIsAnInputError) {
    const Dag g(3);
    EXPECT_THROW(would_create_circuit(g, 0, 1), InputError);
    EXPECT_THROW(would_create_circuit(g, 1, 4), InputError);
}

TEST(WouldCreateCircuit, MatchesPathEnumerationExhaustively) {
    for (int n = 2; n <= 5; ++n) {
        const std::vector<Dag> dags = testing::all_dags_brute(n);
        for (const Dag& g : dags) {
            for (Vertex i = 1; i <= n; ++i) {
                for (Vertex j = 1; j <= n; ++j) {
                    if (g.has_arc(i, j)) continue;
                    ASSERT_EQ(would_create_circuit(g, i, j), testing::brute_would_create_circuit(g, i, j))
                        << to_string(g) << " + (" << i << "," << j << ")";
                }
            }
        }
    }
}

TEST(IsDisconnecting, TreeEdgesAreBridges) {
    const Dag g = make(3, {{1, 2}, {2, 3}});
    EXPECT_TRUE(is_disconnecting(g, 1, 2));
    EXPECT_TRUE(is_disconnecting(g, 2, 3));
}

TEST(IsDisconnecting, CycleEdgesAreNot) {
    const Dag g = make(3, {{1, 2}, {2, 3}, {1, 3}});
    EXPECT_FALSE(is_disconnecting(g, 1, 2));
    EXPECT_FALSE(is_disconnecting(g, 1, 3));
}

TEST(IsDisconnecting, PendantArcOnTriangle) {
    const Dag g = make(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
    EXPECT_TRUE(is_disconnecting(g, 3, 4));
    // Fresh recount after removal agrees.
    auto arcs = g.arcs();
    std::erase(arcs, Arc{3, 4});
    EXPECT_EQ(testing::component_count(4, arcs), 2);
}

TEST(IsDisconnecting, AbsentArcIsAnInputError) {
    const Dag g = make(3, {{1, 2}, {2, 3}});
    EXPECT_THROW(is_disconnecting(g, 2, 1), InputError);
    EXPECT_THROW(is_disconnecting(g, 1, 3), InputError);
}

TEST(IsDisconnecting, MatchesComponentRecount) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 2 + trial % 9;
        const Dag g = testing::random_connected_dag(n, 0.25, rng);
        const int before = testing::component_count(g);
        for (const Arc& a : g.arcs()) {
            auto rest = g.arcs();
            std::erase(rest, a);
            const bool increases = testing::component_count(n, rest) > before;
            ASSERT_EQ(is_disconnecting(g, a.from, a.to), increases) << to_string(g);
        }
    }
}

TEST(IsDisconnecting, ReversingABridgeKeepsAcyclicity) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
        const Dag g = testing::random_connected_dag(2 + trial % 10, 0.2, rng);
        for (const Arc& a : g.arcs()) {
            if (!is_disconnecting(g, a.from, a.to)) continue;
            Dag r = g;
            r.reverse_arc(a.from, a.to);
            ASSERT_FALSE(invariant_violation(r).has_value()) << to_string(g);
            ASSERT_TRUE(testing::closure_acyclic(r.n(), r.arcs()));
        }
    }
}

TEST(IsConnected, Examples) {
    EXPECT_FALSE(is_connected(Dag(2)));
    EXPECT_TRUE(is_connected(make(3, {{1, 2}, {3, 2}})));
    EXPECT_FALSE(is_connected(make(4, {{1, 2}, {3, 4}})));
}

TEST(IsConnected, MatchesComponentCount) {
    for (int n = 2; n <= 4; ++n) {
        for (const Dag& g : testing::all_dags_brute(n)) {
            ASSERT_EQ(is_connected(g), testing::component_count(g) == 1) << to_string(g);
        }
    }
}

TEST(InvariantChecker, AcceptsEveryDag) {
    for (const Dag& g : testing::all_dags_brute(4)) {
        EXPECT_FALSE(invariant_violation(g).has_value());
    }
}

TEST(InvariantChecker, FlagsCircuitsAndAntiparallelArcs) {
    // The unchecked mutators can build invalid graphs; the checker catches them.
    Dag two_cycle(3);
    two_cycle.add_arc(1, 2);
    two_cycle.add_arc(2, 1);
    ASSERT_TRUE(invariant_violation(two_cycle).has_value());
    EXPECT_NE(invariant_violation(two_cycle)->find("antiparallel"), std::string::npos);

    Dag triangle(3);
    triangle.add_arc(1, 2);
    triangle.add_arc(2, 3);
    triangle.add_arc(3, 1);
    ASSERT_TRUE(invariant_violation(triangle).has_value());
    EXPECT_FALSE(is_acyclic(triangle));
}

TEST(Dag, EqualityAndHash) {
    const Dag a = make(4, {{1, 2}, {3, 4}});
    const Dag b = make(4, {{3, 4}, {1, 2}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(std::hash<Dag>{}(a), std::hash<Dag>{}(b));
    EXPECT_FALSE(a == make(4, {{1, 2}}));
    EXPECT_FALSE(a == Dag(5));
    EXPECT_EQ(to_string(a), "{(1,2),(3,4)}");
}

}  // namespace
}  // namespace dagchain
