#pragma once

// Test-only reference implementations. Each one is deliberately naive and
// shares no code path with the library routine it is compared against.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dagchain/dag.hpp"

namespace dagchain::testing {

/// Adjacency matrix copy, 1-based.
inline std::vector<std::vector<bool>> adjacency(const Dag& g) {
    std::vector<std::vector<bool>> a(g.n() + 1, std::vector<bool>(g.n() + 1, false));
    for (const Arc& arc : g.arcs()) {
        a[arc.from][arc.to] = true;
    }
    return a;
}

/// Enumerates every simple directed path leaving `from` and reports whether
/// one of them ends at `to`.
inline bool any_path(const std::vector<std::vector<bool>>& a, int from, int to,
                     std::vector<bool>& on_path) {
    if (from == to) {
        return true;
    }
    on_path[from] = true;
    bool found = false;
    for (int next = 1; next < static_cast<int>(a.size()) && !found; ++next) {
        if (a[from][next] && !on_path[next]) {
            found = any_path(a, next, to, on_path);
        }
    }
    on_path[from] = false;
    return found;
}

inline bool brute_would_create_circuit(const Dag& g, int i, int j) {
    if (i == j) {
        return true;
    }
    std::vector<bool> on_path(g.n() + 1, false);
    return any_path(adjacency(g), j, i, on_path);
}

/// Number of undirected components, via union-find over an explicit arc list.
inline int component_count(int n, const std::vector<Arc>& arcs) {
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    int components = n;
    for (const Arc& a : arcs) {
        const int x = find(a.from);
        const int y = find(a.to);
        if (x != y) {
            parent[x] = y;
            --components;
        }
    }
    return components;
}

inline int component_count(const Dag& g) { return component_count(g.n(), g.arcs()); }

/// Acyclicity by transitive closure (Floyd-Warshall) over an arbitrary arc
/// list that may contain circuits.
inline bool closure_acyclic(int n, const std::vector<Arc>& arcs) {
    std::vector<std::vector<bool>> r(n + 1, std::vector<bool>(n + 1, false));
    for (const Arc& a : arcs) {
        r[a.from][a.to] = true;
    }
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    for (int i = 1; i <= n; ++i)
        if (r[i][i]) return false;
    return true;
}

/// All ordered pairs (i,j), i != j.
inline std::vector<Arc> ordered_pairs(int n) {
    std::vector<Arc> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) pairs.push_back({i, j});
    return pairs;
}

/// Every DAG on n vertices by filtering all 2^(n(n-1)) arc subsets.
inline std::vector<Dag> all_dags_brute(int n) {
    const auto pairs = ordered_pairs(n);
    std::vector<Dag> result;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<Arc> arcs;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if ((mask >> b) & 1u) arcs.push_back(pairs[b]);
        if (closure_acyclic(n, arcs)) {
            Dag g(n);
            for (const Arc& a : arcs) g.add_arc(a.from, a.to);
            result.push_back(g);
        }
    }
    return result;
}

/// Random connected DAG: random topological order, random spanning tree
/// oriented along it, then extra forward arcs with probability `density`.
inline Dag random_connected_dag(int n, double density, std::mt19937_64& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> rank(n + 1);
    for (int k = 0; k < n; ++k) rank[order[k]] = k;
    Dag g(n);
    auto add_forward = [&](int a, int b) {
        if (rank[a] > rank[b]) std::swap(a, b);
        if (!g.has_arc(a, b)) g.add_arc(a, b);
    };
    std::vector<int> attached{order[0]};
    std::vector<int> rest(order.begin() + 1, order.end());
    std::shuffle(rest.begin(), rest.end(), rng);
    for (int v : rest) {
        std::uniform_int_distribution<std::size_t> pick(0, attached.size() - 1);
        add_forward(v, attached[pick(rng)]);
        attached.push_back(v);
    }
    std::bernoulli_distribution coin(density);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(rng)) add_forward(i, j);
    return g;
}

/// Random DAG, possibly disconnected.
inline Dag random_dag(int n, double density, std::mt19937_64& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    Dag g(n);
    std::bernoulli_distribution coin(density);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng)) g.add_arc(order[a], order[b]);
    return g;
}

inline Dag transitive_tournament(int n) {
    Dag g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_arc(i, j);
    return g;
}

/// Naive one-step rule over explicit arc lists. `connected` selects the
/// connected chain; `reversal` toggles bridge reversal there. Caps are not
/// modelled.
inline std::vector<Arc> brute_step(int n, std::vector<Arc> arcs, Arc drawn, bool connected,
                                   bool reversal) {
    if (drawn.from == drawn.to) return arcs;
    const auto it = std::find(arcs.begin(), arcs.end(), drawn);
    if (it != arcs.end()) {
        std::vector<Arc> rest = arcs;
        rest.erase(rest.begin() + (it - arcs.begin()));
        if (!connected || component_count(n, rest) == 1) return rest;
        if (!reversal) return arcs;
        rest.push_back({drawn.to, drawn.from});
        return rest;
    }
    if (std::find(arcs.begin(), arcs.end(), Arc{drawn.to, drawn.from}) != arcs.end()) return arcs;
    std::vector<Arc> more = arcs;
    more.push_back(drawn);
    return closure_acyclic(n, more) ? more : arcs;
}

inline Dag make(int n, std::initializer_list<Arc> arcs) {
    return Dag::from_arcs(n, std::vector<Arc>(arcs));
}

}  // namespace dagchain::testing
