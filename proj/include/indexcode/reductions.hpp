#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "indexcode/errors.hpp"
#include "indexcode/exact.hpp"
#include "indexcode/graph.hpp"
#include "indexcode/instance.hpp"
#include "indexcode/linalg.hpp"

namespace indexcode {

// Broadcast instance whose binary optimum equals (minimum vertex cover) +
// (edge count). Packets: one per vertex (indices 0..|V|-1), then one per
// edge in sorted order. Each edge (v,u) contributes two clients: one that
// holds the edge packet and wants both endpoint packets, and one that
// holds the endpoint packets and wants the edge packet.
inline Instance from_vertex_cover(const Graph& g)
{
    if (g.edges.empty())
        fail(ErrorKind::empty_graph, "vertex-cover reduction needs at least one edge");
    Instance inst;
    inst.num_packets = g.num_vertices + static_cast<int>(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int pv = g.edges[e].first;
        const int pu = g.edges[e].second;
        const int pe = g.num_vertices + static_cast<int>(e);
        inst.clients.emplace_back(std::vector<int>{pv, pu}, std::vector<int>{pe});
        inst.clients.emplace_back(std::vector<int>{pe}, std::vector<int>{pv, pu});
    }
    return inst;
}

// Exact minimum vertex cover by scanning subsets in increasing size,
// lexicographic within a size; returns the first (lexicographically least)
// optimal cover. Deliberately naive: this is the oracle side of the
// identity check.
inline std::pair<int, std::vector<int>> min_vertex_cover(const Graph& g,
                                                         const BigUint& budget = kDefaultBudget)
{
    const int n = g.num_vertices;
    if (BigUint(1) << n > budget)
        fail(ErrorKind::budget_exceeded,
             "2^" + std::to_string(n) + " subsets exceed budget " + budget.str());
    std::vector<int> subset;
    for (int size = 0; size <= n; ++size) {
        subset.assign(size, 0);
        for (int i = 0; i < size; ++i)
            subset[i] = i;
        while (true) {
            bool covers = true;
            for (auto [u, v] : g.edges)
                if (!std::binary_search(subset.begin(), subset.end(), u) &&
                    !std::binary_search(subset.begin(), subset.end(), v)) {
                    covers = false;
                    break;
                }
            if (covers)
                return {size, subset};
            // next lexicographic size-combination of 0..n-1
            int i = size - 1;
            while (i >= 0 && subset[i] == n - size + i)
                --i;
            if (i < 0)
                break;
            ++subset[i];
            for (int j = i + 1; j < size; ++j)
                subset[j] = subset[j - 1] + 1;
        }
    }
    fail(ErrorKind::internal, "full vertex set must cover all edges");
}

struct VcIdentityResult {
    int opt2 = 0;
    int vertex_cover = 0;
    int num_edges = 0;
    bool holds = false;
};

// Checks opt over GF(2) of the reduction instance against vertex cover +
// edge count, using the independent brute-force cover oracle.
inline VcIdentityResult check_vc_identity(const Graph& g, const BigUint& budget = kDefaultBudget)
{
    VcIdentityResult r;
    r.num_edges = static_cast<int>(g.edges.size());
    r.vertex_cover = min_vertex_cover(g, budget).first;
    const SolveResult solve = opt_q(from_vertex_cover(g), 2, budget);
    if (solve.status != SolveStatus::exact)
        fail(ErrorKind::budget_exceeded, "solver budget exhausted during identity check");
    r.opt2 = solve.opt;
    r.holds = r.opt2 == r.vertex_cover + r.num_edges;
    return r;
}

// Broadcast instance whose two-transmission solvability over GF(q) is
// equivalent to (q+1)-colorability: one packet per vertex, one client per
// edge wanting both endpoint packets and holding all others.
inline Instance from_coloring(const Graph& g)
{
    std::vector<bool> touched(g.num_vertices, false);
    for (auto [u, v] : g.edges) {
        touched[u] = true;
        touched[v] = true;
    }
    for (int v = 0; v < g.num_vertices; ++v)
        if (!touched[v])
            fail(ErrorKind::isolated_vertex,
                 "vertex " + std::to_string(v) + " has no incident edge");
    Instance inst;
    inst.num_packets = g.num_vertices;
    for (auto [u, v] : g.edges) {
        std::vector<int> wants{u, v};
        std::vector<int> has;
        for (int p = 0; p < g.num_vertices; ++p)
            if (p != u && p != v)
                has.push_back(p);
        inst.clients.emplace_back(std::move(wants), std::move(has));
    }
    return inst;
}

// Exact chromatic number by iterative deepening: for c = 1, 2, ... try to
// color vertices in index order with colors 0..c-1. Independent of the
// branch-and-bound used by the clique-cover module.
inline int chromatic_number(const Graph& g, const BigUint& budget = kDefaultBudget)
{
    if (g.num_vertices == 0)
        return 0;
    const auto adj = g.adjacency();
    BigUint nodes = 0;
    std::vector<int> color(g.num_vertices, -1);

    auto feasible = [&](auto&& self, int v, int c) -> bool {
        if (nodes > budget)
            return false;
        nodes += 1;
        if (v == g.num_vertices)
            return true;
        for (int col = 0; col < c; ++col) {
            bool ok = true;
            for (int u : adj[v])
                if (color[u] == col) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            color[v] = col;
            if (self(self, v + 1, c))
                return true;
            color[v] = -1;
        }
        return false;
    };

    for (int c = 1; c <= g.num_vertices; ++c) {
        std::fill(color.begin(), color.end(), -1);
        if (feasible(feasible, 0, c))
            return c;
        if (nodes > budget)
            fail(ErrorKind::budget_exceeded, "coloring oracle budget of " + budget.str() +
                                                 " nodes exhausted");
    }
    fail(ErrorKind::internal, "graph must be colorable with one color per vertex");
}

// Two-transmission solution from a proper coloring with at most q+1
// colors. Color t maps to the t-th of the pairwise independent coefficient
// pairs (1,0), (0,1), (1,1), (1,2), ..., (1,q-1); vertex v's column of the
// 2 x |V| result is its color's pair.
inline Matrix coloring_to_solution(const Graph& g, const std::vector<int>& coloring, int q)
{
    const Field field = Field::make(q);
    if (static_cast<int>(coloring.size()) != g.num_vertices)
        fail(ErrorKind::invalid_param, "coloring size must match vertex count");
    int max_color = -1;
    for (int c : coloring) {
        if (c < 0)
            fail(ErrorKind::invalid_param, "colors must be nonnegative");
        max_color = std::max(max_color, c);
    }
    if (max_color + 1 > q + 1)
        fail(ErrorKind::too_many_colors, std::to_string(max_color + 1) + " colors used, only " +
                                             std::to_string(q + 1) + " coefficient pairs exist");
    for (auto [u, v] : g.edges)
        if (coloring[u] == coloring[v])
            fail(ErrorKind::improper_coloring, "edge (" + std::to_string(u) + "," +
                                                   std::to_string(v) + ") is monochromatic");

    std::vector<std::pair<int, int>> pairs{{1, 0}, {0, 1}};
    for (int t = 1; t < q; ++t)
        pairs.emplace_back(1, t);
    // pairs[2] is (1,1); together all q+1 of them are pairwise independent.

    Matrix m(field, 2, g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v) {
        m.set(0, v, pairs[coloring[v]].first);
        m.set(1, v, pairs[coloring[v]].second);
    }
    return m;
}

struct ColoringEquivalenceResult {
    bool opt_is_2 = false;
    int chi = 0;
    bool holds = false;
};

// The coloring instance is solvable with two transmissions over GF(q) iff
// the graph is (q+1)-colorable; checks both sides independently.
inline ColoringEquivalenceResult check_coloring_equivalence(const Graph& g, int q,
                                                            const BigUint& budget = kDefaultBudget)
{
    ColoringEquivalenceResult r;
    r.chi = chromatic_number(g, budget);
    const SolveResult solve = opt_q(from_coloring(g), q, budget);
    if (solve.status != SolveStatus::exact)
        fail(ErrorKind::budget_exceeded, "solver budget exhausted during equivalence check");
    r.opt_is_2 = solve.opt == 2;
    r.holds = r.opt_is_2 == (r.chi <= q + 1);
    return r;
}

} // namespace indexcode
