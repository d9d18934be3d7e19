#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "indexcode/errors.hpp"
#include "indexcode/exact.hpp"
#include "indexcode/graph.hpp"
#include "indexcode/instance.hpp"
#include "indexcode/linalg.hpp"

namespace indexcode {

// Disjoint vertex blocks covering the graph, each inducing a complete
// subgraph. One coded transmission serves each block.
struct CliquePartition {
    std::vector<std::vector<int>> blocks;

    std::size_t size() const { return blocks.size(); }
};

// Vertex i is client i of the (singleton-wants) instance. Two clients are
// compatible - one transmission can serve both - iff they want the same
// packet, or each already holds what the other wants.
inline Graph build_compatibility_graph(const Instance& inst)
{
    if (!is_normalized(inst))
        fail(ErrorKind::not_normalized, "compatibility graph needs singleton wants; normalize first");
    Graph g;
    g.num_vertices = static_cast<int>(inst.clients.size());
    for (int i = 0; i < g.num_vertices; ++i) {
        const Client& a = inst.clients[i];
        for (int j = i + 1; j < g.num_vertices; ++j) {
            const Client& b = inst.clients[j];
            const bool same_want = a.wants[0] == b.wants[0];
            const bool mutual =
                std::binary_search(b.has.begin(), b.has.end(), a.wants[0]) &&
                std::binary_search(a.has.begin(), a.has.end(), b.wants[0]);
            if (same_want || mutual)
                g.edges.emplace_back(i, j);
        }
    }
    return g;
}

namespace detail {

// Exact minimum proper coloring by branch and bound: vertices in index
// order, colors tried ascending, new colors opened only when needed, best
// solution updated on strict improvement. Deterministic by construction.
class ColoringSearch {
public:
    ColoringSearch(const Graph& g, const BigUint& budget) : g_(g), adj_(g.adjacency()), budget_(budget)
    {
        color_.assign(g.num_vertices, -1);
        best_colors_ = g.num_vertices + 1;
    }

    std::vector<int> solve()
    {
        if (g_.num_vertices == 0)
            return {};
        recurse(0, 0);
        if (nodes_ > budget_)
            fail(ErrorKind::budget_exceeded, "coloring search budget of " + budget_.str() +
                                                 " nodes exhausted");
        return best_;
    }

    int best_colors() const { return best_colors_; }

private:
    void recurse(int v, int used)
    {
        if (nodes_ > budget_)
            return;
        nodes_ += 1;
        if (used >= best_colors_)
            return;
        if (v == g_.num_vertices) {
            best_colors_ = used;
            best_ = color_;
            return;
        }
        const int limit = std::min(used + 1, best_colors_ - 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (int u : adj_[v])
                if (color_[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            color_[v] = c;
            recurse(v + 1, std::max(used, c + 1));
            color_[v] = -1;
        }
    }

    const Graph& g_;
    std::vector<std::vector<int>> adj_;
    BigUint budget_;
    BigUint nodes_ = 0;
    std::vector<int> color_;
    std::vector<int> best_;
    int best_colors_;
};

inline CliquePartition partition_from_coloring(const std::vector<int>& coloring)
{
    CliquePartition part;
    int num_colors = 0;
    for (int c : coloring)
        num_colors = std::max(num_colors, c + 1);
    part.blocks.assign(num_colors, {});
    for (std::size_t v = 0; v < coloring.size(); ++v)
        part.blocks[coloring[v]].push_back(static_cast<int>(v));
    return part;
}

} // namespace detail

// Minimum clique partition, computed as an optimal coloring of the
// complement graph; its size is the chromatic number of the complement.
inline CliquePartition clique_cover_exact(const Graph& g, const BigUint& budget = kDefaultBudget)
{
    detail::ColoringSearch search(g.complement(), budget);
    return detail::partition_from_coloring(search.solve());
}

// Greedy clique partition via DSATUR coloring of the complement. Ties are
// broken by saturation degree descending, then degree descending, then
// vertex index ascending; colors are assigned smallest-first.
inline CliquePartition clique_cover_greedy(const Graph& g)
{
    const Graph comp = g.complement();
    const int n = comp.num_vertices;
    const auto adj = comp.adjacency();
    std::vector<int> color(n, -1);
    std::vector<std::vector<bool>> neighbor_colors(n);
    std::vector<int> saturation(n, 0);
    for (int i = 0; i < n; ++i)
        neighbor_colors[i].assign(n + 1, false);

    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0)
                continue;
            if (pick < 0 || saturation[v] > saturation[pick] ||
                (saturation[v] == saturation[pick] && adj[v].size() > adj[pick].size()))
                pick = v;
        }
        int c = 0;
        while (neighbor_colors[pick][c])
            ++c;
        color[pick] = c;
        for (int u : adj[pick])
            if (color[u] < 0 && !neighbor_colors[u][c]) {
                neighbor_colors[u][c] = true;
                ++saturation[u];
            }
    }
    return detail::partition_from_coloring(color);
}

// One transmission per block: the sum (all coefficients 1) of the distinct
// packets wanted inside the block. Compatibility guarantees every client
// can subtract the other terms from its has set, so each client decodes
// from its single block row.
inline Matrix transmissions_from_partition(const Instance& inst, const CliquePartition& part,
                                           const Field& field)
{
    if (!is_normalized(inst))
        fail(ErrorKind::not_normalized, "transmissions need singleton wants; normalize first");
    const Graph g = build_compatibility_graph(inst);
    std::vector<int> seen(inst.clients.size(), 0);
    for (const auto& block : part.blocks)
        for (int v : block) {
            if (v < 0 || v >= static_cast<int>(inst.clients.size()) || seen[v]++)
                fail(ErrorKind::invalid_param, "blocks must partition the client set");
        }
    for (int v = 0; v < static_cast<int>(inst.clients.size()); ++v)
        if (!seen[v])
            fail(ErrorKind::invalid_param, "blocks must partition the client set");
    const std::size_t n = inst.num_packets;
    Matrix m(field, 0, n);
    for (const auto& block : part.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = i + 1; j < block.size(); ++j)
                if (!g.has_edge(block[i], block[j]))
                    fail(ErrorKind::not_a_clique,
                         "block contains incompatible clients " + std::to_string(block[i]) +
                             " and " + std::to_string(block[j]));
        std::vector<std::uint8_t> row(n, 0);
        for (int v : block)
            row[inst.clients[v].wants[0]] = 1;
        m.append_row(row);
    }
    return m;
}

// --- Partition JSON: {"blocks": [[int,...],...]} ------------------------

inline nlohmann::ordered_json to_json(const CliquePartition& p)
{
    nlohmann::ordered_json j;
    j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : p.blocks)
        j["blocks"].push_back(b);
    return j;
}

inline CliquePartition partition_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
        fail(ErrorKind::parse, "partition JSON needs a blocks array");
    CliquePartition p;
    for (const auto& jb : j["blocks"]) {
        if (!jb.is_array())
            fail(ErrorKind::parse, "each block must be an array");
        std::vector<int> block;
        for (const auto& e : jb) {
            if (!e.is_number_integer())
                fail(ErrorKind::parse, "block entries must be integers");
            block.push_back(e.get<int>());
        }
        p.blocks.push_back(std::move(block));
    }
    return p;
}

} // namespace indexcode
