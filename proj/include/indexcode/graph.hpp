#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "indexcode/errors.hpp"

namespace indexcode {

// Simple undirected graph. Edges are stored as sorted (u, v) pairs with
// u < v, the whole list sorted ascending and duplicate-free.
struct Graph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> e) : num_vertices(n)
    {
        for (auto [u, v] : e)
            add_edge(u, v);
    }

    void add_edge(int u, int v)
    {
        if (u == v)
            fail(ErrorKind::invalid_param, "self-loop not allowed");
        if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
            fail(ErrorKind::invalid_param, "edge endpoint out of range");
        if (u > v)
            std::swap(u, v);
        const auto e = std::make_pair(u, v);
        const auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e)
            edges.insert(it, e);
    }

    bool has_edge(int u, int v) const
    {
        if (u > v)
            std::swap(u, v);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
    }

    std::vector<std::vector<int>> adjacency() const
    {
        std::vector<std::vector<int>> adj(num_vertices);
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    Graph complement() const
    {
        Graph g;
        g.num_vertices = num_vertices;
        for (int u = 0; u < num_vertices; ++u)
            for (int v = u + 1; v < num_vertices; ++v)
                if (!has_edge(u, v))
                    g.edges.emplace_back(u, v);
        return g;
    }

    bool operator==(const Graph& o) const
    {
        return num_vertices == o.num_vertices && edges == o.edges;
    }
};

inline Graph complete_graph(int n)
{
    Graph g;
    g.num_vertices = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.edges.emplace_back(u, v);
    return g;
}

inline Graph cycle_graph(int n)
{
    Graph g;
    g.num_vertices = n;
    for (int u = 0; u < n; ++u)
        g.add_edge(u, (u + 1) % n);
    return g;
}

// --- Graph JSON: {"num_vertices": int, "edges": [[u,v],...]}, u < v ----

inline nlohmann::ordered_json to_json(const Graph& g)
{
    nlohmann::ordered_json j;
    j["num_vertices"] = g.num_vertices;
    j["edges"] = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges)
        j["edges"].push_back({u, v});
    return j;
}

inline std::string serialize(const Graph& g) { return to_json(g).dump(2) + "\n"; }

inline Graph graph_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("num_vertices") || !j.contains("edges"))
        fail(ErrorKind::parse, "graph JSON needs num_vertices and edges");
    if (!j["num_vertices"].is_number_integer())
        fail(ErrorKind::parse, "num_vertices must be an integer");
    Graph g;
    g.num_vertices = j["num_vertices"].get<int>();
    if (g.num_vertices < 0)
        fail(ErrorKind::parse, "num_vertices must be nonnegative");
    if (!j["edges"].is_array())
        fail(ErrorKind::parse, "edges must be an array");
    for (const auto& je : j["edges"]) {
        if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
            !je[1].is_number_integer())
            fail(ErrorKind::parse, "each edge must be a pair of integers");
        int u = je[0].get<int>();
        int v = je[1].get<int>();
        if (u == v)
            fail(ErrorKind::parse, "self-loop in edge list");
        if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices)
            fail(ErrorKind::parse, "edge endpoint out of range");
        if (u > v)
            std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    const auto dup = std::adjacent_find(g.edges.begin(), g.edges.end());
    if (dup != g.edges.end())
        fail(ErrorKind::parse, "duplicate edge (" + std::to_string(dup->first) + "," +
                                   std::to_string(dup->second) + ")");
    return g;
}

inline Graph parse_graph(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::parse, e.what());
    }
    return graph_from_json(j);
}

} // namespace indexcode
