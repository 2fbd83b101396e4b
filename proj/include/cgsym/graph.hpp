#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cgsym/errors.hpp"
#include "cgsym/vertex_set.hpp"

namespace cgsym {

using Edge = std::pair<int, int>;

enum class GraphClass {
    Undirected,
    Dag,
    NfChainGraph,
    ChainGraphWithFlags,
    NotChainGraph,
};

inline const char* to_string(GraphClass c) {
    switch (c) {
        case GraphClass::Undirected: return "undirected";
        case GraphClass::Dag: return "dag";
        case GraphClass::NfChainGraph: return "nf-chain-graph";
        case GraphClass::ChainGraphWithFlags: return "chain-graph-with-flags";
        case GraphClass::NotChainGraph: return "not-chain-graph";
    }
    return "?";
}

/// A graph on vertices 1..m with directed edges i -> j and undirected
/// edges i -- j. No loops; each vertex pair carries at most one link.
/// Immutable after construction; all operations below are pure.
class HybridGraph {
public:
    HybridGraph(int m, std::vector<Edge> directed, std::vector<Edge> undirected)
        : m_(m), directed_(std::move(directed)), undirected_(std::move(undirected)) {
        if (m_ < 1 || m_ > kMaxVertices)
            throw error("vertex count must be between 1 and " +
                        std::to_string(kMaxVertices) + ", got " + std::to_string(m_));
        for (auto& [i, j] : undirected_) {
            check_vertex(i);
            check_vertex(j);
            if (i > j) std::swap(i, j);
        }
        for (auto [i, j] : directed_) {
            check_vertex(i);
            check_vertex(j);
        }
        std::sort(directed_.begin(), directed_.end());
        std::sort(undirected_.begin(), undirected_.end());
        parents_.assign(static_cast<std::size_t>(m_) + 1, VertexSet{});
        children_.assign(static_cast<std::size_t>(m_) + 1, VertexSet{});
        neighbors_.assign(static_cast<std::size_t>(m_) + 1, VertexSet{});
        for (auto [i, j] : directed_) {
            if (i == j) throw error("loop declared at vertex " + std::to_string(i));
            if (linked(i, j)) throw error("duplicate or conflicting link between " +
                                          std::to_string(i) + " and " + std::to_string(j));
            children_[static_cast<std::size_t>(i)].insert(j);
            parents_[static_cast<std::size_t>(j)].insert(i);
        }
        for (auto [i, j] : undirected_) {
            if (i == j) throw error("loop declared at vertex " + std::to_string(i));
            if (linked(i, j)) throw error("duplicate or conflicting link between " +
                                          std::to_string(i) + " and " + std::to_string(j));
            neighbors_[static_cast<std::size_t>(i)].insert(j);
            neighbors_[static_cast<std::size_t>(j)].insert(i);
        }
    }

    int vertex_count() const { return m_; }
    const std::vector<Edge>& directed_edges() const { return directed_; }
    const std::vector<Edge>& undirected_edges() const { return undirected_; }

    bool has_arrow(int i, int j) const {
        return children_[static_cast<std::size_t>(i)].contains(j);
    }
    bool has_undirected(int i, int j) const {
        return neighbors_[static_cast<std::size_t>(i)].contains(j);
    }
    bool linked(int i, int j) const {
        return has_arrow(i, j) || has_arrow(j, i) || has_undirected(i, j);
    }

    VertexSet parents_of(int i) const { return parents_[static_cast<std::size_t>(i)]; }
    VertexSet children_of(int i) const { return children_[static_cast<std::size_t>(i)]; }
    VertexSet neighbors_of(int i) const { return neighbors_[static_cast<std::size_t>(i)]; }

    VertexSet parents_of(VertexSet a) const {
        VertexSet out;
        for (int v : a.elements()) out |= parents_of(v);
        return out;
    }
    VertexSet children_of(VertexSet a) const {
        VertexSet out;
        for (int v : a.elements()) out |= children_of(v);
        return out;
    }

    bool operator==(const HybridGraph& o) const {
        return m_ == o.m_ && directed_ == o.directed_ && undirected_ == o.undirected_;
    }

private:
    void check_vertex(int v) const {
        if (v < 1 || v > m_)
            throw error("vertex out of range: " + std::to_string(v) +
                        " (graph has " + std::to_string(m_) + " vertices)");
    }

    int m_;
    std::vector<Edge> directed_;
    std::vector<Edge> undirected_;
    std::vector<VertexSet> parents_, children_, neighbors_;
};

struct Neighborhoods {
    VertexSet parents;
    VertexSet children;
    VertexSet neighbors;
    VertexSet closed;  // {i} together with neighbors and children
};

inline Neighborhoods neighborhoods(const HybridGraph& h, int i) {
    Neighborhoods n;
    n.parents = h.parents_of(i);
    n.children = h.children_of(i);
    n.neighbors = h.neighbors_of(i);
    n.closed = (VertexSet::single(i) | n.neighbors) | n.children;
    return n;
}

struct ComponentPartition {
    std::vector<VertexSet> blocks;     // ordered by smallest member
    std::vector<int> component_index;  // 1-based vertex -> index into blocks
};

/// Partition of the vertices by connectivity over undirected edges only.
inline ComponentPartition components(const HybridGraph& h) {
    const int m = h.vertex_count();
    std::vector<int> root(static_cast<std::size_t>(m) + 1);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int v) {
        while (root[static_cast<std::size_t>(v)] != v) {
            root[static_cast<std::size_t>(v)] =
                root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
            v = root[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (auto [i, j] : h.undirected_edges()) {
        int a = find(i), b = find(j);
        if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::map<int, VertexSet> by_root;
    for (int v = 1; v <= m; ++v) by_root[find(v)].insert(v);

    ComponentPartition part;
    part.component_index.assign(static_cast<std::size_t>(m) + 1, -1);
    for (auto& [r, block] : by_root) {
        for (int v : block.elements())
            part.component_index[static_cast<std::size_t>(v)] =
                static_cast<int>(part.blocks.size());
        part.blocks.push_back(block);
    }
    return part;
}

namespace detail {

/// Digraph on the blocks of `part`: one arc per pair of blocks joined by
/// at least one arrow. Returns {adjacency, acyclic}.
inline std::pair<std::vector<std::vector<int>>, bool> component_digraph(
    const HybridGraph& h, const ComponentPartition& part) {
    const auto n = part.blocks.size();
    std::vector<std::vector<int>> adj(n);
    std::vector<std::uint64_t> seen(n, 0);
    for (auto [i, j] : h.directed_edges()) {
        int a = part.component_index[static_cast<std::size_t>(i)];
        int b = part.component_index[static_cast<std::size_t>(j)];
        if (a == b) return {adj, false};  // arrow inside a component
        if (!((seen[static_cast<std::size_t>(a)] >> b) & 1u)) {
            seen[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
            adj[static_cast<std::size_t>(a)].push_back(b);
        }
    }
    // Kahn's algorithm; a leftover vertex means a directed cycle of blocks.
    std::vector<int> indeg(n, 0);
    for (const auto& outs : adj)
        for (int b : outs) ++indeg[static_cast<std::size_t>(b)];
    std::queue<int> q;
    for (std::size_t a = 0; a < n; ++a)
        if (indeg[a] == 0) q.push(static_cast<int>(a));
    std::size_t done = 0;
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        ++done;
        for (int b : adj[static_cast<std::size_t>(a)])
            if (--indeg[static_cast<std::size_t>(b)] == 0) q.push(b);
    }
    return {adj, done == n};
}

}  // namespace detail

inline GraphClass classify(const HybridGraph& h) {
    auto part = components(h);
    auto [adj, acyclic] = detail::component_digraph(h, part);
    (void)adj;
    if (!acyclic) return GraphClass::NotChainGraph;
    for (auto [i, j] : h.directed_edges())
        for (int k : h.neighbors_of(j).elements())
            if (k != i && !h.linked(i, k)) return GraphClass::ChainGraphWithFlags;
    if (h.directed_edges().empty()) return GraphClass::Undirected;
    if (h.undirected_edges().empty()) return GraphClass::Dag;
    return GraphClass::NfChainGraph;
}

inline bool is_nf_chain_graph(const HybridGraph& h) {
    GraphClass c = classify(h);
    return c == GraphClass::Undirected || c == GraphClass::Dag ||
           c == GraphClass::NfChainGraph;
}

inline bool is_chain_graph(const HybridGraph& h) {
    return classify(h) != GraphClass::NotChainGraph;
}

/// A directed acyclic graph; edgeless graphs qualify.
inline bool is_dag(const HybridGraph& h) {
    return h.undirected_edges().empty() && classify(h) != GraphClass::NotChainGraph;
}

inline bool is_undirected(const HybridGraph& h) { return h.directed_edges().empty(); }

inline HybridGraph skeleton(const HybridGraph& h) {
    std::vector<Edge> und = h.undirected_edges();
    for (auto [i, j] : h.directed_edges()) und.emplace_back(std::min(i, j), std::max(i, j));
    return HybridGraph(h.vertex_count(), {}, std::move(und));
}

/// An induced subgraph i -> j <- k with i, k not linked,
/// normalized as (min(i,k), j, max(i,k)).
struct Immorality {
    int a, child, b;
    auto operator<=>(const Immorality&) const = default;
};

inline std::vector<Immorality> immoralities(const HybridGraph& h) {
    std::vector<Immorality> out;
    for (int j = 1; j <= h.vertex_count(); ++j) {
        auto ps = h.parents_of(j).elements();
        for (std::size_t x = 0; x < ps.size(); ++x)
            for (std::size_t y = x + 1; y < ps.size(); ++y)
                if (!h.linked(ps[x], ps[y])) out.push_back({ps[x], j, ps[y]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Parses the text graph format: comment lines start with '#', the first
/// meaningful line is "vertices: <m>", and every following non-empty line
/// is "<i> -> <j>" or "<i> -- <j>" with 1-based labels.
inline HybridGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_count = false;
    int m = 0;
    std::vector<Edge> directed, undirected;
    // (min,max) -> normalized edge descriptor, to report duplicates with a line number
    std::map<Edge, std::string> seen;

    auto fail = [&](const std::string& msg) -> void { throw parse_error(msg, lineno); };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank
        if (tok[0] == '#') continue;
        if (!have_count) {
            std::string value = tok;
            // accept "vertices: 5", "vertices:5" and "vertices : 5"
            if (value == "vertices" || value == "vertices:") {
                if (value == "vertices") {
                    std::string colon;
                    if (!(ls >> colon) || (colon != ":" && colon[0] != ':'))
                        fail("expected 'vertices: <m>'");
                    if (colon.size() > 1)
                        value = colon.substr(1);
                    else if (!(ls >> value))
                        fail("expected 'vertices: <m>'");
                } else if (!(ls >> value)) {
                    fail("expected 'vertices: <m>'");
                }
            } else if (value.rfind("vertices:", 0) == 0) {
                value = value.substr(9);
            } else {
                fail("expected 'vertices: <m>' before any edge");
            }
            try {
                std::size_t pos = 0;
                m = std::stoi(value, &pos);
                if (pos != value.size()) fail("expected 'vertices: <m>'");
            } catch (const std::logic_error&) {
                fail("expected 'vertices: <m>'");
            }
            if (m < 1 || m > kMaxVertices)
                fail("vertex count must be between 1 and " +
                     std::to_string(kMaxVertices) + ", got " + std::to_string(m));
            std::string extra;
            if (ls >> extra) fail("unexpected token after vertex count");
            have_count = true;
            continue;
        }
        std::string op, jtok, extra;
        if (!(ls >> op >> jtok)) fail("expected '<i> -> <j>' or '<i> -- <j>'");
        if (ls >> extra) fail("unexpected token after edge");
        int i = 0, j = 0;
        try {
            std::size_t p1 = 0, p2 = 0;
            i = std::stoi(tok, &p1);
            j = std::stoi(jtok, &p2);
            if (p1 != tok.size() || p2 != jtok.size()) fail("malformed vertex label");
        } catch (const std::logic_error&) {
            fail("malformed vertex label");
        }
        if (op != "->" && op != "--") fail("unknown edge operator '" + op + "'");
        if (i < 1 || i > m || j < 1 || j > m)
            fail("vertex out of range: " + std::to_string(i < 1 || i > m ? i : j));
        if (i == j) fail("loop declared at vertex " + std::to_string(i));
        std::string desc = op == "->" ? std::to_string(i) + "->" + std::to_string(j)
                                      : std::to_string(std::min(i, j)) + "--" +
                                            std::to_string(std::max(i, j));
        Edge key{std::min(i, j), std::max(i, j)};
        auto [it, inserted] = seen.emplace(key, desc);
        if (!inserted)
            fail((it->second == desc ? "duplicate link between "
                                     : "conflicting link between ") +
                 std::to_string(key.first) + " and " + std::to_string(key.second));
        if (op == "->")
            directed.emplace_back(i, j);
        else
            undirected.emplace_back(key);
    }
    if (!have_count) throw parse_error("missing 'vertices: <m>' line", lineno);
    return HybridGraph(m, std::move(directed), std::move(undirected));
}

/// Inverse of parse_graph: directed edges sorted by (i,j) first, then
/// undirected edges sorted by (min,max).
inline std::string serialize(const HybridGraph& h) {
    std::string out = "vertices: " + std::to_string(h.vertex_count()) + "\n";
    for (auto [i, j] : h.directed_edges())
        out += std::to_string(i) + " -> " + std::to_string(j) + "\n";
    for (auto [i, j] : h.undirected_edges())
        out += std::to_string(i) + " -- " + std::to_string(j) + "\n";
    return out;
}

}  // namespace cgsym
