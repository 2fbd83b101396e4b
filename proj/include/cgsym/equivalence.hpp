#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cgsym/errors.hpp"
#include "cgsym/graph.hpp"

namespace cgsym {

/// All arrows running from one component into another.
struct MetaArrow {
    VertexSet source;
    VertexSet target;
    std::vector<Edge> arrows;

    bool operator==(const MetaArrow&) const = default;
};

namespace detail {

inline void require_nf(const HybridGraph& h, const char* op) {
    if (!is_nf_chain_graph(h))
        throw domain_error(std::string(op) + ": graph is not a chain graph without flags (" +
                           to_string(classify(h)) + ")");
}

}  // namespace detail

/// Markov equivalence: same skeleton and the same immoralities.
inline bool equivalent(const HybridGraph& g, const HybridGraph& h) {
    detail::require_nf(g, "equivalent");
    detail::require_nf(h, "equivalent");
    if (g.vertex_count() != h.vertex_count())
        throw domain_error("equivalent: graphs have different vertex counts");
    return skeleton(g) == skeleton(h) && immoralities(g) == immoralities(h);
}

/// Meta-arrows T => T' that may be turned into undirected edges without
/// leaving the equivalence class: p(T') restricted to T is a clique of the
/// induced graph on T, and the parents of T' outside T are exactly the
/// parents of T. Sorted by (min of source, min of target).
inline std::vector<MetaArrow> legal_mergings(const HybridGraph& h) {
    detail::require_nf(h, "legal_mergings");
    auto part = components(h);
    std::map<std::pair<int, int>, MetaArrow> metas;
    for (auto [i, j] : h.directed_edges()) {
        int a = part.component_index[static_cast<std::size_t>(i)];
        int b = part.component_index[static_cast<std::size_t>(j)];
        auto& ma = metas[{a, b}];
        ma.source = part.blocks[static_cast<std::size_t>(a)];
        ma.target = part.blocks[static_cast<std::size_t>(b)];
        ma.arrows.emplace_back(i, j);
    }
    std::vector<MetaArrow> out;
    for (auto& [key, ma] : metas) {
        VertexSet p_target = h.parents_of(ma.target);
        VertexSet inside = p_target & ma.source;
        bool clique = true;
        auto vs = inside.elements();
        for (std::size_t x = 0; x < vs.size() && clique; ++x)
            for (std::size_t y = x + 1; y < vs.size() && clique; ++y)
                if (!h.has_undirected(vs[x], vs[y])) clique = false;
        if (!clique) continue;
        if ((p_target - ma.source) != h.parents_of(ma.source)) continue;
        out.push_back(ma);
    }
    std::sort(out.begin(), out.end(), [](const MetaArrow& a, const MetaArrow& b) {
        return std::pair(a.source.min(), a.target.min()) <
               std::pair(b.source.min(), b.target.min());
    });
    return out;
}

/// Replaces every arrow of the meta-arrow by an undirected edge. Does not
/// check legality, only that `ma` really is a meta-arrow of `h`.
inline HybridGraph merge(const HybridGraph& h, const MetaArrow& ma) {
    auto part = components(h);
    auto is_block = [&](VertexSet s) {
        return std::find(part.blocks.begin(), part.blocks.end(), s) != part.blocks.end();
    };
    if (!is_block(ma.source) || !is_block(ma.target))
        throw error("merge: not a meta-arrow of this graph (components differ)");
    std::vector<Edge> expected;
    for (auto [i, j] : h.directed_edges())
        if (ma.source.contains(i) && ma.target.contains(j)) expected.emplace_back(i, j);
    std::vector<Edge> given = ma.arrows;
    std::sort(given.begin(), given.end());
    if (expected.empty() || given != expected)
        throw error("merge: not a meta-arrow of this graph");

    std::vector<Edge> directed, undirected = h.undirected_edges();
    for (auto [i, j] : h.directed_edges()) {
        if (ma.source.contains(i) && ma.target.contains(j))
            undirected.emplace_back(std::min(i, j), std::max(i, j));
        else
            directed.emplace_back(i, j);
    }
    return HybridGraph(h.vertex_count(), std::move(directed), std::move(undirected));
}

struct EssentialGraph {
    HybridGraph graph;
    std::vector<MetaArrow> provenance;  // mergings applied, in order
};

/// The unique equivalent graph with the most undirected edges, obtained by
/// applying the first legal merging until none applies. Each merging turns
/// at least one arrow into an undirected edge, so the loop terminates.
inline EssentialGraph essential_graph(const HybridGraph& h) {
    detail::require_nf(h, "essential_graph");
    EssentialGraph out{h, {}};
    for (;;) {
        auto ms = legal_mergings(out.graph);
        if (ms.empty()) return out;
        out.graph = merge(out.graph, ms.front());
        out.provenance.push_back(ms.front());
    }
}

struct CoreData {
    VertexSet idle;
    VertexSet core;
};

/// The maximal idle set: a union of components in which all vertices are
/// pairwise linked and into which every outside vertex points. Vertices
/// not linked to everything can never be idle; the rest shrink to the
/// greatest fixpoint of "an undirected neighbor or a child outside the
/// candidate expels you".
inline CoreData idle_core(const HybridGraph& h) {
    if (!is_chain_graph(h)) throw domain_error("idle_core: graph is not a chain graph");
    const int m = h.vertex_count();
    VertexSet all = VertexSet::full(m);
    VertexSet cand;
    for (int j = 1; j <= m; ++j) {
        bool linked_to_all = true;
        for (int i = 1; i <= m && linked_to_all; ++i)
            if (i != j && !h.linked(i, j)) linked_to_all = false;
        if (linked_to_all) cand.insert(j);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j : cand.elements()) {
            VertexSet must_join = h.neighbors_of(j) | h.children_of(j);
            if (!must_join.subset_of(cand)) {
                cand.erase(j);
                changed = true;
            }
        }
    }
    return CoreData{cand, all - cand};
}

struct CliqueSeparatorData {
    std::vector<VertexSet> cliques;              // running intersection order
    std::map<VertexSet, int> separators;         // multiplicity per separator
};

namespace detail {

/// Maximum cardinality search restricted to `verts`, with chordality
/// certification. Tie-breaking is by smallest label unless a seed is given.
inline CliqueSeparatorData mcs_cliques(const HybridGraph& u, VertexSet verts,
                                       std::optional<std::uint64_t> tie_seed) {
    std::vector<int> order;
    std::vector<VertexSet> earlier_nbrs;
    VertexSet numbered;
    std::mt19937_64 rng(tie_seed.value_or(0));
    auto remaining = verts;
    while (!remaining.empty()) {
        int best = -1, best_weight = -1, ties = 0;
        for (int v : remaining.elements()) {
            int w = (u.neighbors_of(v) & numbered).size();
            if (w > best_weight) {
                best_weight = w;
                best = v;
                ties = 1;
            } else if (w == best_weight && tie_seed) {
                // reservoir choice among tied vertices
                ++ties;
                if (rng() % static_cast<std::uint64_t>(ties) == 0) best = v;
            }
        }
        VertexSet s = u.neighbors_of(best) & numbered;
        if (!s.empty()) {
            // the earlier neighbors must already be mutually adjacent via
            // the latest of them, otherwise a chordless cycle exists
            int latest = -1;
            std::size_t latest_pos = 0;
            for (std::size_t k = 0; k < order.size(); ++k)
                if (s.contains(order[k])) {
                    latest = order[k];
                    latest_pos = k;
                }
            (void)latest_pos;
            for (int w : (s - VertexSet::single(latest)).elements())
                if (!u.has_undirected(w, latest))
                    throw not_decomposable(
                        "not decomposable: vertices " + std::to_string(w) + " and " +
                        std::to_string(latest) +
                        " lie on a chordless cycle through " + std::to_string(best));
        }
        order.push_back(best);
        earlier_nbrs.push_back(s);
        numbered.insert(best);
        remaining.erase(best);
    }

    std::vector<VertexSet> candidates;
    for (std::size_t k = 0; k < order.size(); ++k)
        candidates.push_back(earlier_nbrs[k] | VertexSet::single(order[k]));
    CliqueSeparatorData out;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        bool maximal = true;
        for (std::size_t l = 0; l < candidates.size() && maximal; ++l)
            if (l != k && candidates[k] != candidates[l] &&
                candidates[k].subset_of(candidates[l]))
                maximal = false;
        if (maximal && (out.cliques.empty() || out.cliques.back() != candidates[k]))
            out.cliques.push_back(candidates[k]);
    }
    return out;
}

}  // namespace detail

/// Maximal cliques of a decomposable undirected graph in running
/// intersection order, with separator multiplicities.
inline CliqueSeparatorData cliques_and_separators(
    const HybridGraph& u, VertexSet verts,
    std::optional<std::uint64_t> tie_seed = std::nullopt) {
    if (!u.directed_edges().empty())
        throw domain_error("cliques_and_separators: graph has directed edges");
    CliqueSeparatorData data = detail::mcs_cliques(u, verts, tie_seed);
    VertexSet seen;
    for (std::size_t k = 0; k < data.cliques.size(); ++k) {
        if (k > 0) {
            VertexSet sep = data.cliques[k] & seen;
            bool contained = false;
            for (std::size_t l = 0; l < k && !contained; ++l)
                if (sep.subset_of(data.cliques[l])) contained = true;
            if (!contained)
                throw error("internal: clique order violates the running "
                            "intersection property");
            ++data.separators[sep];
        }
        seen |= data.cliques[k];
    }
    return data;
}

inline CliqueSeparatorData cliques_and_separators(
    const HybridGraph& u, std::optional<std::uint64_t> tie_seed = std::nullopt) {
    return cliques_and_separators(u, VertexSet::full(u.vertex_count()), tie_seed);
}

}  // namespace cgsym
