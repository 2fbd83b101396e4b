#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "cgsym/errors.hpp"
#include "cgsym/graph.hpp"
#include "cgsym/polynomial.hpp"

namespace cgsym {

/// A three-step walk (u1,u2,u3,u4): an optional arrow u1 -> u2, an optional
/// undirected edge u2 - u3, and an optional reversed arrow u4 -> u3.
struct Cup {
    int u1, u2, u3, u4;
    bool operator==(const Cup&) const = default;
};

/// Four copies of the vertex set with edges only between consecutive
/// layers. Identity steps (v,v) are always present; the other steps follow
/// the cup rules. Vertex-disjoint source-to-sink paths are exactly the
/// self-avoiding cup systems.
struct CupLayerGraph {
    int m = 0;
    // step[k][v] = successors of v from layer k+1 to layer k+2 (k = 0,1,2)
    std::array<std::vector<VertexSet>, 3> step;
    VertexSet sources, sinks;
};

inline CupLayerGraph build_layer_graph(const HybridGraph& h, VertexSet a, VertexSet b) {
    if (a.size() != b.size())
        throw size_mismatch("layer graph: |A| = " + std::to_string(a.size()) +
                            " but |B| = " + std::to_string(b.size()));
    CupLayerGraph g;
    g.m = h.vertex_count();
    for (auto& s : g.step) s.assign(static_cast<std::size_t>(g.m) + 1, VertexSet{});
    for (int v = 1; v <= g.m; ++v) {
        g.step[0][static_cast<std::size_t>(v)] =
            VertexSet::single(v) | h.children_of(v);
        g.step[1][static_cast<std::size_t>(v)] =
            VertexSet::single(v) | h.neighbors_of(v);
        g.step[2][static_cast<std::size_t>(v)] =
            VertexSet::single(v) | h.parents_of(v);
    }
    g.sources = a;
    g.sinks = b;
    return g;
}

namespace detail {

/// Unit-capacity max-flow (breadth-first augmentation) on the node-split
/// layer graph; stops once `want` paths are found.
inline int disjoint_path_count(const CupLayerGraph& g, int want) {
    const int m = g.m;
    // node ids: 0 = source, 1 = sink, then (layer, vertex) in/out pairs
    auto node_in = [m](int layer, int v) { return 2 + 2 * (layer * m + (v - 1)); };
    auto node_out = [&node_in](int layer, int v) { return node_in(layer, v) + 1; };
    const int node_count = 2 + 8 * m;

    struct Arc {
        int to;
        int cap;
        std::size_t rev;
    };
    std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(node_count));
    auto add_arc = [&](int from, int to) {
        adj[static_cast<std::size_t>(from)].push_back(
            {to, 1, adj[static_cast<std::size_t>(to)].size()});
        adj[static_cast<std::size_t>(to)].push_back(
            {from, 0, adj[static_cast<std::size_t>(from)].size() - 1});
    };

    for (int layer = 0; layer < 4; ++layer)
        for (int v = 1; v <= m; ++v) add_arc(node_in(layer, v), node_out(layer, v));
    for (int layer = 0; layer < 3; ++layer)
        for (int v = 1; v <= m; ++v)
            for (int w : g.step[static_cast<std::size_t>(layer)][static_cast<std::size_t>(v)]
                             .elements())
                add_arc(node_out(layer, v), node_in(layer + 1, w));
    for (int v : g.sources.elements()) add_arc(0, node_in(0, v));
    for (int v : g.sinks.elements()) add_arc(node_out(3, v), 1);

    int flow = 0;
    std::vector<int> prev_node(static_cast<std::size_t>(node_count));
    std::vector<std::size_t> prev_arc(static_cast<std::size_t>(node_count));
    while (flow < want) {
        std::fill(prev_node.begin(), prev_node.end(), -1);
        std::queue<int> q;
        q.push(0);
        prev_node[0] = 0;
        while (!q.empty() && prev_node[1] < 0) {
            int u = q.front();
            q.pop();
            for (std::size_t k = 0; k < adj[static_cast<std::size_t>(u)].size(); ++k) {
                const Arc& arc = adj[static_cast<std::size_t>(u)][k];
                if (arc.cap > 0 && prev_node[static_cast<std::size_t>(arc.to)] < 0) {
                    prev_node[static_cast<std::size_t>(arc.to)] = u;
                    prev_arc[static_cast<std::size_t>(arc.to)] = k;
                    q.push(arc.to);
                }
            }
        }
        if (prev_node[1] < 0) break;
        for (int v = 1; v != 0; v = prev_node[static_cast<std::size_t>(v)]) {
            int u = prev_node[static_cast<std::size_t>(v)];
            Arc& arc = adj[static_cast<std::size_t>(u)][prev_arc[static_cast<std::size_t>(v)]];
            arc.cap -= 1;
            adj[static_cast<std::size_t>(arc.to)][arc.rev].cap += 1;
        }
        ++flow;
    }
    return flow;
}

}  // namespace detail

/// Whether |A| cups can run from A to B with pairwise distinct entries at
/// every one of the four positions.
inline bool has_self_avoiding_cup_system(const HybridGraph& h, VertexSet a, VertexSet b) {
    CupLayerGraph g = build_layer_graph(h, a, b);
    int want = a.size();
    return detail::disjoint_path_count(g, want) == want;
}

/// det K[A,B] vanishes identically on the model exactly when no
/// self-avoiding cup system runs from A to B.
inline bool vanishing_minor(const HybridGraph& h, VertexSet a, VertexSet b) {
    return !has_self_avoiding_cup_system(h, a, b);
}

/// Guaranteed-to-vanish minors: for each vertex u, D = its children closed
/// under arrows, paired against every unlinked v outside D+u. Ordered by
/// (u, v).
inline std::vector<std::pair<VertexSet, VertexSet>> det00_instances(const HybridGraph& h) {
    if (!is_nf_chain_graph(h))
        throw domain_error("det00_instances: graph is not a chain graph without flags");
    std::vector<std::pair<VertexSet, VertexSet>> out;
    const int m = h.vertex_count();
    for (int u = 1; u <= m; ++u) {
        VertexSet d = h.children_of(u);
        for (;;) {
            VertexSet grown = d | h.children_of(d);
            if (grown == d) break;
            d = grown;
        }
        for (int v = 1; v <= m; ++v) {
            if (v == u || d.contains(v) || h.linked(u, v)) continue;
            out.emplace_back(d | VertexSet::single(u), d | VertexSet::single(v));
        }
    }
    return out;
}

namespace detail {

inline void require_equal_sizes(VertexSet a, VertexSet b) {
    if (a.size() != b.size())
        throw size_mismatch("minor: |A| = " + std::to_string(a.size()) +
                            " but |B| = " + std::to_string(b.size()));
}

/// Symbolic K = (I - Lambda) Omega (I - Lambda)^T with one variable per
/// arrow, per undirected edge, and per diagonal entry.
inline std::vector<std::vector<Poly>> symbolic_concentration(const HybridGraph& h) {
    const int m = h.vertex_count();
    std::vector<std::vector<Poly>> f(static_cast<std::size_t>(m),
                                     std::vector<Poly>(static_cast<std::size_t>(m)));
    std::vector<std::vector<Poly>> omega = f;
    for (int i = 1; i <= m; ++i) {
        f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] =
            Poly::constant(1);
        omega[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] =
            Poly::variable(var::omg(i, i));
    }
    for (auto [i, j] : h.directed_edges())
        f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
            Poly::variable(var::lam(i, j), -1);
    for (auto [i, j] : h.undirected_edges()) {
        Poly w = Poly::variable(var::omg(i, j));
        omega[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = w;
        omega[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = w;
    }
    auto mul = [m](const std::vector<std::vector<Poly>>& x,
                   const std::vector<std::vector<Poly>>& y) {
        std::vector<std::vector<Poly>> r(static_cast<std::size_t>(m),
                                         std::vector<Poly>(static_cast<std::size_t>(m)));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) {
                if (x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].is_zero())
                    continue;
                for (int j = 0; j < m; ++j)
                    r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                        x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                            y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        return r;
    };
    std::vector<std::vector<Poly>> ft(static_cast<std::size_t>(m),
                                      std::vector<Poly>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            ft[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return mul(mul(f, omega), ft);
}

inline Poly poly_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t d = m.size();
    std::vector<int> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = static_cast<int>(i);
    Poly det;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Poly prod = Poly::constant(sign);
        for (std::size_t i = 0; i < d && !prod.is_zero(); ++i)
            prod = prod * m[i][static_cast<std::size_t>(perm[i])];
        det = det + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace detail

/// Fully expanded det K[A,B] with exact integer coefficients. Limited to
/// m <= 6 and |A| <= 4; beyond that the expansion blows up and the flow
/// oracle should be used instead.
inline Poly expand_subdeterminant(const HybridGraph& h, VertexSet a, VertexSet b) {
    detail::require_equal_sizes(a, b);
    if (h.vertex_count() > 6 || a.size() > 4)
        throw too_large("expand_subdeterminant: supports m <= 6 and |A| <= 4");
    auto k = detail::symbolic_concentration(h);
    auto ra = a.elements(), rb = b.elements();
    std::vector<std::vector<Poly>> sub(ra.size(), std::vector<Poly>(rb.size()));
    for (std::size_t i = 0; i < ra.size(); ++i)
        for (std::size_t j = 0; j < rb.size(); ++j)
            sub[i][j] = k[static_cast<std::size_t>(ra[i] - 1)]
                         [static_cast<std::size_t>(rb[j] - 1)];
    return detail::poly_det(sub);
}

/// One cup per source, endpoints exhausting B; `sign` is the sign of the
/// induced bijection with both A and B read in ascending order.
struct CupSystem {
    std::vector<Cup> cups;  // cups[k] starts at the k-th smallest member of A
    int sign = 1;

    bool self_avoiding() const {
        for (int pos = 0; pos < 4; ++pos) {
            VertexSet seen;
            for (const Cup& c : cups) {
                int v = pos == 0 ? c.u1 : pos == 1 ? c.u2 : pos == 2 ? c.u3 : c.u4;
                if (seen.contains(v)) return false;
                seen.insert(v);
            }
        }
        return true;
    }
};

/// The signed weight sgn(U) * w(U): product of matrix entries along each
/// cup, so every arrow contributes a factor -lam and every step through
/// Omega contributes one omg.
inline Poly cup_system_weight(const CupSystem& u) {
    Poly w = Poly::constant(u.sign);
    for (const Cup& c : u.cups) {
        if (c.u1 != c.u2) w = w * Poly::variable(var::lam(c.u1, c.u2), -1);
        w = w * Poly::variable(var::omg(c.u2, c.u3));
        if (c.u4 != c.u3) w = w * Poly::variable(var::lam(c.u4, c.u3), -1);
    }
    return w;
}

namespace detail {

inline std::vector<Cup> cups_between(const HybridGraph& h, int from, int to) {
    std::vector<Cup> out;
    for (int j : (VertexSet::single(from) | h.children_of(from)).elements())
        for (int k : (VertexSet::single(j) | h.neighbors_of(j)).elements())
            if (k == to || h.has_arrow(to, k)) out.push_back({from, j, k, to});
    return out;
}

}  // namespace detail

/// All self-avoiding cup systems from A to B by direct backtracking, with
/// per-position conflicts pruned as cups are placed.
inline std::vector<CupSystem> self_avoiding_cup_systems(const HybridGraph& h,
                                                        VertexSet a, VertexSet b) {
    detail::require_equal_sizes(a, b);
    auto sources = a.elements();
    auto sinks = b.elements();
    const std::size_t d = sources.size();
    std::vector<int> target_pos(d);  // sources[k] -> sinks[target_pos[k]]
    std::vector<bool> used(d, false);
    std::array<VertexSet, 4> taken;  // entries occupied per cup position
    std::vector<Cup> chosen;
    std::vector<CupSystem> out;

    auto sign_of = [&]() {
        int sign = 1;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (target_pos[i] > target_pos[j]) sign = -sign;
        return sign;
    };

    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == d) {
            out.push_back({chosen, sign_of()});
            return;
        }
        for (std::size_t t = 0; t < d; ++t) {
            if (used[t]) continue;
            used[t] = true;
            target_pos[k] = static_cast<int>(t);
            for (const Cup& c : detail::cups_between(h, sources[k], sinks[t])) {
                if (taken[0].contains(c.u1) || taken[1].contains(c.u2) ||
                    taken[2].contains(c.u3) || taken[3].contains(c.u4))
                    continue;
                taken[0].insert(c.u1);
                taken[1].insert(c.u2);
                taken[2].insert(c.u3);
                taken[3].insert(c.u4);
                chosen.push_back(c);
                go(k + 1);
                chosen.pop_back();
                taken[0].erase(c.u1);
                taken[1].erase(c.u2);
                taken[2].erase(c.u3);
                taken[3].erase(c.u4);
            }
            used[t] = false;
        }
    };
    go(0);
    return out;
}

/// Sum of sgn(U) * w(U) over the self-avoiding cup systems; agrees with
/// expand_subdeterminant term by term.
inline Poly cup_system_expansion(const HybridGraph& h, VertexSet a, VertexSet b) {
    Poly total;
    for (const CupSystem& u : self_avoiding_cup_systems(h, a, b))
        total = total + cup_system_weight(u);
    return total;
}

}  // namespace cgsym
