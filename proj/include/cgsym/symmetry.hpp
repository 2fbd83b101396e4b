#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cgsym/equivalence.hpp"
#include "cgsym/errors.hpp"
#include "cgsym/graph.hpp"
#include "cgsym/imset.hpp"
#include "cgsym/permutation.hpp"

namespace cgsym {

/// Support pattern of the identity component of the stabilizer group:
/// allowed(i,j) says the (i,j) entry of a group element may be nonzero.
struct ZeroPattern {
    int m = 0;
    std::vector<VertexSet> allowed_rows;  // row i holds the permitted columns

    bool allowed(int i, int j) const {
        return allowed_rows[static_cast<std::size_t>(i - 1)].contains(j);
    }

    /// Allowed positions off the diagonal, sorted lexicographically.
    std::vector<std::pair<int, int>> off_diagonal_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= m; ++i)
            for (int j : allowed_rows[static_cast<std::size_t>(i - 1)].elements())
                if (j != i) out.emplace_back(i, j);
        return out;
    }
};

/// Vertices with identical closed neighborhoods in the essential graph are
/// collapsed into one class; classes are colored by their size.
struct QuotientGraph {
    std::vector<VertexSet> classes;       // ordered by smallest member
    std::vector<int> class_index;         // 1-based vertex -> class position
    std::vector<int> colors;              // class sizes
    // edge code between classes: 0 none, 1 undirected, 2 row->col, 3 col->row
    std::vector<std::vector<int>> edge;
};

namespace detail {

inline std::vector<VertexSet> closed_neighborhoods(const HybridGraph& hstar) {
    std::vector<VertexSet> nstar(static_cast<std::size_t>(hstar.vertex_count()) + 1);
    for (int i = 1; i <= hstar.vertex_count(); ++i)
        nstar[static_cast<std::size_t>(i)] = neighborhoods(hstar, i).closed;
    return nstar;
}

}  // namespace detail

inline QuotientGraph equivalence_classes(const HybridGraph& h) {
    detail::require_nf(h, "equivalence_classes");
    HybridGraph hstar = essential_graph(h).graph;
    auto nstar = detail::closed_neighborhoods(hstar);
    const int m = hstar.vertex_count();

    QuotientGraph q;
    q.class_index.assign(static_cast<std::size_t>(m) + 1, -1);
    for (int i = 1; i <= m; ++i) {
        if (q.class_index[static_cast<std::size_t>(i)] >= 0) continue;
        VertexSet cls;
        for (int j = i; j <= m; ++j)
            if (nstar[static_cast<std::size_t>(j)] == nstar[static_cast<std::size_t>(i)])
                cls.insert(j);
        int idx = static_cast<int>(q.classes.size());
        for (int j : cls.elements()) q.class_index[static_cast<std::size_t>(j)] = idx;
        q.classes.push_back(cls);
        q.colors.push_back(cls.size());
    }

    const auto n = q.classes.size();
    q.edge.assign(n, std::vector<int>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            int i = q.classes[a].min(), j = q.classes[b].min();
            int code = 0;
            if (hstar.has_undirected(i, j)) code = 1;
            else if (hstar.has_arrow(i, j)) code = 2;
            else if (hstar.has_arrow(j, i)) code = 3;
            q.edge[a][b] = code;
            q.edge[b][a] = code == 2 ? 3 : code == 3 ? 2 : code;
        }
    }
    return q;
}

namespace detail {

inline Permutation lift(const QuotientGraph& q, const std::vector<int>& class_images) {
    int m = 0;
    for (const auto& c : q.classes) m += c.size();
    std::vector<int> images(static_cast<std::size_t>(m), 0);
    for (std::size_t a = 0; a < q.classes.size(); ++a) {
        auto from = q.classes[a].elements();
        auto to = q.classes[static_cast<std::size_t>(class_images[a])].elements();
        for (std::size_t k = 0; k < from.size(); ++k)
            images[static_cast<std::size_t>(from[k] - 1)] = to[k];
    }
    return Permutation(std::move(images));
}

struct AutomorphismSearch {
    const QuotientGraph& q;
    std::size_t n;
    std::vector<std::array<int, 4>> signature;  // (color, out, in, undirected)
    std::vector<int> img;
    std::vector<bool> used;

    explicit AutomorphismSearch(const QuotientGraph& quotient)
        : q(quotient), n(quotient.classes.size()), img(n, -1), used(n, false) {
        signature.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            std::array<int, 4> s{q.colors[a], 0, 0, 0};
            for (std::size_t b = 0; b < n; ++b) {
                if (q.edge[a][b] == 2) ++s[1];
                if (q.edge[a][b] == 3) ++s[2];
                if (q.edge[a][b] == 1) ++s[3];
            }
            signature[a] = s;
        }
    }

    bool feasible(std::size_t pos, std::size_t candidate) const {
        if (signature[pos] != signature[candidate]) return false;
        for (std::size_t prev = 0; prev < pos; ++prev)
            if (q.edge[pos][prev] !=
                q.edge[candidate][static_cast<std::size_t>(img[prev])])
                return false;
        return true;
    }

    // Enumerates every assignment; `sink` returns false to stop early.
    template <typename Sink>
    bool enumerate(std::size_t pos, Sink&& sink) {
        if (pos == n) return sink(img);
        for (std::size_t b = 0; b < n; ++b) {
            if (used[b] || !feasible(pos, b)) continue;
            img[pos] = static_cast<int>(b);
            used[b] = true;
            bool go_on = enumerate(pos + 1, sink);
            used[b] = false;
            img[pos] = -1;
            if (!go_on) return false;
        }
        return true;
    }
};

}  // namespace detail

/// Color- and edge-type-preserving automorphisms of the quotient graph,
/// each returned lifted to a vertex permutation (k-th smallest member of a
/// class goes to the k-th smallest member of its image class). For up to 12
/// classes the full group is listed; beyond that a stabilizer-chain
/// generating set is returned. The identity is always present.
inline std::vector<Permutation> colored_automorphisms(const QuotientGraph& q) {
    const std::size_t n = q.classes.size();
    std::set<Permutation> found;
    detail::AutomorphismSearch search(q);

    if (n <= 12) {
        search.enumerate(0, [&](const std::vector<int>& img) {
            found.insert(detail::lift(q, img));
            return true;
        });
    } else {
        found.insert(detail::lift(q, [&] {
            std::vector<int> id(n);
            std::iota(id.begin(), id.end(), 0);
            return id;
        }()));
        // transversal generators along the pointwise stabilizer chain
        for (std::size_t level = 0; level < n; ++level) {
            for (std::size_t target = 0; target < n; ++target) {
                if (target == level) continue;
                detail::AutomorphismSearch s(q);
                for (std::size_t fix = 0; fix < level; ++fix) {
                    s.img[fix] = static_cast<int>(fix);
                    s.used[fix] = true;
                }
                if (s.used[target] || !s.feasible(level, target)) continue;
                s.img[level] = static_cast<int>(target);
                s.used[target] = true;
                s.enumerate(level + 1, [&](const std::vector<int>& img) {
                    found.insert(detail::lift(q, img));
                    return false;  // one witness per coset is enough
                });
            }
        }
    }
    return {found.begin(), found.end()};
}

/// Pattern of the identity component. For DAGs the containment relation is
/// read off the standard imset; otherwise the essential graph is built and
/// closed neighborhoods are compared directly.
inline ZeroPattern g0_pattern(const HybridGraph& h) {
    detail::require_nf(h, "g0_pattern");
    const int m = h.vertex_count();
    ZeroPattern p;
    p.m = m;
    p.allowed_rows.assign(static_cast<std::size_t>(m), VertexSet{});
    for (int i = 1; i <= m; ++i)
        p.allowed_rows[static_cast<std::size_t>(i - 1)].insert(i);

    if (is_dag(h)) {
        auto rel = nstar_containment_via_imset(h);
        for (auto [i, j] : rel.pairs)
            p.allowed_rows[static_cast<std::size_t>(i - 1)].insert(j);
        return p;
    }
    HybridGraph hstar = essential_graph(h).graph;
    auto nstar = detail::closed_neighborhoods(hstar);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (i != j && nstar[static_cast<std::size_t>(i)].subset_of(
                              nstar[static_cast<std::size_t>(j)]))
                p.allowed_rows[static_cast<std::size_t>(i - 1)].insert(j);
    return p;
}

/// down(i) = set of j whose closed essential neighborhood contains that of i.
inline std::vector<VertexSet> down_sets(const HybridGraph& h) {
    detail::require_nf(h, "down_sets");
    HybridGraph hstar = essential_graph(h).graph;
    auto nstar = detail::closed_neighborhoods(hstar);
    const int m = h.vertex_count();
    std::vector<VertexSet> down(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (nstar[static_cast<std::size_t>(i)].subset_of(
                    nstar[static_cast<std::size_t>(j)]))
                down[static_cast<std::size_t>(i - 1)].insert(j);
    return down;
}

/// Smallest sample size for which an equivariant covariance estimator
/// exists almost surely: max_i |down(i)|.
inline int min_sample_size(const HybridGraph& h) {
    int best = 0;
    for (const auto& d : down_sets(h)) best = std::max(best, d.size());
    return best;
}

/// Exact fraction p/q in lowest terms.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational reduced(long long n, long long d) {
        long long g = std::gcd(n, d);
        if (g == 0) g = 1;
        return Rational{n / g, d / g};
    }

    bool operator==(const Rational&) const = default;

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Upper bound ceil((n - max_i|down(i)| + 1)/2) / n on the finite-sample
/// breakdown point of any equivariant covariance estimator.
inline Rational breakdown_bound(const HybridGraph& h, long long n) {
    int need = min_sample_size(h);
    if (n < need)
        throw sample_too_small("breakdown_bound: need n >= " + std::to_string(need) +
                               ", got " + std::to_string(n));
    long long a = n - need + 1;
    return Rational::reduced((a + 1) / 2, n);
}

struct GroupDescription {
    ZeroPattern pattern;
    QuotientGraph quotient;
    std::vector<Permutation> lifted_automorphisms;
    std::vector<VertexSet> down_sets;  // position i-1 holds down(i)
};

inline GroupDescription group_description(const HybridGraph& h) {
    detail::require_nf(h, "group_description");
    GroupDescription g;
    g.pattern = g0_pattern(h);
    g.quotient = equivalence_classes(h);
    g.lifted_automorphisms = colored_automorphisms(g.quotient);
    g.down_sets = cgsym::down_sets(h);
    return g;
}

inline nlohmann::json group_description_json(const GroupDescription& g) {
    nlohmann::json j;
    j["pattern"] = nlohmann::json::array();
    for (auto [a, b] : g.pattern.off_diagonal_pairs())
        j["pattern"].push_back({a, b});
    j["classes"] = nlohmann::json::array();
    for (const auto& c : g.quotient.classes) j["classes"].push_back(c.elements());
    j["automorphisms"] = nlohmann::json::array();
    for (const auto& p : g.lifted_automorphisms) j["automorphisms"].push_back(p.images());
    int mss = 0;
    for (const auto& d : g.down_sets) mss = std::max(mss, d.size());
    j["min_sample_size"] = mss;
    j["down_sets"] = nlohmann::json::object();
    for (std::size_t i = 0; i < g.down_sets.size(); ++i)
        j["down_sets"][std::to_string(i + 1)] = g.down_sets[i].elements();
    return j;
}

}  // namespace cgsym
