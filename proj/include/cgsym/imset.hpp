#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cgsym/equivalence.hpp"
#include "cgsym/errors.hpp"
#include "cgsym/graph.hpp"
#include "cgsym/permutation.hpp"

namespace cgsym {

/// An integer-valued function on vertex subsets with finite support.
/// Entries that cancel to zero are never stored.
class Imset {
public:
    long long value(VertexSet s) const {
        auto it = entries_.find(s);
        return it == entries_.end() ? 0 : it->second;
    }

    void add(VertexSet s, long long delta) {
        if (delta == 0) return;
        auto [it, inserted] = entries_.emplace(s, delta);
        if (!inserted) {
            it->second += delta;
            if (it->second == 0) entries_.erase(it);
        }
    }

    const std::map<VertexSet, long long>& entries() const { return entries_; }

    std::vector<VertexSet> support() const {
        std::vector<VertexSet> out;
        out.reserve(entries_.size());
        for (const auto& [s, v] : entries_) out.push_back(s);
        return out;
    }

    bool empty() const { return entries_.empty(); }

    bool operator==(const Imset&) const = default;

    /// One line per entry, "{i,j,...}: v", sets ascending, lines ordered by
    /// (set size, numeric key).
    std::string render() const {
        std::vector<std::pair<VertexSet, long long>> rows(entries_.begin(), entries_.end());
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return std::pair(a.first.size(), a.first.bits()) <
                   std::pair(b.first.size(), b.first.bits());
        });
        std::string out;
        for (const auto& [s, v] : rows)
            out += s.to_string() + ": " + std::to_string(v) + "\n";
        return out;
    }

private:
    std::map<VertexSet, long long> entries_;
};

namespace detail {

inline void require_dag(const HybridGraph& h, const char* op) {
    if (!is_dag(h)) throw domain_error(std::string(op) + ": graph is not a DAG");
}

}  // namespace detail

/// u = d_[m] - d_empty + sum_i (d_pa(i) - d_(pa(i)+i)), zeros cancelled.
inline Imset standard_imset(const HybridGraph& h) {
    detail::require_dag(h, "standard_imset");
    Imset u;
    u.add(VertexSet::full(h.vertex_count()), 1);
    u.add(VertexSet{}, -1);
    for (int i = 1; i <= h.vertex_count(); ++i) {
        VertexSet pa = h.parents_of(i);
        u.add(pa, 1);
        u.add(pa | VertexSet::single(i), -1);
    }
    return u;
}

/// Two DAGs are Markov equivalent exactly when their standard imsets agree.
inline bool equivalent_via_imset(const HybridGraph& g, const HybridGraph& h) {
    detail::require_dag(g, "equivalent_via_imset");
    detail::require_dag(h, "equivalent_via_imset");
    if (g.vertex_count() != h.vertex_count())
        throw domain_error("equivalent_via_imset: graphs have different vertex counts");
    return standard_imset(g) == standard_imset(h);
}

/// Ordered pairs (i,j) of linked vertices whose closed neighborhoods in the
/// essential graph satisfy N*(i) subseteq N*(j).
struct ContainmentRelation {
    std::vector<std::pair<int, int>> pairs;  // sorted

    bool contains(int i, int j) const {
        return std::binary_search(pairs.begin(), pairs.end(), std::pair(i, j));
    }
};

/// Decides N*(i) subseteq N*(j) for every linked pair of a DAG from the
/// support of the standard imset alone; the essential graph is never built.
/// A support set containing i must then contain j.
inline ContainmentRelation nstar_containment_via_imset(const HybridGraph& h) {
    detail::require_dag(h, "nstar_containment_via_imset");
    Imset u = standard_imset(h);
    auto supp = u.support();
    const int m = h.vertex_count();
    // membership mask over support sets, per vertex
    std::vector<std::vector<std::uint64_t>> mask(
        static_cast<std::size_t>(m) + 1,
        std::vector<std::uint64_t>((supp.size() + 63) / 64 + 1, 0));
    for (std::size_t k = 0; k < supp.size(); ++k)
        for (int v : supp[k].elements())
            mask[static_cast<std::size_t>(v)][k / 64] |= std::uint64_t{1} << (k % 64);

    auto subset = [&](int i, int j) {
        const auto& a = mask[static_cast<std::size_t>(i)];
        const auto& b = mask[static_cast<std::size_t>(j)];
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w] & ~b[w]) return false;
        return true;
    };

    ContainmentRelation rel;
    for (auto [i, j] : h.directed_edges()) {
        if (subset(i, j)) rel.pairs.emplace_back(i, j);
        if (subset(j, i)) rel.pairs.emplace_back(j, i);
    }
    std::sort(rel.pairs.begin(), rel.pairs.end());
    return rel;
}

/// Evaluates the clique/separator formula for the standard imset on an
/// essential graph whose class contains a DAG:
///   u = d_core - sum_T sum_C d_(C+p(T)) + sum_T sum_S nu_T(S) d_(S+p(T))
///       + sum_P tau(P) d_P + (#initial components - 1) d_empty.
inline Imset imset_from_essential(const HybridGraph& hstar) {
    detail::require_nf(hstar, "imset_from_essential");
    CoreData cd = idle_core(hstar);
    Imset u;
    if (cd.core.empty()) return u;

    u.add(cd.core, 1);
    HybridGraph undirected_part(hstar.vertex_count(), {}, hstar.undirected_edges());
    auto part = components(hstar);
    int initial = 0;
    std::map<VertexSet, long long> parent_multiplicity;
    for (const auto& block : part.blocks) {
        if (!block.subset_of(cd.core)) continue;
        VertexSet p = hstar.parents_of(block);
        if (p.empty())
            ++initial;
        else
            ++parent_multiplicity[p];
        auto cs = cliques_and_separators(undirected_part, block);
        for (const auto& c : cs.cliques) u.add(c | p, -1);
        for (const auto& [s, nu] : cs.separators) u.add(s | p, nu);
    }
    for (const auto& [p, tau] : parent_multiplicity) u.add(p, tau);
    u.add(VertexSet{}, initial - 1);
    return u;
}

/// True when u(sigma^{-1}(S)) = u(S) for every S. It suffices to check
/// u(sigma(s)) = u(s) on the support of u: that forces sigma to permute the
/// support, and both sides vanish elsewhere.
inline bool permutation_fixes_imset(const Imset& u, const Permutation& sigma) {
    for (const auto& [s, v] : u.entries())
        if (u.value(sigma.apply(s)) != v) return false;
    return true;
}

}  // namespace cgsym
