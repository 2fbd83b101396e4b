#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cgsym/equivalence.hpp"
#include "cgsym/errors.hpp"
#include "cgsym/graph.hpp"
#include "cgsym/matrix.hpp"
#include "cgsym/rng.hpp"
#include "cgsym/symmetry.hpp"

namespace cgsym {

/// Lambda lives on the arrows, Omega on the diagonal and the undirected
/// edges; Omega is symmetric positive definite.
struct ModelParameters {
    DenseMatrix lambda;
    DenseMatrix omega;
};

/// Deterministic parameters for a given seed. Arrow weights are drawn in
/// +-[0.2, 1], off-diagonal omega entries in +-[0.1, 0.5], both in sorted
/// edge order (magnitude before sign); the diagonal is then set to
/// 1 + sum of the row's absolute off-diagonals, which makes Omega strictly
/// diagonally dominant and hence positive definite with exact zero pattern.
inline ModelParameters sample_parameters(const HybridGraph& h, std::uint64_t seed) {
    detail::require_nf(h, "sample_parameters");
    const int m = h.vertex_count();
    Rng rng(seed);
    ModelParameters p{DenseMatrix(m, m), DenseMatrix(m, m)};
    for (auto [i, j] : h.directed_edges())
        p.lambda(i - 1, j - 1) = rng.signed_band(0.2, 1.0);
    for (auto [i, j] : h.undirected_edges()) {
        double w = rng.signed_band(0.1, 0.5);
        p.omega(i - 1, j - 1) = w;
        p.omega(j - 1, i - 1) = w;
    }
    for (int i = 0; i < m; ++i) {
        double s = 1.0;
        for (int j = 0; j < m; ++j)
            if (j != i) s += std::fabs(p.omega(i, j));
        p.omega(i, i) = s;
    }
    return p;
}

/// K = (I - Lambda) Omega (I - Lambda)^T.
inline DenseMatrix concentration(const ModelParameters& p) {
    const int m = p.lambda.rows();
    DenseMatrix f = DenseMatrix::identity(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (p.lambda(i, j) != 0.0) f(i, j) -= p.lambda(i, j);
    return f * p.omega * f.transpose();
}

/// Decides K in K(H) up to `tol` by recursive factorization: walk the
/// components in topological order; the regression of each component on
/// everything earlier may only load on its parents, and the conditional
/// concentration inside the component may only be supported on its
/// undirected edges. Both follow from Y = (I - Lambda)^T X having
/// block-diagonal covariance across components.
inline bool membership(const HybridGraph& h, const DenseMatrix& k, double tol) {
    detail::require_nf(h, "membership");
    const int m = h.vertex_count();
    if (k.rows() != m || k.cols() != m)
        throw size_mismatch("membership: matrix is " + std::to_string(k.rows()) + "x" +
                            std::to_string(k.cols()) + " but the graph has " +
                            std::to_string(m) + " vertices");
    if (k.max_asymmetry() > 1e-8 * (1.0 + k.max_abs()))
        throw singular_matrix("membership: matrix is not symmetric");
    DenseMatrix sigma = inverse(k);

    auto part = components(h);
    auto [adj, acyclic] = detail::component_digraph(h, part);
    (void)acyclic;
    // Kahn's algorithm, smallest-min-vertex block first
    const auto n = part.blocks.size();
    std::vector<int> indeg(n, 0);
    for (const auto& outs : adj)
        for (int b : outs) ++indeg[static_cast<std::size_t>(b)];
    std::set<std::pair<int, int>> ready;  // (min vertex, block index)
    for (std::size_t b = 0; b < n; ++b)
        if (indeg[b] == 0) ready.emplace(part.blocks[b].min(), static_cast<int>(b));
    std::vector<int> order;
    while (!ready.empty()) {
        auto [mn, b] = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(b);
        for (int c : adj[static_cast<std::size_t>(b)])
            if (--indeg[static_cast<std::size_t>(c)] == 0)
                ready.emplace(part.blocks[static_cast<std::size_t>(c)].min(), c);
    }

    VertexSet pre;
    for (int bi : order) {
        const VertexSet t = part.blocks[static_cast<std::size_t>(bi)];
        auto tv = t.elements();
        DenseMatrix omega_t;
        if (!pre.empty()) {
            auto pv = pre.elements();
            DenseMatrix spp = sigma.submatrix(pre, pre);
            DenseMatrix stp = sigma.submatrix(t, pre);
            DenseMatrix coeff = stp * inverse(spp);
            VertexSet pa = h.parents_of(t);
            for (std::size_t c = 0; c < pv.size(); ++c) {
                if (pa.contains(pv[c])) continue;
                for (std::size_t r = 0; r < tv.size(); ++r)
                    if (std::fabs(coeff(static_cast<int>(r), static_cast<int>(c))) > tol)
                        return false;
            }
            omega_t = inverse(sigma.submatrix(t, t) - coeff * sigma.submatrix(pre, t));
        } else {
            omega_t = inverse(sigma.submatrix(t, t));
        }
        for (std::size_t x = 0; x < tv.size(); ++x)
            for (std::size_t y = x + 1; y < tv.size(); ++y)
                if (!h.has_undirected(tv[x], tv[y]) &&
                    std::fabs(omega_t(static_cast<int>(x), static_cast<int>(y))) > tol)
                    return false;
        pre |= t;
    }
    return true;
}

/// g . K = g^{-T} K g^{-1}, symmetrized on return.
inline DenseMatrix act(const DenseMatrix& g, const DenseMatrix& k) {
    DenseMatrix ginv = inverse(g);
    DenseMatrix r = ginv.transpose() * k * ginv;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = i + 1; j < r.cols(); ++j) {
            double v = 0.5 * (r(i, j) + r(j, i));
            r(i, j) = v;
            r(j, i) = v;
        }
    return r;
}

/// Per equivalence class, the orthogonal projection onto the row space of
/// the data rows indexed by the class's down-set.
struct InvariantStatistic {
    struct Entry {
        VertexSet cls;
        VertexSet down;
        DenseMatrix projection;  // n x n
    };
    std::vector<Entry> entries;

    double max_entry_difference(const InvariantStatistic& o) const {
        double m = 0.0;
        for (std::size_t e = 0; e < entries.size(); ++e)
            m = std::max(m, (entries[e].projection - o.entries[e].projection).max_abs());
        return m;
    }
};

inline InvariantStatistic maximal_invariant(const HybridGraph& h, const DenseMatrix& x) {
    detail::require_nf(h, "maximal_invariant");
    const int m = h.vertex_count();
    if (x.rows() != m)
        throw size_mismatch("maximal_invariant: data has " + std::to_string(x.rows()) +
                            " rows but the graph has " + std::to_string(m) + " vertices");
    auto downs = down_sets(h);
    int need = 0;
    for (const auto& d : downs) need = std::max(need, d.size());
    if (x.cols() < need)
        throw sample_too_small("maximal_invariant: need at least " + std::to_string(need) +
                               " samples, got " + std::to_string(x.cols()));
    QuotientGraph q = equivalence_classes(h);
    InvariantStatistic out;
    for (const auto& cls : q.classes) {
        VertexSet down = downs[static_cast<std::size_t>(cls.min() - 1)];
        std::vector<int> rows;
        for (int v : down.elements()) rows.push_back(v - 1);
        std::vector<int> cols(static_cast<std::size_t>(x.cols()));
        for (int c = 0; c < x.cols(); ++c) cols[static_cast<std::size_t>(c)] = c;
        DenseMatrix y = x.submatrix(rows, cols);
        DenseMatrix gram = y * y.transpose();
        DenseMatrix gram_inv;
        try {
            gram_inv = inverse(gram);
        } catch (const singular_matrix&) {
            throw rank_deficient_data("maximal_invariant: data rows " + down.to_string() +
                                      " are numerically rank deficient");
        }
        out.entries.push_back({cls, down, y.transpose() * gram_inv * y});
    }
    return out;
}

/// True when |det K[A,B]| stays below `tol` on every one of `trials` seeded
/// parameter draws (seeds seed, seed+1, ...).
inline bool numeric_vanishing_check(const HybridGraph& h, VertexSet a, VertexSet b,
                                    int trials, std::uint64_t seed, double tol) {
    if (a.size() != b.size())
        throw size_mismatch("numeric_vanishing_check: |A| = " + std::to_string(a.size()) +
                            " but |B| = " + std::to_string(b.size()));
    for (int t = 0; t < trials; ++t) {
        DenseMatrix k = concentration(sample_parameters(h, seed + static_cast<std::uint64_t>(t)));
        if (std::fabs(determinant(k.submatrix(a, b))) >= tol) return false;
    }
    return true;
}

}  // namespace cgsym
