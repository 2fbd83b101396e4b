#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cgsym/cupflow.hpp"
#include "cgsym/numeric.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cgsym;
using fixtures::chain3;
using fixtures::collider3;
using fixtures::path3;

namespace {

std::vector<VertexSet> subsets_of_size(int m, int d) {
    std::vector<VertexSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        VertexSet s = VertexSet::from_bits(bits);
        if (s.size() == d) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("sample_parameters is deterministic and support-exact", "[numeric]") {
    auto a = sample_parameters(fixtures::sprinkler5_essential(), 7);
    auto b = sample_parameters(fixtures::sprinkler5_essential(), 7);
    REQUIRE((a.lambda - b.lambda).max_abs() == 0.0);
    REQUIRE((a.omega - b.omega).max_abs() == 0.0);

    auto empty = sample_parameters(HybridGraph(3, {}, {}), 5);
    REQUIRE(empty.lambda.max_abs() == 0.0);
    REQUIRE((empty.omega - DenseMatrix::identity(3)).max_abs() == 0.0);

    auto chain = sample_parameters(chain3(), 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            bool arrow = (i == 0 && j == 1) || (i == 1 && j == 2);
            if (arrow) {
                REQUIRE(std::fabs(chain.lambda(i, j)) >= 0.2);
                REQUIRE(std::fabs(chain.lambda(i, j)) <= 1.0);
            } else {
                REQUIRE(chain.lambda(i, j) == 0.0);
            }
            if (i != j) REQUIRE(chain.omega(i, j) == 0.0);
        }

    REQUIRE_THROWS_AS(sample_parameters(HybridGraph(3, {{1, 2}}, {{2, 3}}), 1),
                      domain_error);
}

TEST_CASE("concentration multiplies out the factorization", "[numeric]") {
    ModelParameters id{DenseMatrix(2, 2), DenseMatrix::identity(2)};
    REQUIRE((concentration(id) - DenseMatrix::identity(2)).max_abs() == 0.0);

    ModelParameters chain{DenseMatrix(3, 3), DenseMatrix::identity(3)};
    chain.lambda(0, 1) = 1.0;
    chain.lambda(1, 2) = 1.0;
    DenseMatrix k = concentration(chain);
    DenseMatrix expected(3, 3);
    double vals[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) expected(i, j) = vals[i][j];
    REQUIRE((k - expected).max_abs() < 1e-14);

    ModelParameters col{DenseMatrix(3, 3), DenseMatrix::identity(3)};
    col.lambda(0, 1) = 1.0;
    col.lambda(2, 1) = 1.0;
    REQUIRE(std::fabs(concentration(col)(0, 2) - 1.0) < 1e-14);
}

TEST_CASE("membership accepts the model and rejects outsiders", "[numeric]") {
    for (const HybridGraph& g : {chain3(), collider3(), path3(), fixtures::sprinkler5(),
                                 fixtures::verma5(), fixtures::sprinkler5_essential()})
        for (std::uint64_t seed = 1; seed <= 100; ++seed)
            REQUIRE(membership(g, concentration(sample_parameters(g, seed)), 1e-8));

    DenseMatrix full(3, 3);
    double vals[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) full(i, j) = vals[i][j];
    REQUIRE_FALSE(membership(chain3(), full, 1e-8));

    DenseMatrix one(1, 1);
    one(0, 0) = 5.0;
    REQUIRE(membership(HybridGraph(1, {}, {}), one, 1e-8));

    // the undirected path model is not inside the collider model
    REQUIRE_FALSE(membership(collider3(), concentration(sample_parameters(path3(), 3)), 1e-8));

    DenseMatrix asym = DenseMatrix::identity(2);
    asym(0, 1) = 0.5;
    REQUIRE_THROWS_AS(membership(HybridGraph(2, {}, {}), asym, 1e-8), singular_matrix);
}

TEST_CASE("act computes the congruence action", "[numeric]") {
    DenseMatrix k = concentration(sample_parameters(collider3(), 1));
    REQUIRE((act(DenseMatrix::identity(3), k) - k).max_abs() < 1e-12);

    DenseMatrix d(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    d(2, 2) = 4.0;
    DenseMatrix dk = act(d, k);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            REQUIRE(std::fabs(dk(i, j) - k(i, j) / (d(i, i) * d(j, j))) < 1e-12);

    REQUIRE(membership(collider3(), act(oracles::elementary_bump(3, 2, 1, 0.7), k), 1e-6));
    REQUIRE_THROWS_AS(act(DenseMatrix(3, 3), k), singular_matrix);
}

TEST_CASE("pattern entries are exactly the membership-preserving bumps", "[numeric]") {
    // includes the 5-vertex graph whose pattern has entries (3,2), (5,1), (5,4)
    for (const HybridGraph& g : {chain3(), collider3(), fixtures::sprinkler5(),
                                 fixtures::verma5(), fixtures::hub4()}) {
        ZeroPattern p = g0_pattern(g);
        for (int i = 1; i <= g.vertex_count(); ++i)
            for (int j = 1; j <= g.vertex_count(); ++j) {
                if (i == j || !g.linked(i, j)) continue;
                bool stays = true;
                for (std::uint64_t seed = 1; seed <= 5 && stays; ++seed) {
                    DenseMatrix k = concentration(sample_parameters(g, seed));
                    stays = membership(
                        g, act(oracles::elementary_bump(g.vertex_count(), i, j, 0.7), k),
                        1e-6);
                }
                REQUIRE(stays == p.allowed(i, j));
            }
    }
}

TEST_CASE("random pattern-supported elements keep membership", "[numeric]") {
    oracles::Rng rng(51);
    for (const HybridGraph& g :
         {chain3(), collider3(), fixtures::sprinkler5(), fixtures::factor_model(2, 3)}) {
        ZeroPattern p = g0_pattern(g);
        for (int t = 0; t < 10; ++t) {
            DenseMatrix gm = oracles::random_group_element(rng, p);
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                DenseMatrix k = concentration(sample_parameters(g, seed));
                REQUIRE(membership(g, act(gm, k), 1e-6));
            }
        }
    }
}

TEST_CASE("maximal_invariant builds the class projections", "[numeric]") {
    DenseMatrix x(1, 2);
    x(0, 0) = 1.0;
    x(0, 1) = 0.0;
    auto stat = maximal_invariant(HybridGraph(1, {}, {}), x);
    REQUIRE(stat.entries.size() == 1);
    REQUIRE(stat.entries[0].projection(0, 0) == 1.0);
    REQUIRE(stat.entries[0].projection(0, 1) == 0.0);
    REQUIRE(stat.entries[0].projection(1, 1) == 0.0);

    auto id3 = maximal_invariant(collider3(), DenseMatrix::identity(3));
    REQUIRE(id3.entries.size() == 3);
    REQUIRE(id3.entries[0].down == VertexSet::of({1}));
    REQUIRE(id3.entries[1].down == VertexSet::of({1, 2, 3}));
    REQUIRE(id3.entries[2].down == VertexSet::of({3}));
    REQUIRE((id3.entries[1].projection - DenseMatrix::identity(3)).max_abs() < 1e-12);
    REQUIRE(std::fabs(id3.entries[0].projection(0, 0) - 1.0) < 1e-12);

    // generic data: ranks are the down-set sizes, projections idempotent
    oracles::Rng rng(52);
    for (const HybridGraph& g : {collider3(), fixtures::sprinkler5()}) {
        int m = g.vertex_count(), n = m + 2;
        DenseMatrix x2(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) x2(i, j) = rng.normal();
        auto s = maximal_invariant(g, x2);
        for (const auto& e : s.entries) {
            const DenseMatrix& pr = e.projection;
            REQUIRE((pr * pr - pr).max_abs() < 1e-8);
            REQUIRE(pr.max_asymmetry() < 1e-8);
            double trace = 0.0;
            for (int i = 0; i < pr.rows(); ++i) trace += pr(i, i);
            REQUIRE(std::fabs(trace - e.down.size()) < 1e-8);
        }
    }

    REQUIRE_THROWS_AS(maximal_invariant(collider3(), DenseMatrix(3, 2)), sample_too_small);
    DenseMatrix degenerate(3, 3);
    for (int j = 0; j < 3; ++j) degenerate(0, j) = degenerate(1, j) = degenerate(2, j) = 1.0;
    REQUIRE_THROWS_AS(maximal_invariant(collider3(), degenerate), rank_deficient_data);
}

TEST_CASE("the invariant is constant on pattern-group orbits", "[numeric]") {
    oracles::Rng rng(53);
    for (const HybridGraph& g : {collider3(), fixtures::sprinkler5()}) {
        int m = g.vertex_count(), n = m + 2;
        DenseMatrix x(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) x(i, j) = rng.normal();
        auto base = maximal_invariant(g, x);
        ZeroPattern p = g0_pattern(g);
        for (int t = 0; t < 20; ++t) {
            DenseMatrix gm = oracles::random_group_element(rng, p);
            auto moved = maximal_invariant(g, gm * x);
            REQUIRE(base.max_entry_difference(moved) <= 1e-8);
        }
    }
}

TEST_CASE("numeric vanishing agrees with the combinatorial oracle", "[numeric]") {
    REQUIRE(numeric_vanishing_check(collider3(), VertexSet::of({1, 2}), VertexSet::of({2, 3}),
                                    5, 1, 1e-9));
    REQUIRE_FALSE(
        numeric_vanishing_check(collider3(), VertexSet::of({1}), VertexSet::of({3}), 5, 1, 1e-9));
    REQUIRE_FALSE(
        numeric_vanishing_check(chain3(), VertexSet::of({1}), VertexSet::of({1}), 1, 1, 1e-9));

    oracles::Rng rng(54);
    int graphs = 0;
    while (graphs < 15) {
        int m = 2 + rng.below(4);
        HybridGraph g = oracles::random_nf_chain_graph(rng, m, graphs % 3);
        ++graphs;
        for (int d = 1; d <= std::min(3, m); ++d)
            for (const auto& a : subsets_of_size(m, d))
                for (const auto& b : subsets_of_size(m, d)) {
                    bool combinatorial = vanishing_minor(g, a, b);
                    REQUIRE(numeric_vanishing_check(g, a, b, 5, 1000 + graphs, 1e-9) ==
                            combinatorial);
                    if (!combinatorial) {
                        double best = 0.0;
                        for (int t = 0; t < 5; ++t) {
                            DenseMatrix k = concentration(sample_parameters(
                                g, 1000 + static_cast<std::uint64_t>(graphs + t)));
                            best = std::max(best,
                                            std::fabs(determinant(k.submatrix(a, b))));
                        }
                        REQUIRE(best > 1e-7);
                    }
                }
    }
}
