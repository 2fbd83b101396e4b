#pragma once

#include <vector>

#include "cgsym/graph.hpp"

namespace fixtures {

using cgsym::HybridGraph;

inline HybridGraph chain3() { return HybridGraph(3, {{1, 2}, {2, 3}}, {}); }
inline HybridGraph chain3_rev() { return HybridGraph(3, {{2, 1}, {2, 3}}, {}); }
inline HybridGraph chain3_rev2() { return HybridGraph(3, {{2, 1}, {3, 2}}, {}); }
inline HybridGraph collider3() { return HybridGraph(3, {{1, 2}, {3, 2}}, {}); }
inline HybridGraph path3() { return HybridGraph(3, {}, {{1, 2}, {2, 3}}); }

// 1 and 4 both feed 2; the single immorality (1,2,4) pins every arrow.
inline HybridGraph essential_only4() {
    return HybridGraph(4, {{1, 3}, {2, 3}, {1, 2}, {4, 2}}, {});
}

// hub 2 points at 1, 3, 4 and 3 points at 4; its essential graph is the skeleton
inline HybridGraph hub4() {
    return HybridGraph(4, {{2, 1}, {2, 3}, {2, 4}, {3, 4}}, {});
}

inline HybridGraph sprinkler5() {
    return HybridGraph(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}}, {});
}

inline HybridGraph sprinkler5_essential() {
    return HybridGraph(5, {{2, 4}, {3, 4}, {4, 5}}, {{1, 2}, {1, 3}});
}

inline HybridGraph verma5() {
    return HybridGraph(5, {{1, 3}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {4, 5}}, {});
}

// p latent-style sources 1..p all pointing at the q sinks p+1..p+q
inline HybridGraph factor_model(int p, int q) {
    std::vector<cgsym::Edge> dir;
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) dir.emplace_back(i, p + j);
    return HybridGraph(p + q, std::move(dir), {});
}

}  // namespace fixtures
