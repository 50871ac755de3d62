#pragma once

// Dense-matrix route to the honest network ages: the stationary balance
// 0 = 1 + sum_e rate_e (v_after(e) - v) is written down for every symmetry
// class of node sets and the whole system is solved at once. Serves as the
// reference for honest simulations and as a cross-check on the recursions.

#include "agl/analytic.hpp"

namespace agl {

// Honest fully connected network (classes: sets of k nodes, k = 1..n) or
// honest ring (classes: blocks of k consecutive nodes). Throws
// std::invalid_argument for n < 2, lambda <= 0 or a topology other than
// those two.
AnalyticAges honest_dense_ages(Topology topology, int n, double lambda);

}  // namespace agl
