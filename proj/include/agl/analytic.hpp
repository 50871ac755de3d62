#pragma once

// Exact long-run expected ages from the stationary age recursions.
//
// Every routine solves a linear system exactly: the coupling between the
// regular nodes and node n is closed by carrying the regular-node ages as
// affine functions a + b * v_n through the recursion and solving the final
// scalar equation.

#include <optional>
#include <string>
#include <vector>

#include "agl/model.hpp"

namespace agl {

struct AnalyticAges {
    Topology topology = Topology::FullyConnectedCapture;
    bool honest = false;
    int n = 0;
    double lambda = 1.0;

    // Fully connected: v_{S_k} for k = 1..n-1 at index k-1, so regular[0] is
    // the age of a single regular node. Ring: v_m for m = 1..n-1.
    std::vector<double> regular;
    // v_n. Under MITM this is the intercepted node.
    double infected = 0.0;
    // MITM only.
    std::optional<double> adversary;
    // MITM only: v_{S_k u {n}} for k = 1..n-1 at index k-1.
    std::vector<double> sets_with_infected;

    double v1() const { return regular.front(); }
    // Expected age at user node i in [1, n].
    double node_age(NodeId i) const;
};

AnalyticAges fcn_capture_ages(int n, double lambda, double p, double q);
AnalyticAges fcn_honest_ages(int n, double lambda);
AnalyticAges mitm_ages(int n, double lambda);
AnalyticAges urn_capture_ages(int n, double lambda, double p, double q);
AnalyticAges urn_honest_ages(int n, double lambda);

// Dispatches on the spec's topology and honest flag.
AnalyticAges analytic_ages(const NetworkSpec& spec);

struct AgeBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::string label;
};

enum class FcnCase {
    PushOnly,       // p > 0, q = 1
    Silent,         // p = 0
    PushAndAccept,  // p > 0, q < 1
};

struct FcnCaseBounds {
    FcnCase which = FcnCase::PushOnly;
    // Labels: "v1" bounds the age of a regular node; "vn-v1" bounds the gap
    // between the infected node and a regular node. One-sided bounds use 0
    // as the lower end (both quantities are non-negative).
    std::vector<AgeBounds> bounds;
    // Bounds of the selected case that do not apply, e.g. p = 1 or n p < 1.
    // A missing upper side is reported as +infinity.
    std::vector<std::string> inapplicable;
};

// Closed-form bounds for the fully connected capture network. Throws
// std::invalid_argument for invalid parameters.
FcnCaseBounds fcn_case_bounds(int n, double lambda, double p, double q);

struct MonotonicityVerdict {
    bool monotone = true;
    // n = 2 has no regular-to-regular gossip and v_1 is constant in p.
    bool degenerate = false;
    // Grid indices (i, i + 1) of the first violation.
    std::optional<std::pair<std::size_t, std::size_t>> violation;
    std::string detail;
};

// At q = 1: v_1 strictly increasing over the ascending grid and, for every
// set size k, v_n - v_{S_k} positive and strictly decreasing.
MonotonicityVerdict fcn_p_monotonicity_check(int n, double lambda, const std::vector<double>& p_grid);

// Ring sandwich around v_m with exact prefix products. Returns nullopt when
// p = 0 (the upper side divides by p).
std::optional<AgeBounds> urn_age_bounds(int n, double lambda, double p, int m, double v_n);

// The same sandwich for every m = 1..n-1 (index m-1) in one pass. Empty when
// p = 0.
std::vector<AgeBounds> urn_age_bounds_all(int n, double lambda, double p, double v_n);

}  // namespace agl
