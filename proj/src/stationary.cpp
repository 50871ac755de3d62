#include "agl/stationary.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace agl {

AnalyticAges honest_dense_ages(Topology topology, int n, double lambda)
{
    if (n < 2 || !(lambda > 0.0)) throw std::invalid_argument("honest_dense_ages: need n >= 2 and lambda > 0");
    if (topology == Topology::FullyConnectedMitm) topology = Topology::FullyConnectedCapture;

    // Unknown k-1 is the age of a class of k nodes, k = 1..n.
    const Eigen::Index size = n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    Eigen::VectorXd rhs = Eigen::VectorXd::Constant(size, -1.0);
    const double dn = n;
    for (int k = 1; k <= n; ++k) {
        const Eigen::Index row = k - 1;
        const double from_source = k * lambda / dn;
        double from_outside = 0.0;
        if (k < n) {
            from_outside = topology == Topology::UnidirectionalRingCapture
                               ? lambda
                               : k * (dn - k) * lambda / (dn - 1.0);
            a(row, row + 1) += from_outside;
        }
        a(row, row) -= from_source + from_outside;
    }
    const Eigen::VectorXd v = a.partialPivLu().solve(rhs);

    AnalyticAges out;
    out.topology = topology;
    out.honest = true;
    out.n = n;
    out.lambda = lambda;
    if (topology == Topology::UnidirectionalRingCapture) {
        out.regular.assign(static_cast<std::size_t>(n) - 1, v(0));
    } else {
        out.regular.resize(static_cast<std::size_t>(n) - 1);
        for (int k = 1; k <= n - 1; ++k) out.regular[static_cast<std::size_t>(k - 1)] = v(k - 1);
    }
    out.infected = v(0);
    return out;
}

}  // namespace agl
