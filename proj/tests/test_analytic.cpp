#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "agl/analytic.hpp"
#include "agl/series.hpp"
#include "agl/stationary.hpp"

using namespace agl;

TEST_CASE("fully connected capture: hand-derived values")
{
    const auto two = fcn_capture_ages(2, 1.0, 1.0, 1.0);
    CHECK(two.v1() == doctest::Approx(2.0));
    CHECK(two.infected == doctest::Approx(2.0));

    const auto three = fcn_capture_ages(3, 1.0, 1.0, 1.0);
    CHECK(three.infected == doctest::Approx(3.0));
    CHECK(three.regular[1] == doctest::Approx(2.4));
    CHECK(three.v1() == doctest::Approx(2.775));
}

TEST_CASE("isolated infected node has age n / lambda")
{
    for (int n : {2, 10, 100, 10000})
        for (double lam : {0.5, 1.0, 3.0})
            for (double p : {0.0, 0.5, 1.0}) {
                CHECK(fcn_capture_ages(n, lam, p, 1.0).infected == doctest::Approx(n / lam).epsilon(1e-12));
                CHECK(urn_capture_ages(n, lam, p, 1.0).infected == doctest::Approx(n / lam).epsilon(1e-12));
            }
}

TEST_CASE("ages scale as 1 / lambda")
{
    for (auto p : {0.0, 0.4, 1.0}) {
        const auto a = fcn_capture_ages(30, 1.0, p, 0.5);
        const auto b = fcn_capture_ages(30, 4.0, p, 0.5);
        CHECK(b.v1() * 4.0 == doctest::Approx(a.v1()).epsilon(1e-12));
        const auto c = urn_capture_ages(30, 1.0, p, 0.5);
        const auto d = urn_capture_ages(30, 4.0, p, 0.5);
        CHECK(d.regular[7] * 4.0 == doctest::Approx(c.regular[7]).epsilon(1e-12));
    }
}

TEST_CASE("fully connected set ages are non-increasing in the set size")
{
    for (auto [p, q] : {std::pair{1.0, 1.0}, {0.5, 0.5}, {0.0, 0.5}, {0.9, 0.1}}) {
        const auto a = fcn_capture_ages(200, 1.0, p, q);
        for (std::size_t k = 1; k < a.regular.size(); ++k) CHECK(a.regular[k] <= a.regular[k - 1] * (1 + 1e-12));
        const auto m = mitm_ages(200, 1.0);
        for (std::size_t k = 1; k < m.regular.size(); ++k) CHECK(m.regular[k] <= m.regular[k - 1] * (1 + 1e-12));
    }
}

TEST_CASE("all ages finite and positive")
{
    for (int n : {2, 3, 17, 1000}) {
        for (auto [p, q] : {std::pair{1.0, 1.0}, {0.5, 1.0}, {0.0, 0.5}, {0.5, 0.5}, {0.0, 0.0}, {1.0, 0.0}}) {
            for (const auto& a : {fcn_capture_ages(n, 1.0, p, q), urn_capture_ages(n, 1.0, p, q)}) {
                for (double v : a.regular) CHECK((std::isfinite(v) && v > 0.0));
                CHECK((std::isfinite(a.infected) && a.infected > 0.0));
            }
        }
    }
}

TEST_CASE("case bounds: push-only example")
{
    const auto cb = fcn_case_bounds(100, 1.0, 0.5, 1.0);
    CHECK(cb.which == FcnCase::PushOnly);
    REQUIRE(cb.bounds.size() == 1);
    const double h = harmonic_number(99);
    CHECK(cb.bounds[0].lower == doctest::Approx(25.0 + h - 0.99));
    CHECK(cb.bounds[0].lower == doctest::Approx(29.187).epsilon(1e-4));
    CHECK(cb.bounds[0].upper == doctest::Approx(h + 50.0));
    CHECK(cb.bounds[0].upper == doctest::Approx(55.177).epsilon(1e-4));
}

TEST_CASE("case bounds: silent and push-and-accept")
{
    const double h = harmonic_number(49);
    const auto silent = fcn_case_bounds(50, 1.0, 0.0, 0.5);
    CHECK(silent.which == FcnCase::Silent);
    bool saw_v1 = false, saw_gap = false;
    for (const auto& b : silent.bounds) {
        if (b.label == "v1") {
            saw_v1 = true;
            CHECK(b.upper == doctest::Approx(std::pow(50.0 / 49.0, 49.0) * h));
            CHECK(b.upper <= std::exp(1.0) * h);
        }
        if (b.label == "vn-v1") {
            saw_gap = true;
            CHECK(b.upper == doctest::Approx(2.0));
        }
    }
    CHECK(saw_v1);
    CHECK(saw_gap);

    const auto both = fcn_case_bounds(50, 1.0, 0.5, 0.5);
    CHECK(both.which == FcnCase::PushAndAccept);
    CHECK(both.inapplicable.empty());

    const auto edge = fcn_case_bounds(50, 1.0, 1.0, 0.5);
    CHECK(edge.which == FcnCase::PushAndAccept);
    CHECK_FALSE(edge.inapplicable.empty());
    for (const auto& b : edge.bounds) CHECK(b.label != "v1");
}

TEST_CASE("push-only upper bound needs n p >= 1")
{
    const auto loose = fcn_case_bounds(3, 1.0, 0.2, 1.0);
    REQUIRE(loose.bounds.size() == 1);
    CHECK(std::isinf(loose.bounds[0].upper));
    CHECK_FALSE(loose.inapplicable.empty());
    // n p = 1 is the tight case: the bound equals the exact age.
    CHECK(fcn_case_bounds(5, 1.0, 0.2, 1.0).bounds[0].upper == doctest::Approx(fcn_capture_ages(5, 1.0, 0.2, 1.0).v1()));
}

TEST_CASE("case bounds hold for the exact ages")
{
    for (int n : {3, 4, 10, 57, 300, 2000}) {
        for (auto [p, q] : {std::pair{0.5, 1.0}, {0.2, 1.0}, {0.0, 0.5}, {0.0, 0.9}, {0.5, 0.5}, {0.3, 0.2}}) {
            const auto a = fcn_capture_ages(n, 1.0, p, q);
            for (const auto& b : fcn_case_bounds(n, 1.0, p, q).bounds) {
                const double value = b.label == "v1" ? a.v1() : a.infected - a.v1();
                CAPTURE(n);
                CAPTURE(b.label);
                CHECK(value >= b.lower);
                CHECK(value <= b.upper);
                CHECK(b.lower <= b.upper);
            }
        }
    }
}

TEST_CASE("monotonicity in p")
{
    const auto v = fcn_p_monotonicity_check(100, 1.0, {0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(v.monotone);
    CHECK_FALSE(v.degenerate);
    CHECK(fcn_p_monotonicity_check(50, 1.0, {0.5}).monotone);

    const auto deg = fcn_p_monotonicity_check(2, 1.0, {0.0, 1.0});
    CHECK(deg.degenerate);
    CHECK(fcn_capture_ages(2, 1.0, 0.0, 1.0).v1() == doctest::Approx(2.0));

    CHECK_THROWS_AS(fcn_p_monotonicity_check(10, 1.0, {0.5, 0.2}), std::invalid_argument);
}

TEST_CASE("MITM: hand-derived and bounds")
{
    const auto two = mitm_ages(2, 1.0);
    CHECK(*two.adversary == doctest::Approx(2.0));
    CHECK(two.sets_with_infected[0] == doctest::Approx(2.0));
    CHECK(two.v1() == doctest::Approx(2.0));

    for (int n : {3, 10, 123, 5000}) {
        const auto a = mitm_ages(n, 2.0);
        CHECK(*a.adversary == doctest::Approx(n / 2.0));
        for (double w : a.sets_with_infected) CHECK(w >= *a.adversary / 2.0);
        CHECK(a.v1() >= *a.adversary / 4.0);
        CHECK(a.infected >= *a.adversary / 2.0);
    }
}

TEST_CASE("MITM large-n approximation stays within 2/n of the exact recursion")
{
    for (int n : {10, 100, 1000, 10000}) {
        const auto a = mitm_ages(n, 1.0);
        const double dn = n;
        double approx = 0.0;
        for (int k = n - 1; k >= 1; --k) {
            const double c = (dn - k - 1) / (dn - 1);
            approx = (1.0 / k + c * approx + a.sets_with_infected[k - 1] / (dn - 1)) * (dn - 1) / (dn - k + 1);
        }
        CAPTURE(n);
        CHECK(std::abs(approx - a.v1()) / a.v1() < 2.0 / dn);
    }
}

TEST_CASE("ring capture: special cases")
{
    const auto two = urn_capture_ages(2, 1.0, 1.0, 1.0);
    CHECK(two.infected == doctest::Approx(2.0));
    CHECK(two.v1() == doctest::Approx(2.0));

    // p = 0: node n never pushes, so nodes 1..m form an honest prefix fed
    // only by the source at total rate m / n.
    const auto silent = urn_capture_ages(100, 1.0, 0.0, 0.5);
    const auto p = prefix_products(100, 99);
    const auto s = prefix_product_sums(100, 99);
    // Node 11 trails the block {1..11}, whose freshest member has age n / 11.
    const double block = 100.0 / 11.0;
    CHECK(silent.regular[10] == doctest::Approx(s[10] + p[10] * block).epsilon(1e-12));
}

TEST_CASE("ring sandwich")
{
    for (int n : {5, 100, 1000}) {
        for (double p : {0.25, 0.5, 1.0}) {
            for (double q : {0.5, 1.0}) {
                const auto a = urn_capture_ages(n, 1.0, p, q);
                const auto all = urn_age_bounds_all(n, 1.0, p, a.infected);
                REQUIRE(all.size() == static_cast<std::size_t>(n - 1));
                for (int m = 1; m < n; ++m) {
                    const auto& b = all[static_cast<std::size_t>(m - 1)];
                    CHECK(b.lower <= a.regular[m - 1] * (1 + 1e-12));
                    CHECK(a.regular[m - 1] <= b.upper * (1 + 1e-12));
                    CHECK(b.lower <= b.upper);
                }
                const auto one = urn_age_bounds(n, 1.0, p, n / 2, a.infected);
                REQUIRE(one.has_value());
                CHECK(one->lower == doctest::Approx(all[n / 2 - 1].lower));
                CHECK(one->upper == doctest::Approx(all[n / 2 - 1].upper));
            }
        }
    }
    CHECK_FALSE(urn_age_bounds(10, 1.0, 0.0, 3, 10.0).has_value());
    CHECK(urn_age_bounds_all(10, 1.0, 0.0, 10.0).empty());
}

TEST_CASE("ring sandwich is order sqrt(n) deep in the ring")
{
    const int n = 10000;
    const auto a = urn_capture_ages(n, 1.0, 0.5, 1.0);
    const int m = static_cast<int>(std::floor(std::pow(n, 0.8)));
    const auto b = urn_age_bounds(n, 1.0, 0.5, m, a.infected);
    REQUIRE(b.has_value());
    CHECK(b->lower / 100.0 >= 0.5);
    CHECK(b->upper / 100.0 <= 4.0);
}

TEST_CASE("honest networks")
{
    for (int n : {2, 5, 40}) {
        const auto fcn = fcn_honest_ages(n, 1.0);
        const auto dense = honest_dense_ages(Topology::FullyConnectedCapture, n, 1.0);
        for (int i = 1; i <= n; ++i) CHECK(fcn.node_age(i) == doctest::Approx(dense.node_age(i)).epsilon(1e-10));
        const auto ring = urn_honest_ages(n, 1.0);
        const auto ring_dense = honest_dense_ages(Topology::UnidirectionalRingCapture, n, 1.0);
        for (int i = 1; i <= n; ++i) CHECK(ring.node_age(i) == doctest::Approx(ring_dense.node_age(i)).epsilon(1e-10));
    }
    // Honest fully connected ages grow like log n, the honest ring like sqrt(n).
    CHECK(fcn_honest_ages(1000, 1.0).v1() < 2.0 * harmonic_number(999));
    CHECK(urn_honest_ages(400, 1.0).v1() / 20.0 == doctest::Approx(1.236).epsilon(0.01));
}

TEST_CASE("scaling spot checks")
{
    const auto a5 = fcn_capture_ages(5000, 1.0, 0.5, 1.0);
    const auto a10 = fcn_capture_ages(10000, 1.0, 0.5, 1.0);
    CHECK((a10.v1() / 10000.0) / (a5.v1() / 5000.0) == doctest::Approx(1.0).epsilon(0.05));

    for (int n : {1000, 5000, 10000}) {
        CHECK(fcn_capture_ages(n, 1.0, 0.0, 0.5).v1() / harmonic_number(n - 1) <= std::exp(1.0));
        const double case3 = fcn_capture_ages(n, 1.0, 0.5, 0.5).v1() / harmonic_number(n - 1);
        CHECK(case3 <= 2.0 * 1.25);
    }

    auto deep = [](int n) {
        const int m = static_cast<int>(std::floor(std::pow(n, 0.8)));
        return urn_capture_ages(n, 1.0, 0.5, 1.0).regular[m - 1] / std::sqrt(static_cast<double>(n));
    };
    CHECK(deep(10000) / deep(5000) == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("dispatcher and argument checks")
{
    NetworkSpec s;
    s.kind = {Topology::FullyConnectedMitm, true};
    s.n = 8;
    const auto honest_mitm = analytic_ages(s);
    CHECK(honest_mitm.v1() == doctest::Approx(fcn_honest_ages(8, 1.0).v1()));
    CHECK_FALSE(honest_mitm.adversary.has_value());

    CHECK_THROWS_AS(fcn_capture_ages(1, 1.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(urn_capture_ages(5, -1.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(fcn_case_bounds(5, 1.0, 2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(honest_dense_ages(Topology::FullyConnectedCapture, 1, 1.0), std::invalid_argument);
}
