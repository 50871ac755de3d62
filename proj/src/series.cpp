#include "agl/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace agl {

double harmonic_number(long n)
{
    if (n < 1) throw std::invalid_argument("harmonic_number: n must be >= 1");
    // Smallest terms first.
    CompensatedSum s;
    for (long k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
    return s.value();
}

namespace {

void check_range(long n, long m, const char* who)
{
    if (n < 1 || m < 0 || m > n)
        throw std::invalid_argument(std::string(who) + ": need n >= 1 and 0 <= m <= n");
}

}  // namespace

std::vector<double> log_prefix_products(long n, long m)
{
    check_range(n, m, "log_prefix_products");
    std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
    const double dn = static_cast<double>(n);
    CompensatedSum acc;
    for (long k = 1; k <= m; ++k) {
        acc += std::log1p(static_cast<double>(k) / dn);
        out[static_cast<std::size_t>(k)] = acc.value();
    }
    return out;
}

std::vector<double> prefix_products(long n, long m)
{
    auto logs = log_prefix_products(n, m);
    for (double& v : logs) v = std::exp(-v);
    return logs;
}

std::vector<double> prefix_product_sums(long n, long m)
{
    const auto prod = prefix_products(n, m);
    std::vector<double> out(prod.size(), 0.0);
    CompensatedSum acc;
    for (std::size_t j = 1; j < prod.size(); ++j) {
        acc += prod[j];
        out[j] = acc.value();
    }
    return out;
}

double lemma_sum(long n, long n0)
{
    if (n0 < 1 || n0 > n) throw std::invalid_argument("lemma_sum: need 1 <= n0 <= n");
    return prefix_product_sums(n, n0).back();
}

Envelope lemma_envelopes(long n, long n0)
{
    if (n0 < 1 || n0 > n) throw std::invalid_argument("lemma_envelopes: need 1 <= n0 <= n");
    const double dn = static_cast<double>(n);
    CompensatedSum lo;
    CompensatedSum hi;
    for (long j = 1; j <= n0; ++j) {
        const double j2 = static_cast<double>(j) * static_cast<double>(j);
        lo += std::exp(-j2 / dn);
        hi += std::exp(-j2 / (4.0 * dn));
    }
    return {lo.value(), hi.value()};
}

}  // namespace agl
