#pragma once

// Harmonic numbers, the ring kernel prod_{k<=j} 1/(1 + k/n) and its partial
// sums, plus the Gaussian envelopes that sandwich them.

#include <cstddef>
#include <vector>

namespace agl {

// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x)
    {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// sum_{k=1}^{n} 1/k. Requires n >= 1.
double harmonic_number(long n);

// Entry j (j = 0..m) is sum_{k=1}^{j} log(1 + k/n), i.e. minus the log of the
// prefix product. Requires n >= 1 and 0 <= m <= n.
std::vector<double> log_prefix_products(long n, long m);

// Entry j (j = 0..m) is prod_{k=1}^{j} 1/(1 + k/n), evaluated in log space.
// Entries underflow to 0 once j^2/n passes roughly 1400.
std::vector<double> prefix_products(long n, long m);

// Entry j (j = 0..m) is sum_{i=1}^{j} prefix_products(n, m)[i].
std::vector<double> prefix_product_sums(long n, long m);

// sum_{j=1}^{n0} prod_{k=1}^{j} 1/(1 + k/n). Requires 1 <= n0 <= n.
double lemma_sum(long n, long n0);

struct Envelope {
    double lower = 0.0;  // sum_{j=1}^{n0} exp(-j^2 / n)
    double upper = 0.0;  // sum_{j=1}^{n0} exp(-j^2 / (4n))
};

Envelope lemma_envelopes(long n, long n0);

}  // namespace agl
