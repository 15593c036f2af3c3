#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ocm {

/// Neumaier-compensated accumulator. Results are deterministic for a fixed
/// visit order, which all callers in this library guarantee (observation
/// index order).
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated sum of term(i) for i in [0, n), visited in index order.
template <typename F>
double compensated_sum(std::size_t n, F&& term) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        acc.add(term(i));
    }
    return acc.value();
}

/// Pairwise summation over a fixed reduction tree (blocks of 64 at the
/// leaves). Deterministic for a given input order.
double pairwise_sum(std::span<const double> xs);

/// Median of a sample (copies and partially sorts). Even sizes average the
/// two central order statistics.
double median(std::span<const double> xs);

}  // namespace ocm
