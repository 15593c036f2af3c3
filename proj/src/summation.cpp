#include "ocm/summation.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocm {

namespace {

double pairwise_sum_impl(const double* xs, std::size_t n) {
    if (n <= 64) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < n; ++i) {
            acc.add(xs[i]);
        }
        return acc.value();
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum_impl(xs.data(), xs.size());
}

double median(std::span<const double> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("median: empty sample");
    }
    std::vector<double> v(xs.begin(), xs.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) {
        return hi;
    }
    double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

}  // namespace ocm
