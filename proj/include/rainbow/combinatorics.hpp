#pragma once

#include <cstddef>
#include <vector>

namespace rainbow {

/// Visits every k-subset of {0..n-1} in lexicographic order. The visitor
/// returns false to stop early; the function returns false iff stopped.
template <class Visitor>
bool for_each_combination(std::size_t n, std::size_t k, Visitor&& visit) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Visits every tuple in the mixed-radix product sizes[0] x sizes[1] x ...
/// in lexicographic order. Empty factors produce no tuples.
template <class Visitor>
bool for_each_product(const std::vector<std::size_t>& sizes, Visitor&& visit) {
    for (std::size_t s : sizes)
        if (s == 0) return true;
    std::vector<std::size_t> idx(sizes.size(), 0);
    while (true) {
        if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return false;
        std::size_t i = sizes.size();
        while (i > 0) {
            --i;
            if (++idx[i] < sizes[i]) break;
            idx[i] = 0;
            if (i == 0) return true;
        }
        if (sizes.empty()) return true;
    }
}

/// Approximate binomial coefficient; only used to size budget gates.
inline double binomial_estimate(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace rainbow
