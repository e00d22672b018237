#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// naive polynomial arithmetic instead of pentagonal/sparse expansion, a
// parts-table DP for partition counts, and a bivariate constant-term brute
// force for 4-colored Frobenius partitions.

#include <map>
#include <vector>

#include "etaq/qseries.hpp"

namespace oracles {

using etaq::Int;

// dense truncated polynomial multiply, schoolbook
inline std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n) {
    std::vector<Int> c(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (b[j] != 0) c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

// prod_{j=1}^{N-1} (1 - q^j) truncated to N terms, by naive multiplication.
inline std::vector<Int> naive_euler_product(std::size_t n) {
    std::vector<Int> acc(n);
    acc[0] = 1;
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<Int> f(n);
        f[0] = 1;
        if (j < n) f[j] = -1;
        acc = poly_mul(acc, f, n);
    }
    return acc;
}

// divide by (1 - q^j): multiply by the geometric series in place.
inline void naive_divide_one_minus(std::vector<Int>& c, std::size_t j) {
    for (std::size_t i = j; i < c.size(); ++i) c[i] += c[i - j];
}

inline void naive_multiply_one_minus(std::vector<Int>& c, std::size_t j) {
    for (std::size_t i = c.size(); i-- > j;) c[i] -= c[i - j];
}

// core of prod (1-q^{d j})^{r_d} by naive factor-by-factor arithmetic.
inline std::vector<Int> naive_eta_core(const std::map<long, long>& exps, std::size_t n) {
    std::vector<Int> c(n);
    c[0] = 1;
    for (auto& [d, r] : exps) {
        for (std::size_t j = static_cast<std::size_t>(d); j < n; j += static_cast<std::size_t>(d)) {
            for (long k = 0; k < std::labs(r); ++k) {
                if (r > 0)
                    naive_multiply_one_minus(c, j);
                else
                    naive_divide_one_minus(c, j);
            }
        }
    }
    return c;
}

// partition counts p(0..n-1) by the parts-table recurrence
// P(n, k) = P(n - k, k) + P(n, k - 1), independent of the pentagonal theorem.
inline std::vector<Int> partition_counts_dp(std::size_t n) {
    std::vector<Int> p(n);
    p[0] = 1;
    for (std::size_t part = 1; part < n; ++part)
        for (std::size_t m = part; m < n; ++m) p[m] += p[m - part];
    return p;
}

// 4-colored generalized Frobenius partition counts by brute force:
// cphi_4(n) = [z^0 x^{2n}] prod_{m>=0} (1 + z x^{2m+1})^4 (1 + z^{-1} x^{2m+1})^4
// with x = q^{1/2}; entries m in a row are distinct per color.
inline std::vector<Int> cphi4_bruteforce(std::size_t n_max) {
    const long D = 12;                      // z-degrees tracked: [-D, D]
    const std::size_t X = 2 * n_max + 1;    // x-degrees tracked
    // table[z + D][x]
    std::vector<std::vector<Int>> table(2 * D + 1, std::vector<Int>(X));
    table[D][0] = 1;
    for (std::size_t m = 0; 2 * m + 1 < X; ++m) {
        std::size_t e = 2 * m + 1;
        for (int rep = 0; rep < 4; ++rep) {
            // multiply by (1 + z x^e)
            std::vector<std::vector<Int>> next = table;
            for (long z = -D; z < D; ++z)
                for (std::size_t x = 0; x + e < X; ++x) {
                    const Int& v = table[static_cast<std::size_t>(z + D)][x];
                    if (v != 0) next[static_cast<std::size_t>(z + 1 + D)][x + e] += v;
                }
            table = std::move(next);
        }
        for (int rep = 0; rep < 4; ++rep) {
            // multiply by (1 + z^{-1} x^e)
            std::vector<std::vector<Int>> next = table;
            for (long z = -D + 1; z <= D; ++z)
                for (std::size_t x = 0; x + e < X; ++x) {
                    const Int& v = table[static_cast<std::size_t>(z + D)][x];
                    if (v != 0) next[static_cast<std::size_t>(z - 1 + D)][x + e] += v;
                }
            table = std::move(next);
        }
    }
    std::vector<Int> out(n_max);
    for (std::size_t n = 0; n < n_max; ++n) out[n] = table[D][2 * n];
    return out;
}

}  // namespace oracles
