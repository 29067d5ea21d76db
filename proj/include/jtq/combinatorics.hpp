#pragma once

#include "jtq/numeric.hpp"

#include <mutex>
#include <vector>

namespace jtq {

// Bernoulli numbers by the defining recursion
//   B_0 = 1,  B_n = −Σ_{k=0}^{n−1} C(n,k) B_k/(n−k+1),
// convention B_1 = −1/2.  Exact, memoized per process (the zeta engine pulls
// these up to index ~200, so the O(N^2) recursion runs once).
inline std::vector<Rat> bernoulli_numbers(unsigned N) {
    static std::vector<Rat> cache{Rat(1)};
    static std::vector<Int> binom_row{Int(1)};  // row of C(n,·) alongside cache
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (cache.size() <= N) {
        const unsigned n = static_cast<unsigned>(cache.size());
        // extend Pascal row to C(n, ·)
        binom_row.push_back(Int(1));
        for (std::size_t j = binom_row.size() - 2; j >= 1; --j)
            binom_row[j] += binom_row[j - 1];
        Rat acc = 0;
        for (unsigned k = 0; k < n; ++k)
            if (cache[k] != 0)
                acc += Rat(binom_row[k]) * cache[k] / Rat(n - k + 1);
        cache.push_back(-acc);
    }
    return std::vector<Rat>(cache.begin(), cache.begin() + N + 1);
}

inline Rat bernoulli(unsigned n) { return bernoulli_numbers(n)[n]; }

// Signed Stirling numbers of the first kind: coefficients of
// X(X−1)⋯(X−k+1) = Σ_j c(k,j) X^j, with c(k,k)=1, c(k,0)=0 for k ≥ 1.
// Recurrence: multiply the running polynomial by (X − (k−1)).
inline std::vector<Int> stirling_first_signed(unsigned k) {
    if (k == 0) return {Int(1)};
    std::vector<Int> c{Int(0), Int(1)};  // X
    for (unsigned m = 1; m < k; ++m) {
        std::vector<Int> next(c.size() + 1, Int(0));
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= Int(m) * c[j];
        }
        c = std::move(next);
    }
    return c;
}

// λ = (λ_1,…,λ_k) with Σ i·λ_i = k.
using WeightedPartition = std::vector<unsigned>;

// All weighted partitions of k, enumerated with λ_1 descending, then λ_2
// descending, and so on — the deterministic order the constant-assembly code
// (and its cross-language reproductions) rely on.
inline std::vector<WeightedPartition> weighted_partitions(unsigned k) {
    if (k == 0) throw std::invalid_argument("weighted_partitions: k must be >= 1");
    std::vector<WeightedPartition> out;
    WeightedPartition lambda(k, 0);
    auto rec = [&](auto&& self, unsigned idx, unsigned remaining) -> void {
        if (idx == k) {
            // λ_k is forced: k·λ_k = remaining
            if (remaining % k == 0) {
                lambda[k - 1] = remaining / k;
                out.push_back(lambda);
            }
            return;
        }
        const unsigned i = idx;  // weight of this slot is idx (1-based)
        for (unsigned v = remaining / i + 1; v-- > 0;) {
            lambda[i - 1] = v;
            self(self, idx + 1, remaining - v * i);
        }
        lambda[i - 1] = 0;
    };
    rec(rec, 1, k);
    return out;
}

}  // namespace jtq
