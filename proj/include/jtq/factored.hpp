#pragma once

#include "jtq/numeric.hpp"
#include "jtq/sieve.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace jtq {

// A positive integer together with its prime factorization p1^a1 * ... * pk^ak,
// primes strictly increasing.  n = 1 has an empty factorization.
struct FactoredInteger {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;  // (p, a), p ascending

    std::size_t omega() const { return factors.size(); }

    std::uint64_t radical() const {
        std::uint64_t r = 1;
        for (auto& [p, a] : factors) r *= p;
        return r;
    }

    bool squarefree() const {
        return std::all_of(factors.begin(), factors.end(),
                           [](auto& f) { return f.second == 1; });
    }
};

// Trial-division factorization; fine for one-off values up to ~1e12.
inline FactoredInteger factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    FactoredInteger f;
    f.n = n;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned a = 0;
            while (n % p == 0) { n /= p; ++a; }
            f.factors.emplace_back(p, a);
        }
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

// Sieve-backed factorization, the bulk route.
inline FactoredInteger factorize(std::uint64_t n, const SpfTable& spf) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    if (n > spf.limit()) return factorize(n);
    FactoredInteger f;
    f.n = n;
    spf.for_each_prime_power(n, [&](std::uint32_t p, unsigned a) {
        f.factors.emplace_back(p, a);
    });
    return f;
}

inline int mobius(const FactoredInteger& f) {
    if (!f.squarefree()) return 0;
    return (f.omega() % 2 == 0) ? 1 : -1;
}

inline Int euler_phi(const FactoredInteger& f) {
    Int r = f.n;
    for (auto& [p, a] : f.factors) { r /= p; r *= (p - 1); }
    return r;
}

// Dedekind psi: n * prod_{p|n} (1 + 1/p) = J_2(n)/J_1(n).
inline Int dedekind_psi(const FactoredInteger& f) {
    Int r = f.n;
    for (auto& [p, a] : f.factors) { r /= p; r *= (p + 1); }
    return r;
}

// Word-sized fast paths for dense sweeps (n <= sieve limit keeps these within
// uint64 for phi/psi since both are <= 2n).
inline std::uint64_t euler_phi_u64(std::uint64_t n, const SpfTable& spf) {
    std::uint64_t r = n;
    spf.for_each_prime_power(n, [&](std::uint32_t p, unsigned) {
        r = r / p * (p - 1);
    });
    return r;
}

inline std::uint64_t dedekind_psi_u64(std::uint64_t n, const SpfTable& spf) {
    std::uint64_t r = n;
    spf.for_each_prime_power(n, [&](std::uint32_t p, unsigned) {
        r = r / p * (p + 1);
    });
    return r;
}

}  // namespace jtq
