#pragma once

#include "jtq/numeric.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

namespace jtq {

// Memory ceiling for sieve allocations, in bytes.  A smallest-prime-factor
// table costs 4 bytes per entry, so the default 2 GiB admits limits up to
// ~5e8.  Adjustable at runtime (CLI exposes it); exceeding it raises
// capacity_error instead of letting the allocator OOM the process.
inline std::atomic<std::uint64_t>& sieve_memory_limit_bytes() {
    static std::atomic<std::uint64_t> v{2ull << 30};
    return v;
}

// Smallest prime factor for every n in [2, limit], via a linear sieve.
// spf[0] and spf[1] are 0 (no prime factor).  spf[n] == n exactly when n is
// prime, which doubles as the primality table.
class SpfTable {
public:
    explicit SpfTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 2) throw std::invalid_argument("SpfTable: limit must be >= 2");
        const std::uint64_t need = (limit + 1) * sizeof(std::uint32_t);
        if (limit > 0xFFFFFFFFull || need > sieve_memory_limit_bytes().load())
            throw capacity_error("SpfTable: limit " + std::to_string(limit) +
                                 " exceeds sieve memory ceiling");
        spf_.assign(limit + 1, 0);
        primes_.reserve(limit > 100 ? static_cast<std::size_t>(
                            1.3 * double(limit) / std::log(double(limit))) : 32);
        for (std::uint64_t n = 2; n <= limit; ++n) {
            if (spf_[n] == 0) {
                spf_[n] = static_cast<std::uint32_t>(n);
                primes_.push_back(static_cast<std::uint32_t>(n));
            }
            for (std::uint32_t p : primes_) {
                if (p > spf_[n] || p * n > limit) break;
                spf_[p * n] = p;
            }
        }
    }

    std::uint64_t limit() const { return limit_; }

    std::uint32_t operator[](std::uint64_t n) const {
        if (n > limit_) throw std::out_of_range("SpfTable: index beyond sieve limit");
        return spf_[n];
    }

    bool is_prime(std::uint64_t n) const { return n >= 2 && (*this)[n] == n; }

    const std::vector<std::uint32_t>& primes() const { return primes_; }

    // Distinct prime / exponent pairs of n, cheapest available route.
    template <typename Fn>  // Fn(std::uint32_t p, unsigned a)
    void for_each_prime_power(std::uint64_t n, Fn&& fn) const {
        while (n > 1) {
            const std::uint32_t p = (*this)[n];
            unsigned a = 0;
            while (n % p == 0) { n /= p; ++a; }
            fn(p, a);
        }
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

inline SpfTable sieve_spf(std::uint64_t limit) { return SpfTable(limit); }

// Primes in [2, limit] without keeping the spf table around.
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    if (limit < 2) return {};
    return SpfTable(limit).primes();
}

}  // namespace jtq
