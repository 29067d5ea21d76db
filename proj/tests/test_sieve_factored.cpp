#include <catch2/catch_amalgamated.hpp>

#include <jtq/factored.hpp>
#include <jtq/sieve.hpp>

#include <random>

using namespace jtq;

namespace {
bool slow_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
}  // namespace

TEST_CASE("SpfTable matches trial division") {
    SpfTable spf(5000);
    for (std::uint64_t n = 2; n <= 5000; ++n) {
        std::uint64_t least = 0;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { least = d; break; }
        if (!least) least = n;
        CHECK(spf[n] == least);
        CHECK(spf.is_prime(n) == slow_prime(n));
    }
    CHECK_THROWS_AS(spf[5001], std::out_of_range);
}

TEST_CASE("prime counts and prime list") {
    SpfTable spf(1000);
    CHECK(spf.primes().size() == 168);
    CHECK(spf.primes().front() == 2);
    CHECK(spf.primes().back() == 997);
    CHECK(primes_up_to(100).size() == 25);
}

TEST_CASE("SpfTable rejects bad limits") {
    CHECK_THROWS_AS(SpfTable(1), std::invalid_argument);
    const auto saved = sieve_memory_limit_bytes().load();
    sieve_memory_limit_bytes() = 1024;
    CHECK_THROWS_AS(SpfTable(100000), capacity_error);
    sieve_memory_limit_bytes() = saved;
}

TEST_CASE("for_each_prime_power walks the full factorization") {
    SpfTable spf(400);
    std::vector<std::pair<std::uint32_t, unsigned>> got;
    spf.for_each_prime_power(360, [&](std::uint32_t p, unsigned a) { got.emplace_back(p, a); });
    CHECK(got == std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("factorize reconstructs n with ascending distinct primes") {
    std::mt19937_64 rng(814);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000000000ULL);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t n = dist(rng);
        const auto f = factorize(n);
        std::uint64_t prod = 1;
        std::uint64_t prev = 1;
        for (const auto& [p, a] : f.factors) {
            CHECK(p > prev);
            CHECK(a >= 1);
            CHECK(slow_prime(p));
            prev = p;
            for (unsigned i = 0; i < a; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
    CHECK_THROWS_AS(factorize(0), std::domain_error);
    CHECK(factorize(1).factors.empty());
}

TEST_CASE("factorize via spf agrees with trial division") {
    SpfTable spf(3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        const auto a = factorize(n);
        const auto b = factorize(n, spf);
        CHECK(a.factors == b.factors);
    }
}

TEST_CASE("mobius and the unit convolution") {
    CHECK(mobius(factorize(1)) == 1);
    CHECK(mobius(factorize(2)) == -1);
    CHECK(mobius(factorize(4)) == 0);
    CHECK(mobius(factorize(6)) == 1);
    CHECK(mobius(factorize(30)) == -1);
    for (std::uint64_t n = 1; n <= 500; ++n) {
        int total = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) total += mobius(factorize(d));
        CHECK(total == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("phi and psi fast paths match the exact forms") {
    SpfTable spf(5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        const auto f = factorize(n, spf);
        CHECK(Int(euler_phi_u64(n, spf)) == euler_phi(f));
        CHECK(Int(dedekind_psi_u64(n, spf)) == dedekind_psi(f));
    }
    CHECK(euler_phi(factorize(10)) == 4);
    CHECK(dedekind_psi(factorize(10)) == 18);
}
