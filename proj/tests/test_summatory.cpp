#include <catch2/catch_amalgamated.hpp>

#include <jtq/jordan.hpp>
#include <jtq/summatory.hpp>

using namespace jtq;

namespace {
Rat brute_quotient_sum(const ExponentVector& e, std::uint64_t x, long beta) {
    Rat total = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        total += jordan_quotient(e, n) * pow_rat(Rat(Int(n)), beta);
    return total;
}
}  // namespace

TEST_CASE("exact summatory values against brute force") {
    const ExponentVector e{-2, 1};
    const auto theta = theta_from_exponents(e);
    const std::vector<std::uint64_t> grid{10, 100, 1000};
    const auto sums = summatory_exact(theta, 0, grid);
    CHECK(sums[0] == Rat(82, 3));
    CHECK(sums[1] == brute_quotient_sum(e, 100, 0));
    CHECK(sums[2] == brute_quotient_sum(e, 1000, 0));
}

TEST_CASE("jordan_summatory_exact handles unbalanced vectors via the weight shift") {
    const ExponentVector psi{-1, 1};
    const std::vector<std::uint64_t> grid{10, 200};
    const auto sums = jordan_summatory_exact(psi, 0, grid);
    CHECK(sums[0] == Rat(82));  // Σ_{n≤10} Ψ(n)
    CHECK(sums[1] == brute_quotient_sum(psi, 200, 0));
    const auto twisted = jordan_summatory_exact(psi, -1, grid);
    CHECK(twisted[1] == brute_quotient_sum(psi, 200, -1));
}

TEST_CASE("Real-path summatory agrees with the exact path for integral beta") {
    const auto theta = theta_from_exponents(ExponentVector{-2, 1});
    const std::vector<std::uint64_t> grid{100, 1000, 2500};
    const auto exact = summatory_exact(theta, 0, grid);
    const auto real = summatory(theta, 0.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(abs(real[i] - to_real(exact[i])) < Real("1e-120") * to_real(exact[i]));
}

TEST_CASE("non-integral beta matches a direct Real sum") {
    const auto theta = theta_from_exponents(ExponentVector{-2, 1});
    const std::vector<std::uint64_t> grid{500};
    const auto got = summatory(theta, -0.5, grid);
    Real brute = 0;
    for (std::uint64_t n = 1; n <= 500; ++n)
        brute += to_real(phi_theta(theta, n)) * pow(Real(n), Real("-0.5"));
    CHECK(abs(got[0] - brute) < Real("1e-120") * brute);
}

TEST_CASE("zero-support overrides drop even terms from the stream") {
    auto theta = theta_from_exponents(ExponentVector{-2, 1});
    theta.set_override(2, Rat(-1));
    const std::vector<std::uint64_t> grid{1000};
    const auto sums = summatory_exact(theta, 0, grid);
    Rat odd_only = 0;
    for (std::uint64_t n = 1; n <= 1000; n += 2)
        odd_only += jordan_quotient(ExponentVector{-2, 1}, n);
    CHECK(sums[0] == odd_only);
}

TEST_CASE("main terms") {
    CHECK(MainTerm(0.0)(Real(100)) == Real(100));
    CHECK(MainTerm(1.0)(Real(10)) == Real(50));
    CHECK(abs(MainTerm(-1.0)(Real(100)) - log(Real(100))) < Real("1e-140"));
    CHECK(abs(main_term(-0.5, Real(16)) - Real(8)) < Real("1e-140"));  // x^{1/2}/(1/2)
    CHECK_THROWS_AS(main_term(0.0, Real("0.5")), std::domain_error);
}

TEST_CASE("grid validation") {
    const auto theta = theta_from_exponents(ExponentVector{-2, 1});
    CHECK_THROWS_AS(summatory(theta, 0.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(summatory(theta, 0.0, {0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(summatory(theta, 0.0, {10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(summatory(theta, 0.0, {100, 10}), std::invalid_argument);
}

TEST_CASE("block accumulation is deterministic") {
    const auto theta = theta_from_exponents(ExponentVector{-4, 2});
    const std::vector<std::uint64_t> grid{4095, 4096, 4097, 10000};
    const auto a = summatory(theta, 0.0, grid, 1);
    const auto b = summatory(theta, 0.0, grid, 4);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a[i] == b[i]);
    // grid points at block boundaries really are prefix sums
    const auto exact = summatory_exact(theta, 0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(abs(a[i] - to_real(exact[i])) < Real("1e-118") * to_real(exact[i]));
}
