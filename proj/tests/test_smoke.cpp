// One touch per module; real coverage lives in the per-module suites.
#include <catch2/catch_amalgamated.hpp>

#include <jtq/jtq.hpp>

using namespace jtq;

TEST_CASE("smoke: every module links and agrees on tiny inputs") {
    CHECK(jordan_totient(2, 6) == 24);
    CHECK(jordan_quotient(ExponentVector{-2, 1}, 6) == Rat(6));

    const auto theta = theta_from_exponents(ExponentVector{-2, 1});
    CHECK(theta.theta_at(3) == Rat(1));
    CHECK(phi_theta(theta, 6) == Rat(6));

    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(stirling_first_signed(2)[1] == -1);
    CHECK(weighted_partitions(2).size() == 2);

    const auto phi6 = cyclotomic_poly(6);
    CHECK(phi6->coefficients == std::vector<Int>{1, -1, 1});
    CHECK(normalized_derivative(5, 1, Int(1)) == Rat(1, 2));

    CHECK(lehmer_ratio(5, 2) == Rat(4));
    CHECK(second_derivative_ratio_minus1(factorize(3)) == Rat(2));
    CHECK(schwarzian_at_1(factorize(5)) == Rat(-3));

    PrecisionContext ctx;
    ctx.decimal_digits = 30;
    const Real z3 = zeta_real(Real(3), ctx);
    CHECK(std::abs(static_cast<double>(z3 - Real("1.2020569031595942853997"))) < 1e-20);

    const auto grid = std::vector<std::uint64_t>{10, 100};
    const auto sums = jordan_summatory_exact(ExponentVector{-2, 1}, 0, grid);
    CHECK(sums[0] == Rat(82, 3));

    const auto trunc = singular_series_truncated(theta, 5, ctx);
    CHECK(!trunc.exact);
    CHECK(std::abs(static_cast<double>(trunc.value - to_real(Rat(44, 15)))) < 1e-40);
}
