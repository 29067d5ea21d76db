#include <catch2/catch_amalgamated.hpp>

#include <jtq/cyclotomic.hpp>

#include <random>

using namespace jtq;

namespace {
// reference: differentiate the coefficient vector k times, then Horner
Int naive_derivative_at(const CyclotomicPoly& f, unsigned k, const Int& z) {
    std::vector<Int> c = f.coefficients;
    for (unsigned round = 0; round < k; ++round) {
        if (c.size() <= 1) return 0;
        std::vector<Int> d(c.size() - 1);
        for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * Int(j);
        c = std::move(d);
    }
    Int acc = 0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * z + c[j];
    return acc;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}
}  // namespace

TEST_CASE("small cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1)->coefficients == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_poly(2)->coefficients == std::vector<Int>{1, 1});
    CHECK(cyclotomic_poly(6)->coefficients == std::vector<Int>{1, -1, 1});
    CHECK(cyclotomic_poly(12)->coefficients == std::vector<Int>{1, 0, -1, 0, 1});
    for (unsigned p : {2, 3, 5, 7, 11, 13}) {
        const auto& c = cyclotomic_poly(p)->coefficients;
        CHECK(c == std::vector<Int>(p, Int(1)));
    }
    // first coefficient outside {−1,0,1} appears at n=105
    const auto& c105 = cyclotomic_poly(105)->coefficients;
    CHECK(c105[7] == -2);
}

TEST_CASE("degree is phi(n) and the divisor product recovers X^n - 1") {
    for (unsigned n = 1; n <= 300; ++n)
        CHECK(Int(cyclotomic_poly(n)->degree()) == euler_phi(factorize(n)));
    for (unsigned n = 1; n <= 60; ++n) {
        std::vector<Int> prod{1};
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = poly_mul(prod, cyclotomic_poly(d)->coefficients);
        std::vector<Int> expect(n + 1, Int(0));
        expect[0] = -1;
        expect[n] = 1;
        CHECK(prod == expect);
    }
}

TEST_CASE("values at 1: p on prime powers, else 1") {
    for (unsigned n = 2; n <= 200; ++n) {
        const auto f = factorize(n);
        const Int expect = f.omega() == 1 ? Int(f.factors[0].first) : Int(1);
        CHECK(derivative_at(*cyclotomic_poly(n), 0, Int(1)) == expect);
    }
}

TEST_CASE("derivative_at matches naive differentiation") {
    std::mt19937_64 rng(40961);
    std::uniform_int_distribution<unsigned> ndist(1, 200);
    for (int trial = 0; trial < 60; ++trial) {
        const unsigned n = ndist(rng);
        const auto phi = cyclotomic_poly(n);
        for (unsigned k = 0; k <= 4; ++k)
            for (long z = -2; z <= 2; ++z)
                CHECK(derivative_at(*phi, k, Int(z)) == naive_derivative_at(*phi, k, Int(z)));
    }
    // hand-computed: Φ_5 = 1+X+X²+X³+X⁴ at 1
    const auto phi5 = cyclotomic_poly(5);
    CHECK(derivative_at(*phi5, 0, Int(1)) == 5);
    CHECK(derivative_at(*phi5, 1, Int(1)) == 10);
    CHECK(derivative_at(*phi5, 2, Int(1)) == 20);
    CHECK(derivative_at(*phi5, 3, Int(1)) == 30);
    CHECK(derivative_at(*phi5, 4, Int(1)) == 24);
    CHECK(derivative_at(*phi5, 5, Int(1)) == 0);
}

TEST_CASE("normalized derivative") {
    CHECK(normalized_derivative(5, 2, Int(1)) == Rat(1, 4));
    CHECK(normalized_derivative(5, 1, Int(1)) == Rat(1, 2));
    // Φ_6 at −1: value 3, slope −3, degree 2
    CHECK(normalized_derivative(6, 1, Int(-1)) == Rat(-1, 2));
    CHECK_THROWS_AS(normalized_derivative(1, 1, Int(1)), std::domain_error);  // Φ_1(1)=0
    CHECK_THROWS_AS(normalized_derivative(0, 1, Int(1)), std::domain_error);
    CHECK_THROWS_AS(normalized_derivative(5, 0, Int(1)), std::domain_error);
}

TEST_CASE("derivative order cap") {
    const auto saved = max_derivative_order().load();
    max_derivative_order() = 3;
    CHECK_THROWS_AS(derivative_at(*cyclotomic_poly(5), 4, Int(1)), capacity_error);
    max_derivative_order() = saved;
    CHECK(derivative_at(*cyclotomic_poly(5), 4, Int(1)) == 24);
}

TEST_CASE("cache shares small polynomials, large ones are rebuilt") {
    const auto a = cyclotomic_poly(360);
    const auto b = cyclotomic_poly(360);
    CHECK(a.get() == b.get());
    const auto big = cyclotomic_poly(2000);
    CHECK(big->degree() == 800);
    CHECK(cyclotomic_poly(2000).get() != big.get());
}
