#include <catch2/catch_amalgamated.hpp>

#include <jtq/zeta.hpp>

using namespace jtq;

namespace {
Real abs_err(const Real& a, const char* ref) { return abs(a - Real(ref)); }
}

TEST_CASE("zeta at integer arguments to 50 digits") {
    PrecisionContext ctx;
    ctx.decimal_digits = 50;
    // odd zeta values have no closed form; ζ(3) is Apéry's constant
    CHECK(abs_err(zeta_real(Real(3), ctx),
                  "1.2020569031595942853997381615114499907649862923405") < Real("1e-48"));
    // even values against pi powers
    const Real pi("3.14159265358979323846264338327950288419716939937510582097494");
    CHECK(abs(zeta_real(Real(2), ctx) - pi * pi / 6) < Real("1e-48"));
    CHECK(abs(zeta_real(Real(4), ctx) - pi * pi * pi * pi / 90) < Real("1e-48"));
    CHECK(abs_err(zeta_real(Real(10), ctx),
                  "1.0009945751278180853371459589003190170060195315645") < Real("1e-48"));
    CHECK(ctx.reported_error < 1e-48);
}

TEST_CASE("zeta at non-integer arguments") {
    PrecisionContext ctx;
    ctx.decimal_digits = 40;
    // ζ(3/2), ζ(5/2) published values
    CHECK(abs_err(zeta_real(Real(3) / 2, ctx),
                  "2.612375348685488343348567567924071630570") < Real("1e-38"));
    CHECK(abs_err(zeta_real(Real(5) / 2, ctx),
                  "1.341487257250917179756769693348612136623") < Real("1e-38"));
}

TEST_CASE("zeta domain") {
    PrecisionContext ctx;
    CHECK_THROWS_AS(zeta_real(Real(1), ctx), std::domain_error);
    CHECK_THROWS_AS(zeta_real(Real("0.5"), ctx), std::domain_error);
}

TEST_CASE("prime zeta to reference precision") {
    PrecisionContext ctx;
    ctx.decimal_digits = 50;
    CHECK(abs_err(prime_zeta(2, ctx),
                  "0.45224742004106549850654336483224793417323134323989") < Real("1e-48"));
    CHECK(abs_err(prime_zeta(3, ctx),
                  "0.17476263929944353642311331466570670097541212192615") < Real("1e-48"));
    CHECK(abs_err(prime_zeta(10, ctx),
                  "0.00099360357443698021785585070014773941630187254528520") < Real("1e-50"));
    CHECK(ctx.reported_error < 1e-48);
}

TEST_CASE("prime zeta matches a direct prime sum at moderate accuracy") {
    PrecisionContext ctx;
    ctx.decimal_digits = 30;
    const auto primes = primes_up_to(200000);
    for (unsigned s = 2; s <= 5; ++s) {
        Real direct = 0;
        for (auto it = primes.rbegin(); it != primes.rend(); ++it)
            direct += pow(Real(1) / Real(*it), int(s));
        const double tail = double(s) / (double(s) - 1) / std::pow(2e5, double(s) - 1) /
                            std::log(2e5);
        CHECK(abs(prime_zeta(s, ctx) - direct) < Real(2 * tail));
    }
}

TEST_CASE("integer-argument memoization returns identical values") {
    PrecisionContext ctx;
    ctx.decimal_digits = 45;
    const Real a = zeta_real(Real(7), ctx);
    const Real b = zeta_real(Real(7), ctx);
    CHECK(a == b);
}
