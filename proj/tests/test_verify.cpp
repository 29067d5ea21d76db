#include <catch2/catch_amalgamated.hpp>

#include <jtq/report_io.hpp>
#include <jtq/verify.hpp>

using namespace jtq;

namespace {
PrecisionContext quick_ctx() {
    PrecisionContext ctx;
    ctx.decimal_digits = 40;
    return ctx;
}
}  // namespace

TEST_CASE("theorem id parsing") {
    unsigned k = 0;
    CHECK(parse_theorem_id("thm1", k) == TheoremId::thm1);
    CHECK(parse_theorem_id("thm3(4)", k) == TheoremId::thm3);
    CHECK(k == 4);
    CHECK(parse_theorem_id("cor1(2)", k) == TheoremId::cor1);
    CHECK(k == 2);
    CHECK_THROWS_AS(parse_theorem_id("thm9", k), std::invalid_argument);
    CHECK_THROWS_AS(parse_theorem_id("thm3(2", k), std::invalid_argument);
}

TEST_CASE("thm2 report: structure, residual identity, band verdict") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.e = ExponentVector{-2, 1};
    const auto rep = verify_theorem(TheoremId::thm2, 10000, ctx, opts);
    CHECK(rep.theorem == "thm2");
    REQUIRE(rep.x_grid.size() >= 20);
    CHECK(rep.x_grid.back() == 10000);
    REQUIRE(rep.sums.size() == rep.x_grid.size());
    for (std::size_t i = 1; i < rep.sums.size(); ++i) CHECK(rep.sums[i] > rep.sums[i - 1]);
    for (std::size_t i = 0; i < rep.x_grid.size(); ++i) {
        const double raw = static_cast<double>(rep.sums[i] - rep.predicted_main[i]);
        CHECK(rep.raw_residuals[i] == Catch::Approx(raw).margin(1e-9));
        CHECK(rep.residuals[i] ==
              Catch::Approx(rep.raw_residuals[i] - rep.fitted_values[i]).margin(1e-9));
    }
    CHECK(rep.fit.degree == 2);
    CHECK_FALSE(rep.fit.includes_constant);
    CHECK(rep.fit_with_constant.includes_constant);
    bool saw_band = false;
    for (const auto& v : rep.verdicts)
        if (v.name == "bound_ratio_band") {
            saw_band = true;
            CHECK(v.value >= 1.0);
            CHECK(std::isfinite(v.value));
        }
    CHECK(saw_band);
    CHECK(rep.constant.method == ConstantValue::Method::accelerated);
    CHECK(!rep.bound_expr.empty());
}

TEST_CASE("thm1 at desk scale passes its trends") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.e = ExponentVector{-2, 1};
    const auto rep = verify_theorem(TheoremId::thm1, 20000, ctx, opts);
    for (const auto& v : rep.verdicts) {
        INFO(v.name << " value=" << v.value << " threshold=" << v.threshold);
        CHECK(v.pass);
    }
}

TEST_CASE("thm3 k=2: oracle subsample runs and slope tracks sigma_k_phi") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.k = 2;
    opts.slope_tolerance = 0.05;  // desk scale; the 1% gate runs at 10^6
    const auto rep = verify_theorem(TheoremId::thm3, 20000, ctx, opts);
    CHECK(rep.theorem == "thm3(2)");
    CHECK(rep.oracle_checked > 0);
    bool saw_slope = false;
    for (const auto& v : rep.verdicts)
        if (v.name == "windowed_slope_rel_err") {
            saw_slope = true;
            INFO("slope rel err " << v.value);
            CHECK(v.pass);
        }
    CHECK(saw_slope);
}

TEST_CASE("thm3 k=1 main constant is exactly 1/2") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.k = 1;
    const auto rep = verify_theorem(TheoremId::thm3, 5000, ctx, opts);
    CHECK(rep.constant.exact);
    CHECK(rep.constant.exact_value == Rat(1, 2));
}

TEST_CASE("thm4 and thm5 desk-scale runs") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    const auto rep4 = verify_theorem(TheoremId::thm4, 10000, ctx, opts);
    CHECK(rep4.oracle_checked > 0);
    for (const auto& v : rep4.verdicts) {
        INFO("thm4 " << v.name << " value=" << v.value);
        CHECK(v.pass);
    }
    // main coefficient is (5S+12)/48
    const Real s = singular_series_accelerated(
        theta_from_exponents(ExponentVector{-2, 1}), ctx).value;
    const Real expect = (5 * s + 12) / 48 * Real(10000);
    CHECK(abs(rep4.predicted_main.back() - expect) < Real("1e-30"));

    const auto rep5 = verify_theorem(TheoremId::thm5, 10000, ctx, opts);
    CHECK(rep5.oracle_checked > 0);
    for (const auto& v : rep5.verdicts) {
        INFO("thm5 " << v.name << " value=" << v.value);
        CHECK(v.pass);
    }
    // thm5 sums are negative: S(Φ_n)(1) < 0 for n > 2
    CHECK(rep5.sums.back() < 0);
    const Real s42 = singular_series_accelerated(
        theta_from_exponents(ExponentVector{-4, 2}), ctx).value;
    CHECK(abs(rep5.predicted_main.back() + (s42 + 3) / 24 * Real(10000)) < Real("1e-30"));
}

TEST_CASE("cor1 k=2: residual stabilizes toward the constant") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.k = 2;
    const auto rep = verify_theorem(TheoremId::cor1, 10000, ctx, opts);
    CHECK(rep.theorem == "cor1(2)");
    CHECK(rep.fit.includes_constant);
    REQUIRE(rep.fit.coeffs.size() == 1);
    for (const auto& v : rep.verdicts) {
        INFO("cor1 " << v.name << " value=" << v.value << " thr=" << v.threshold);
        CHECK(v.pass);
    }
    // main term is S_{(-2)} log x
    const Real s = singular_series_accelerated(
        theta_from_exponents(ExponentVector{-2}), ctx).value;
    CHECK(abs(rep.predicted_main.back() - s * log(Real(10000))) < Real("1e-30"));
}

TEST_CASE("prop1 with fractional beta") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.e = ExponentVector{-2, 1};
    opts.beta = -0.5;
    const auto rep = verify_theorem(TheoremId::prop1, 10000, ctx, opts);
    for (const auto& v : rep.verdicts) {
        INFO("prop1 " << v.name << " value=" << v.value << " thr=" << v.threshold);
        CHECK(v.pass);
    }
    // main is 2 S sqrt(x)
    CHECK(abs(rep.predicted_main.back() -
              rep.constant.value * 2 * sqrt(Real(10000))) < Real("1e-30"));
}

TEST_CASE("verify rejects bad inputs") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    opts.e = ExponentVector{-1, 1};  // unbalanced
    CHECK_THROWS_AS(verify_theorem(TheoremId::thm1, 10000, ctx, opts), std::domain_error);
    VerifyOptions o2;
    o2.k = 0;
    CHECK_THROWS_AS(verify_theorem(TheoremId::thm3, 10000, ctx, o2), std::domain_error);
    VerifyOptions o3;
    o3.k = 7;  // over max_k
    CHECK_THROWS_AS(verify_theorem(TheoremId::thm3, 10000, ctx, o3), capacity_error);
    CHECK_THROWS_AS(verify_theorem(TheoremId::thm2, 2, ctx, VerifyOptions{}),
                    std::invalid_argument);
}

TEST_CASE("reports are deterministic and reproducible") {
    auto ctx1 = quick_ctx();
    auto ctx2 = quick_ctx();
    VerifyOptions opts;
    opts.k = 2;
    const auto a = verify_theorem(TheoremId::thm3, 5000, ctx1, opts);
    const auto b = verify_theorem(TheoremId::thm3, 5000, ctx2, opts);
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
    CHECK(a.oracle_checked == b.oracle_checked);
}

TEST_CASE("report serialization round-trips its comparable subset") {
    auto ctx = quick_ctx();
    VerifyOptions opts;
    const auto rep = verify_theorem(TheoremId::thm4, 5000, ctx, opts);
    ordered_json config;
    config["theorem"] = "thm4";
    config["x_max"] = 5000;
    const auto env1 = report_envelope(config, report_to_json(rep));
    const auto env2 = report_envelope(config, report_to_json(rep));
    CHECK(comparable_subset(env1) == comparable_subset(env2));
    CHECK(env1.contains("provenance"));
    CHECK(env1["provenance"].contains("timestamp"));

    const std::string csv = report_to_csv(rep, config);
    CHECK(csv.rfind("# config: {", 0) == 0);
    CHECK(csv.find("x,sum,main,fitted,residual,bound_ratio") != std::string::npos);
    // one data row per grid point
    std::size_t rows = 0;
    for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; ++pos)
        ++rows;
    CHECK(rows == rep.x_grid.size() + 1);
}
