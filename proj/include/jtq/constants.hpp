#pragma once

#include "jtq/combinatorics.hpp"
#include "jtq/precision.hpp"
#include "jtq/sieve.hpp"
#include "jtq/theta.hpp"
#include "jtq/zeta.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace jtq {

// Raised when the accelerated Euler-product method cannot proceed because the
// log expansion is invalid beyond the chosen direct_prime_limit; raising P0
// usually fixes it.  A precision failure, not a domain one.
struct expansion_error : precision_error {
    using precision_error::precision_error;
};

struct ConstantValue {
    Real value = 0;
    double error_bound = 0.0;
    enum class Method { truncated, accelerated } method = Method::accelerated;
    std::string inputs;
    bool exact = false;      // set when the value is known exactly (then
    Rat exact_value = 0;     //  exact_value carries it and error_bound = 0)
    std::uint64_t factor_count = 0;  // primes actually multiplied

    static const char* method_name(Method m) {
        return m == Method::truncated ? "truncated" : "accelerated";
    }
};

// 𝔖 = Π_{p ≤ prime_limit} (1 + θ_p/p), multiplied factor by factor.
// The error_bound is a heuristic for the omitted p > prime_limit tail: with
// θ_p ≈ α/p the log-tail is Σ_{p>X} |θ_p|/p ≈ |θ_{p'}/p'| · p'/log p' at the
// next prime p', and we scale by 10 for safety.  Honest but not certified —
// the accelerated method is the trustworthy one.
inline ConstantValue singular_series_truncated(const ThetaSpec& theta,
                                               std::uint64_t prime_limit,
                                               PrecisionContext& ctx) {
    ctx.validate();
    if (prime_limit < 2)
        throw std::invalid_argument("singular_series_truncated: prime_limit must be >= 2");
    ConstantValue out;
    out.method = ConstantValue::Method::truncated;
    out.inputs = theta.description().empty() ? "theta" : theta.description();

    Real prod = 1;
    bool exact_zero = false;
    {
        SpfTable spf(prime_limit);
        for (std::uint32_t p : spf.primes()) {
            const Rat factor = Rat(1) + theta.theta_at(p) / Rat(p);
            ++out.factor_count;
            if (factor == 0) { exact_zero = true; break; }
            prod *= to_real(factor);
        }
    }
    if (exact_zero) {
        out.value = 0;
        out.exact = true;
        out.exact_value = 0;
        out.error_bound = 0;
        ctx.reported_error = 0;
        return out;
    }
    // If θ has no generic rule the product is supported on the overrides:
    // every other factor is exactly 1, and the omitted part is computable.
    if (!theta.rule()) {
        Rat omitted = 1;
        for (auto& [p, v] : theta.overrides())
            if (p > prime_limit) omitted *= Rat(1) + v / Rat(p);
        if (omitted == 1) {
            Rat exact_prod = 1;
            for (auto& [p, v] : theta.overrides())
                if (p <= prime_limit) exact_prod *= Rat(1) + v / Rat(p);
            out.value = to_real(exact_prod);
            out.exact = true;
            out.exact_value = exact_prod;
            out.error_bound = 0;
        } else {
            out.value = prod;
            const double vd = std::abs(static_cast<double>(prod));
            const double od = std::abs(static_cast<double>(to_real(omitted)));
            out.error_bound = vd * std::abs(od - 1.0);
        }
        ctx.reported_error = out.error_bound;
        return out;
    }
    // next prime beyond the cutoff
    std::uint64_t pnext = prime_limit + 1;
    while (true) {
        const FactoredInteger pf = factorize(pnext);
        if (pf.omega() == 1 && pf.factors[0].second == 1) break;
        ++pnext;
    }
    const double thp = std::abs(static_cast<double>(to_real(theta.theta_at(pnext)))) /
                       static_cast<double>(pnext);
    const double log_tail = thp * static_cast<double>(pnext) / std::log(double(pnext));
    out.value = prod;
    out.error_bound = 10.0 * std::abs(static_cast<double>(prod)) * log_tail;
    ctx.reported_error = out.error_bound;
    return out;
}

// Accelerated evaluation after Moree–Niklasch:
//   log 𝔖 = Σ_{p≤P0} log(1+θ_p/p) + Σ_{m=2}^{M} c_m (P(m) − Σ_{p≤P0} p^{−m}),
// where Σ_m c_m t^m = log(1 + t·θ̂(t)) and θ̂ is the series of the generic θ
// rule in t = 1/p.  Overrides beyond P0 are patched in exactly.  The m > M
// tail is bounded by geometric extrapolation of |c_m| against Σ_{p>P0} p^{−m}
// ≤ P0^{1−m}/(m−1).
inline ConstantValue singular_series_accelerated(const ThetaSpec& theta,
                                                 PrecisionContext& ctx) {
    ctx.validate();
    const std::uint64_t P0 = ctx.direct_prime_limit;
    const unsigned M = ctx.tail_series_order;
    ConstantValue out;
    out.method = ConstantValue::Method::accelerated;
    out.inputs = theta.description().empty() ? "theta" : theta.description();

    // A θ with no generic rule is supported on its overrides alone: every
    // other Euler factor is exactly 1 and the product is a finite rational.
    if (!theta.rule()) {
        Rat exact_prod = 1;
        for (auto& [p, v] : theta.overrides()) {
            exact_prod *= Rat(1) + v / Rat(p);
            ++out.factor_count;
        }
        out.value = to_real(exact_prod);
        out.exact = true;
        out.exact_value = exact_prod;
        out.error_bound = 0;
        ctx.reported_error = 0;
        return out;
    }

    // Direct block p ≤ P0 (exact rational factors, then log).
    Real direct = 0;
    std::vector<std::uint32_t> small_primes = primes_up_to(P0);
    for (std::uint32_t p : small_primes) {
        const Rat factor = Rat(1) + theta.theta_at(p) / Rat(p);
        ++out.factor_count;
        if (factor == 0) {
            out.value = 0;
            out.exact = true;
            out.exact_value = 0;
            out.error_bound = 0;
            ctx.reported_error = 0;
            return out;
        }
        if (factor < 0)
            throw expansion_error("singular_series_accelerated: negative factor at p=" +
                                  std::to_string(p) + " inside direct block");
        direct += log(to_real(factor));
    }

    // Validity beyond the cutoff: the log series needs |θ_p/p| < 1; the rules
    // here decay monotonically, so probing the first few primes past P0 plus
    // any overrides is an adequate guard.
    {
        const auto is_prime = [](std::uint64_t v) {
            const FactoredInteger pf = factorize(v);
            return pf.omega() == 1 && pf.factors[0].second == 1;
        };
        std::uint64_t probe = P0;
        for (int probes = 0; probes < 3; ++probes) {
            do { ++probe; } while (!is_prime(probe));
            const Rat q = theta.theta_at(probe) / Rat(probe);
            if (abs(q) >= 1)
                throw expansion_error(
                    "singular_series_accelerated: |theta_p/p| >= 1 at p=" +
                    std::to_string(probe) + "; raise direct_prime_limit");
        }
        for (auto& [p, v] : theta.overrides())
            if (p > P0 && abs(v / Rat(p)) >= 1)
                throw expansion_error(
                    "singular_series_accelerated: override |theta_p/p| >= 1 at p=" +
                    std::to_string(p) + "; raise direct_prime_limit");
    }

    // Tail expansion coefficients: c_m = [t^m] log(1 + t·θ̂(t)), m = 2..M.
    const RatSeries theta_series = theta.rule_series(M);
    if (theta_series.at(0) != 0)
        throw expansion_error("singular_series_accelerated: theta rule does not "
                              "vanish at infinity; acceleration inapplicable");
    RatSeries one_plus;
    one_plus.c.assign(M + 1, Rat(0));
    one_plus.c[0] = 1;
    for (std::size_t j = 1; j <= M; ++j) one_plus.c[j] = theta_series.at(j - 1);
    const RatSeries logs = series_log(one_plus, M);

    // Envelope |c_m| ≤ C·q^m via a root test over the trailing window of
    // coefficients (consecutive ratios are useless here — the c_m are power
    // sums over the roots of D + tN and oscillate through near zeros whenever
    // the dominant root pair is complex).
    double q_env = 0, c_env = 0, env_const = 1.0;
    {
        const unsigned m0 = M > 16 ? M - 16 : 2;
        for (unsigned m = m0; m <= M; ++m) {
            const double a = std::abs(static_cast<double>(to_real(logs.at(m))));
            if (a <= 0) continue;
            q_env = std::max(q_env, std::pow(a, 1.0 / double(m)));
            c_env = std::max(c_env, a);
        }
        if (c_env > 0) {
            q_env = std::max(1.0, 1.3 * q_env);  // a^{1/m} undershoots by ~m^{−1/m}
            if (q_env >= 0.5 * static_cast<double>(P0))
                throw expansion_error("singular_series_accelerated: expansion "
                                      "coefficients grow like q^m with q ~ P0; "
                                      "raise direct_prime_limit");
            for (unsigned m = m0; m <= M; ++m) {
                const double a = std::abs(static_cast<double>(to_real(logs.at(m))));
                if (a > 0) env_const = std::max(env_const, a / std::pow(q_env, double(m)));
            }
        }
    }
    // log-tail left if the series is cut before index m:
    //   Σ_{j≥m} |c_j| Σ_{p>P0} p^{−j} ≤ 4C (P0/(m−1)) (q/P0)^m / (1 − q/P0)
    const auto tail_from = [&](unsigned m) {
        if (c_env <= 0) return 0.0;
        const double P0d = static_cast<double>(P0);
        return 4.0 * env_const * P0d / double(m - 1) *
               std::pow(q_env / P0d, double(m)) / (1.0 - q_env / P0d);
    };

    // Σ_{m=2}^{M} c_m (P(m) − Σ_{p≤P0} p^{−m}).  P(m) gets enough guard
    // digits that |c_m|·err stays under the certification target, and the
    // loop cuts out early once the envelope for the remainder is negligible.
    const double target = 0.5 * std::pow(10.0, -(double(ctx.decimal_digits) + 4.0));
    Real series_part = 0;
    double pz_err = 0;
    double log_tail = tail_from(M + 1);
    for (unsigned m = 2; m <= M; ++m) {
        if (tail_from(m) < 0.01 * target) {
            log_tail = tail_from(m);
            break;
        }
        const Rat cm = logs.at(m);
        if (cm == 0) continue;
        const double cmd = std::abs(static_cast<double>(to_real(cm)));
        PrecisionContext sub = ctx;
        const double growth = cmd > 1.0 ? std::log10(cmd) : 0.0;
        const unsigned need =
            ctx.decimal_digits + 10 + static_cast<unsigned>(std::ceil(growth));
        if (need > max_request_digits)
            throw expansion_error("singular_series_accelerated: coefficient growth "
                                  "exceeds the precision budget; raise "
                                  "direct_prime_limit");
        sub.decimal_digits = need;
        Real tail = prime_zeta(Real(m), sub);
        for (std::uint32_t p : small_primes) tail -= pow(Real(p), -static_cast<int>(m));
        pz_err += cmd * sub.reported_error;
        series_part += to_real(cm) * tail;
    }

    // Override patching beyond P0: replace the rule's factor with the true one.
    Real patch = 0;
    for (auto& [p, v] : theta.overrides()) {
        if (p <= P0) continue;
        const Rat rule_factor = Rat(1) + theta.rule()->eval_at_prime(p) / Rat(p);
        const Rat true_factor = Rat(1) + v / Rat(p);
        if (true_factor == 0) {
            out.value = 0;
            out.exact = true;
            out.exact_value = 0;
            out.error_bound = 0;
            ctx.reported_error = 0;
            return out;
        }
        if (rule_factor <= 0 || true_factor < 0)
            throw expansion_error("singular_series_accelerated: non-positive factor "
                                  "beyond direct_prime_limit at p=" + std::to_string(p));
        patch += log(to_real(true_factor)) - log(to_real(rule_factor));
    }

    const Real log_sigma = direct + series_part + patch;
    const Real value = exp(log_sigma);

    const double vd = std::abs(static_cast<double>(value));
    const double rounding = vd * std::pow(10.0, -(double(real_digits) - 12.0));
    out.value = value;
    out.error_bound = vd * log_tail + vd * pz_err + rounding;
    ctx.reported_error = out.error_bound;
    if (out.error_bound > 0.5 * std::pow(10.0, -double(ctx.decimal_digits)) *
                              std::max(vd, 1.0) &&
        out.error_bound > rounding * 4)
        throw precision_error(
            "singular_series_accelerated: cannot certify " +
            std::to_string(ctx.decimal_digits) + " digits with tail_series_order " +
            std::to_string(M) + " (bound " + std::to_string(out.error_bound) + ")");
    return out;
}

// One summand of the 𝔖_k(Φ) assembly: coefficient × 𝔖_{e(λ)}.
struct SigmaPhiTerm {
    WeightedPartition lambda;
    Rat coefficient;      // (−1)^k k! Π_i (1/λ_i!) (B_i/(i!·i))^{λ_i}
    ExponentVector e;     // e_1 = λ_1 − k, e_i = λ_i for 2 ≤ i ≤ k
};

// Symbolic decomposition of Eq.-(7)-style constants:
//   𝔖_k(Φ) = Σ_λ coefficient(λ) · 𝔖_{e(λ)}.
// Terms whose coefficient vanishes (odd Bernoulli factors) are dropped.
inline std::vector<SigmaPhiTerm> sigma_k_phi_decomposition(unsigned k) {
    if (k == 0) throw std::invalid_argument("sigma_k_phi: k must be >= 1");
    const auto B = bernoulli_numbers(k);
    std::vector<SigmaPhiTerm> terms;
    for (const auto& lambda : weighted_partitions(k)) {
        Rat coeff = Rat(factorial(k));
        if (k % 2 == 1) coeff = -coeff;
        bool zero = false;
        for (unsigned i = 1; i <= k; ++i) {
            const unsigned li = lambda[i - 1];
            if (li == 0) continue;
            if (B[i] == 0) { zero = true; break; }
            coeff *= pow_rat(B[i] / Rat(factorial(i) * i), li) / Rat(factorial(li));
        }
        if (zero) continue;
        std::vector<long> e(k, 0);
        e[0] = static_cast<long>(lambda[0]) - static_cast<long>(k);
        for (unsigned i = 2; i <= k; ++i) e[i - 1] = lambda[i - 1];
        SigmaPhiTerm term;
        term.lambda = lambda;
        term.coefficient = coeff;
        term.e = ExponentVector(std::move(e));
        if (!term.e.balanced())
            throw std::logic_error("sigma_k_phi: index vector e(lambda) is not balanced");
        terms.push_back(std::move(term));
    }
    return terms;
}

// 𝔖_k(Φ) assembled from the decomposition, each 𝔖_{e(λ)} evaluated by the
// accelerated method (trivial e contributes exactly 1).  k = 1 collapses to
// the exact value 1/2.
inline ConstantValue sigma_k_phi(unsigned k, PrecisionContext& ctx) {
    ctx.validate();
    const auto terms = sigma_k_phi_decomposition(k);
    ConstantValue out;
    out.method = ConstantValue::Method::accelerated;
    out.inputs = "sigma_" + std::to_string(k) + "(Phi)";
    Real acc = 0;
    Rat exact_acc = 0;
    bool all_exact = true;
    double err = 0;
    for (const auto& term : terms) {
        if (term.e.trivial()) {
            acc += to_real(term.coefficient);
            exact_acc += term.coefficient;
            continue;
        }
        PrecisionContext sub = ctx;
        const ConstantValue s =
            singular_series_accelerated(theta_from_exponents(term.e), sub);
        acc += to_real(term.coefficient) * s.value;
        err += std::abs(static_cast<double>(to_real(term.coefficient))) * s.error_bound;
        all_exact = false;
    }
    out.value = acc;
    out.error_bound = err;
    if (all_exact) {
        out.exact = true;
        out.exact_value = exact_acc;
        out.error_bound = 0;
    }
    ctx.reported_error = out.error_bound;
    return out;
}

}  // namespace jtq
