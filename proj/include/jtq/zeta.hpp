#pragma once

#include "jtq/combinatorics.hpp"
#include "jtq/factored.hpp"
#include "jtq/numeric.hpp"
#include "jtq/precision.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace jtq {

namespace detail {

// Euler–Maclaurin evaluation of ζ(s) for real s > 1:
//   ζ(s) = Σ_{n<N} n^{−s} + N^{1−s}/(s−1) + N^{−s}/2
//        + Σ_{j≥1} (B_{2j}/(2j)!) · s(s+1)⋯(s+2j−2) · N^{−s−2j+1}.
// With N ≈ 2·digits the correction terms decay like ((s+2j)/2πN)^{2j}, so the
// loop terminates long before the cap for every s we use (s ≥ 2, including the
// very large integer arguments coming from the prime-zeta Möbius sum, where
// N^{1−s} alone is already negligible).
inline Real zeta_em(const Real& s, unsigned digits, double& err_out) {
    const unsigned N = std::max(24u, 2 * digits + 8);
    const Real target = pow(Real(10), -static_cast<int>(digits + 10));
    Real acc = 0;
    for (unsigned n = 1; n < N; ++n) acc += pow(Real(n), -s);
    const Real Ns = pow(Real(N), -s);
    acc += Real(N) * Ns / (s - 1);  // N^{1−s}/(s−1)
    acc += Ns / 2;
    Real rising = s;                 // s(s+1)⋯(s+2j−2), starts at j=1
    Real npow = Real(N) * Ns / Real(N * N);  // N^{−s−1}
    Real last = 0;
    bool converged = false;
    constexpr unsigned Jcap = 160;
    for (unsigned j = 1; j <= Jcap; ++j) {
        const Rat b = bernoulli(2 * j);
        const Real term = to_real(b / Rat(factorial(2 * j))) * rising * npow;
        acc += term;
        last = fabs(term);
        if (last < target * fabs(acc)) { converged = true; break; }
        rising *= (s + Real(2 * j - 1)) * (s + Real(2 * j));
        npow /= Real(N) * Real(N);
    }
    if (!converged)
        throw precision_error("zeta_real: Euler-Maclaurin tail failed to reach "
                              + std::to_string(digits) + " digits");
    // Engineering bound: the first omitted correction is comparable to the
    // last added one; double it for slack.
    err_out = 2.0 * static_cast<double>(last);
    return acc;
}

}  // namespace detail

// ζ(s) for real s > 1 at ctx.decimal_digits precision.  Integer arguments are
// memoized per (s, digits) — the prime-zeta engine requests the same ζ(ks)
// values over and over.
inline Real zeta_real(const Real& s, PrecisionContext& ctx) {
    ctx.validate();
    if (s <= 1) throw std::domain_error("zeta_real: require s > 1");
    const bool integral = (s == floor(s)) && (s < Real(1u << 30));
    if (integral) {
        static std::map<std::pair<long, unsigned>, std::pair<Real, double>> cache;
        static std::mutex mtx;
        const long si = static_cast<long>(s);
        const auto key = std::make_pair(si, ctx.decimal_digits);
        {
            std::lock_guard<std::mutex> lock(mtx);
            auto it = cache.find(key);
            if (it != cache.end()) {
                ctx.reported_error = it->second.second;
                return it->second.first;
            }
        }
        double err = 0;
        const Real v = detail::zeta_em(s, ctx.decimal_digits, err);
        std::lock_guard<std::mutex> lock(mtx);
        cache.emplace(key, std::make_pair(v, err));
        ctx.reported_error = err;
        return v;
    }
    double err = 0;
    const Real v = detail::zeta_em(s, ctx.decimal_digits, err);
    ctx.reported_error = err;
    return v;
}

// Prime zeta P(s) = Σ_p p^{−s} through the Möbius inversion
//   P(s) = Σ_{k≥1} μ(k)/k · log ζ(ks),
// truncated at K = ⌈(digits+10)/(s·log10 2)⌉; the omitted terms satisfy
// |log ζ(ks)| ≤ 2·2^{−ks}, so the tail is geometrically dominated by
// 4·2^{−(K+1)s}.
inline Real prime_zeta(const Real& s, PrecisionContext& ctx) {
    ctx.validate();
    if (s <= 1) throw std::domain_error("prime_zeta: require s > 1");
    const double sd = static_cast<double>(s);
    const unsigned K = static_cast<unsigned>(
        std::ceil((ctx.decimal_digits + 10) / (sd * 0.30102999566398)));
    Real acc = 0;
    double zeta_err = 0;
    for (unsigned k = 1; k <= std::max(K, 1u); ++k) {
        const int mu = mobius(factorize(k));
        if (mu == 0) continue;
        PrecisionContext sub = ctx;
        const Real lz = log(zeta_real(s * Real(k), sub));
        zeta_err += sub.reported_error;  // crude accumulation, fine at this scale
        acc += Real(mu) / Real(k) * lz;
    }
    ctx.reported_error = 4.0 * std::pow(2.0, -(double(K) + 1.0) * sd) + zeta_err;
    return acc;
}

}  // namespace jtq
