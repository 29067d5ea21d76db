#pragma once

#include "jtq/exponent.hpp"
#include "jtq/factored.hpp"
#include "jtq/series.hpp"
#include "jtq/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jtq {

// Rational function in the variable t = 1/p with integer coefficients,
// num(t)/den(t), den(0) != 0.  This is the natural carrier for θ rules coming
// from exponent vectors: θ_p = Π_i (1 − p^{−i})^{e_i} − 1 is (A−B)/B with
// A = Π_{e_i>0}(1−t^i)^{e_i}, B = Π_{e_i<0}(1−t^i)^{−e_i}.
struct RationalFunction {
    std::vector<Int> num;  // ascending powers of t
    std::vector<Int> den;

    static std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> r(a.size() + b.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) r[i + j] += a[i] * b[j];
        }
        return r;
    }

    static Rat poly_eval(const std::vector<Int>& a, const Rat& t) {
        Rat r = 0;
        for (std::size_t i = a.size(); i-- > 0;) r = r * t + Rat(a[i]);
        return r;
    }

    Rat eval_at_prime(std::uint64_t p) const {
        const Rat t = Rat(1, p);
        const Rat d = poly_eval(den, t);
        if (d == 0) throw std::domain_error("RationalFunction: denominator zero at p");
        return poly_eval(num, t) / d;
    }

    // Power series of num/den around t = 0 up to the given order.
    RatSeries expand(std::size_t order) const {
        RatSeries n, d;
        n.c.assign(order + 1, Rat(0));
        d.c.assign(order + 1, Rat(0));
        for (std::size_t i = 0; i < num.size() && i <= order; ++i) n.c[i] = Rat(num[i]);
        for (std::size_t i = 0; i < den.size() && i <= order; ++i) d.c[i] = Rat(den[i]);
        return series_mul(n, series_inverse(d, order), order);
    }
};

// Parameters of the growth conditions a θ must satisfy for the mean-value
// machinery: |θ_n| ≤ A·n^σ on squarefree n, and θ_p = α/p + r_p with remainder
// controlled by κ and the exponent λ ∈ (0, 1/2).  Recorded metadata; nothing
// in the exact arithmetic depends on it.
struct GrowthCertificate {
    double alpha = 0.0;
    double lambda = 0.25;
    double sigma = 0.0;
    double kappa = 0.0;
    double A = 0.0;
};

// A multiplicative seed θ supported on squarefree integers: a generic rational
// rule in p plus finitely many per-prime overrides (e.g. θ_2 = −1 to restrict
// to odd n).  θ_d for squarefree d is the product of θ_p over p | d.
class ThetaSpec {
public:
    ThetaSpec() = default;  // identically-zero θ: φ_θ ≡ 1

    explicit ThetaSpec(RationalFunction rule, std::string description = "")
        : rule_(std::move(rule)), description_(std::move(description)) {}

    Rat theta_at(std::uint64_t p) const {
        auto it = overrides_.find(p);
        if (it != overrides_.end()) return it->second;
        if (!rule_) return Rat(0);
        return rule_->eval_at_prime(p);
    }

    void set_override(std::uint64_t p, Rat value) { overrides_[p] = std::move(value); }

    const std::map<std::uint64_t, Rat>& overrides() const { return overrides_; }
    const std::optional<RationalFunction>& rule() const { return rule_; }

    std::optional<GrowthCertificate> certificate;

    const std::string& description() const { return description_; }

    // Series of the generic θ rule in t = 1/p; valuation ≥ 1 for rules built
    // from exponent vectors (θ_p → 0).
    RatSeries rule_series(std::size_t order) const {
        if (!rule_) {
            RatSeries z;
            z.c.assign(order + 1, Rat(0));
            return z;
        }
        return rule_->expand(order);
    }

private:
    std::optional<RationalFunction> rule_;
    std::map<std::uint64_t, Rat> overrides_;
    std::string description_;
};

// θ_p = Π_i (1 − p^{−i})^{e_i} − 1, exactly, as a rational function of p.
// Certificate per §2 of the underlying analysis: α = −e_1, σ = 0 (balanced
// rules are bounded), κ = |e_1|; λ defaults to 1/4 (see decisions ledger).
inline ThetaSpec theta_from_exponents(const ExponentVector& e) {
    RationalFunction f;
    std::vector<Int> A{Int(1)}, B{Int(1)};
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        // (1 - t^{i+1}) as a coefficient vector
        std::vector<Int> base(i + 2, Int(0));
        base[0] = 1;
        base[i + 1] = -1;
        const unsigned reps = static_cast<unsigned>(e[i] > 0 ? e[i] : -e[i]);
        for (unsigned r = 0; r < reps; ++r) {
            if (e[i] > 0) A = RationalFunction::poly_mul(A, base);
            else          B = RationalFunction::poly_mul(B, base);
        }
    }
    // θ = A/B − 1 = (A − B)/B
    std::vector<Int> numer(std::max(A.size(), B.size()), Int(0));
    for (std::size_t i = 0; i < A.size(); ++i) numer[i] += A[i];
    for (std::size_t i = 0; i < B.size(); ++i) numer[i] -= B[i];
    while (numer.size() > 1 && numer.back() == 0) numer.pop_back();
    f.num = std::move(numer);
    f.den = std::move(B);

    ThetaSpec spec(std::move(f), "e=" + e.to_string());
    GrowthCertificate cert;
    cert.alpha = -static_cast<double>(e[0]);
    cert.lambda = 0.25;
    cert.sigma = 0.0;
    cert.kappa = std::abs(static_cast<double>(e[0]));
    // Empirical sup of |θ_p| over small primes; θ_p is monotone-decaying in p
    // for these rules, so the sup sits at p=2 (or nearby).
    double sup = 0.0;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        const Rat v = spec.theta_at(p);
        const double av = std::abs(static_cast<double>(to_real(v)));
        if (av > sup) sup = av;
    }
    cert.A = sup;
    spec.certificate = cert;
    return spec;
}

// φ_θ(n) = Π_{p|n} (1 + θ_p); exact, empty product for n = 1.
inline Rat phi_theta(const ThetaSpec& theta, const FactoredInteger& f) {
    Rat r = 1;
    for (auto& [p, a] : f.factors) {
        r *= Rat(1) + theta.theta_at(p);
        if (r == 0) return r;
    }
    return r;
}

inline Rat phi_theta(const ThetaSpec& theta, std::uint64_t n) {
    return phi_theta(theta, factorize(n));
}

// Bulk evaluation for n = 1..x.  Walks each n's distinct primes through the
// spf table, reusing a per-prime cache of (1 + θ_p); costs O(x log log x)
// rational multiplications.
inline std::vector<Rat> sieve_phi_theta(const ThetaSpec& theta, std::uint64_t x) {
    if (x == 0) throw std::invalid_argument("sieve_phi_theta: x must be >= 1");
    std::vector<Rat> out(x, Rat(1));  // out[n-1] = φ_θ(n)
    if (x < 2) return out;
    SpfTable spf(x);
    // 1 + θ_p per prime, looked up by binary search on the prime list.
    const auto& primes = spf.primes();
    std::vector<Rat> fac;
    fac.reserve(primes.size());
    for (std::uint32_t p : primes) fac.push_back(Rat(1) + theta.theta_at(p));
    for (std::uint64_t n = 2; n <= x; ++n) {
        Rat v = 1;
        std::uint64_t m = n;
        while (m > 1) {
            const std::uint32_t p = spf[m];
            const auto it = std::lower_bound(primes.begin(), primes.end(), p);
            v *= fac[static_cast<std::size_t>(it - primes.begin())];
            while (m % p == 0) m /= p;
            if (v == 0) break;
        }
        out[n - 1] = std::move(v);
    }
    return out;
}

}  // namespace jtq
