#pragma once

#include "jtq/combinatorics.hpp"
#include "jtq/factored.hpp"
#include "jtq/jordan.hpp"

#include <vector>

namespace jtq {

// Lehmer's power sums (the Newton-identity inputs for Φ_n at 1):
//   s_i(n) = −(1/(i−1)!) Σ_{h=1}^{i} (−1)^h (B_h/h) c(i,h) J_h(n),
// with c(i,h) the signed Stirling numbers of the first kind.
inline Rat lehmer_power_sum(unsigned i, const FactoredInteger& f) {
    if (i == 0) throw std::domain_error("lehmer_power_sum: i must be >= 1");
    if (f.n <= 1) throw std::domain_error("lehmer_power_sum: n must be > 1");
    const auto B = bernoulli_numbers(i);
    const auto c = stirling_first_signed(i);
    Rat acc = 0;
    for (unsigned h = 1; h <= i; ++h) {
        if (B[h] == 0 || c[h] == 0) continue;
        Rat term = B[h] / Rat(h) * Rat(c[h]) * Rat(jordan_totient(h, f));
        if (h % 2 == 1) term = -term;
        acc += term;
    }
    return -acc / Rat(factorial(i - 1));
}

// Equivalent even-index form (Lehmer's original Theorem 2):
//   s_i(n) = ((−1)^i/2) φ(n) − (1/(i−1)!) Σ_{h=1}^{⌊i/2⌋} (B_{2h}/2h) c(i,2h) J_{2h}(n).
// Kept as an independently coded cross-check of the formula above.
inline Rat lehmer_power_sum_even_form(unsigned i, const FactoredInteger& f) {
    if (i == 0) throw std::domain_error("lehmer_power_sum: i must be >= 1");
    if (f.n <= 1) throw std::domain_error("lehmer_power_sum: n must be > 1");
    const auto B = bernoulli_numbers(i);
    const auto c = stirling_first_signed(i);
    Rat acc = Rat(jordan_totient(1, f)) / 2;
    if (i % 2 == 1) acc = -acc;
    Rat sum = 0;
    for (unsigned h = 1; 2 * h <= i; ++h) {
        if (c[2 * h] == 0) continue;
        sum += B[2 * h] / Rat(2 * h) * Rat(c[2 * h]) * Rat(jordan_totient(2 * h, f));
    }
    return acc - sum / Rat(factorial(i - 1));
}

// Lehmer's ratio formula:
//   Φ_n^{(k)}(1)/Φ_n(1) = k! Σ_{(∗)} Π_i (−s_i(n))^{λ_i} / (λ_i! · i^{λ_i}),
// summed over λ with Σ i·λ_i = k.  Exact for every n > 1.
inline Rat lehmer_ratio(const FactoredInteger& f, unsigned k) {
    if (f.n <= 1) throw std::domain_error("lehmer_ratio: n must be > 1");
    if (k == 0) return 1;
    std::vector<Rat> neg_s(k + 1);
    for (unsigned i = 1; i <= k; ++i) neg_s[i] = -lehmer_power_sum(i, f);
    Rat total = 0;
    for (const auto& lambda : weighted_partitions(k)) {
        Rat term = 1;
        for (unsigned i = 1; i <= k; ++i) {
            const unsigned li = lambda[i - 1];
            if (li == 0) continue;
            term *= pow_rat(neg_s[i], li);
            term /= Rat(factorial(li) * pow_int(Int(i), li));
            if (term == 0) break;
        }
        total += term;
    }
    return total * Rat(factorial(k));
}

inline Rat lehmer_ratio(std::uint64_t n, unsigned k) {
    return lehmer_ratio(factorize(n), k);
}

// Main term of the Lemma-8 approximation to the normalized ratio:
//   (1/φ^k)·Φ^{(k)}(1)/Φ(1) ≈ k! Σ_{(∗)} Π_i (−1)^{iλ_i}/λ_i! (B_i/(i!·i))^{λ_i} J_i^{λ_i} / φ^k,
// returned here *unnormalized* (without the 1/φ^k) so callers can bound the
// gap |lehmer_ratio − lemma8| ≤ K_k n^{k−1} directly.
inline Rat lehmer_main_term(const FactoredInteger& f, unsigned k) {
    if (f.n <= 1) throw std::domain_error("lehmer_main_term: n must be > 1");
    const auto B = bernoulli_numbers(k);
    Rat total = 0;
    for (const auto& lambda : weighted_partitions(k)) {
        Rat term = 1;
        for (unsigned i = 1; i <= k; ++i) {
            const unsigned li = lambda[i - 1];
            if (li == 0) continue;
            if (B[i] == 0) { term = 0; break; }
            Rat base = B[i] / Rat(factorial(i) * i) * Rat(jordan_totient(i, f));
            if (i % 2 == 1) base = -base;
            term *= pow_rat(base, li) / Rat(factorial(li));
        }
        total += term;
    }
    return total * Rat(factorial(k));
}

// Theorem-4 closed form: Φ_n''(−1)/Φ_n(−1) = (φ(n)/4)(φ(n) + a_n Ψ(n) − 2)
// with a_n = 1 for odd n, 1/9 when 2 ∥ n, 1/3 when 4 | n.  Needs n ≥ 3
// (Φ_n(−1) = 0 for n = 2, and n = 1 gives Φ_1(−1) = −2 but the formula is
// stated for n ≥ 3).
inline Rat second_derivative_ratio_minus1(const FactoredInteger& f) {
    if (f.n < 3)
        throw std::domain_error("second_derivative_ratio_minus1: n must be >= 3");
    const Rat phi(jordan_totient(1, f));
    const Rat psi(dedekind_psi(f));
    Rat a;
    if (f.n % 2 == 1)      a = 1;
    else if (f.n % 4 == 2) a = Rat(1, 9);
    else                   a = Rat(1, 3);
    return phi / 4 * (phi + a * psi - 2);
}

// Schwarzian of Φ_n at 1: S = f'''/f' − (3/2)(f''/f')², closed form
//   S(Φ_n(1)) = −φ(n)²/8 − Ψ(n)²/24 + 1/2   (n ≥ 2).
inline Rat schwarzian_at_1(const FactoredInteger& f) {
    if (f.n < 2) throw std::domain_error("schwarzian_at_1: n must be >= 2");
    const Rat phi(jordan_totient(1, f));
    const Rat psi(dedekind_psi(f));
    return -phi * phi / 8 - psi * psi / 24 + Rat(1, 2);
}

}  // namespace jtq
