#pragma once

#include "jtq/exponent.hpp"
#include "jtq/factored.hpp"

namespace jtq {

// Jordan totient J_k(n) = n^k prod_{p|n} (1 - p^{-k})
//                       = prod_{p^a || n} p^{k(a-1)} (p^k - 1).
// J_0 == 1 by the empty product; J_1 = Euler phi.
inline Int jordan_totient(unsigned k, const FactoredInteger& f) {
    if (k == 0) return 1;
    Int r = 1;
    for (auto& [p, a] : f.factors) {
        const Int pk = pow_int(Int(p), k);
        r *= pk - 1;
        if (a > 1) r *= pow_int(pk, a - 1);
    }
    return r;
}

inline Int jordan_totient(unsigned k, std::uint64_t n) {
    return jordan_totient(k, factorize(n));
}

// Jordan quotient J_e(n) = prod_i J_i(n)^{e_i}, exact.  Always nonzero for
// n >= 1 (each J_i(n) >= 1), so negative exponents are safe.
inline Rat jordan_quotient(const ExponentVector& e, const FactoredInteger& f) {
    Rat r = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        r *= pow_rat(Rat(jordan_totient(static_cast<unsigned>(i + 1), f)), e[i]);
    }
    return r;
}

inline Rat jordan_quotient(const ExponentVector& e, std::uint64_t n) {
    return jordan_quotient(e, factorize(n));
}

}  // namespace jtq
