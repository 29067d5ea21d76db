#pragma once

#include "jtq/factored.hpp"
#include "jtq/numeric.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace jtq {

// Order cap for derivative_at; falling-factorial weights blow up factorially,
// so runaway k is almost always a caller bug.  Adjustable knob, not a law.
inline std::atomic<unsigned>& max_derivative_order() {
    static std::atomic<unsigned> v{10};
    return v;
}

struct CyclotomicPoly {
    unsigned n = 1;
    std::vector<Int> coefficients;  // ascending, a_n(0) .. a_n(φ(n))

    std::size_t degree() const { return coefficients.size() - 1; }
};

namespace detail {

// In-place multiply by (X^d − 1):  c ← shift(c, d) − c.
inline void poly_mul_xd_minus_1(std::vector<Int>& c, unsigned d) {
    std::vector<Int> r(c.size() + d, Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        r[i + d] += c[i];
        r[i] -= c[i];
    }
    c = std::move(r);
}

// Exact in-place division by (X^d − 1), high to low:  q_{i} = −(a_i − q_{i−d})
// rearranged from a = q·(X^d − 1).  The low d coefficients of the running
// remainder must vanish; a nonzero remainder means the Möbius product was
// assembled wrongly, which is a bug, not an input condition.
inline void poly_div_xd_minus_1(std::vector<Int>& c, unsigned d) {
    if (c.size() <= d)
        throw std::logic_error("cyclotomic: division by X^d-1 with degree < d");
    std::vector<Int> q(c.size() - d, Int(0));
    // process from the top: a_k contributes q_{k-d} = a_k + q_k
    for (std::size_t k = c.size(); k-- > d;) {
        Int val = c[k];
        if (k < q.size()) val += q[k];
        q[k - d] = std::move(val);
    }
    // remainder check: c_j + q_j must vanish for j < d (q_j = 0 out of range)
    for (std::size_t j = 0; j < d; ++j) {
        Int rem = c[j];
        if (j < q.size()) rem += q[j];
        if (rem != 0)
            throw std::logic_error("cyclotomic: nonzero remainder in exact division");
    }
    c = std::move(q);
}

}  // namespace detail

// Φ_n(X) by the Möbius product Φ_n(X) = Π_{d|n} (X^{n/d} − 1)^{μ(d)} applied
// to the radical, then Φ_n(X) = Φ_rad(n)(X^{n/rad(n)}).
inline CyclotomicPoly cyclotomic_poly_uncached(unsigned n) {
    if (n == 0) throw std::domain_error("cyclotomic_poly: n must be >= 1");
    CyclotomicPoly out;
    out.n = n;
    if (n == 1) {
        out.coefficients = {Int(-1), Int(1)};
        return out;
    }
    const FactoredInteger f = factorize(n);
    const unsigned m = static_cast<unsigned>(f.radical());
    // squarefree part: multiply all (X^{m/d} − 1) with μ(d) = +1, then divide
    // the μ(d) = −1 ones; subset-of-primes enumeration gives d and μ(d).
    const auto& ps = f.factors;
    const std::size_t r = ps.size();
    std::vector<Int> poly{Int(1)};
    for (unsigned pass = 0; pass < 2; ++pass) {
        const bool multiply = (pass == 0);
        for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
            unsigned d = 1;
            bool neg = false;
            for (std::size_t b = 0; b < r; ++b)
                if (mask & (std::size_t(1) << b)) {
                    d *= static_cast<unsigned>(ps[b].first);
                    neg = !neg;
                }
            if (neg == multiply) continue;  // pass 0: μ=+1 only; pass 1: μ=−1
            const unsigned exp = m / d;
            if (multiply) detail::poly_mul_xd_minus_1(poly, exp);
            else          detail::poly_div_xd_minus_1(poly, exp);
        }
    }
    // stretch for the non-squarefree part: X -> X^{n/m}
    const unsigned s = n / m;
    if (s == 1) {
        out.coefficients = std::move(poly);
    } else {
        out.coefficients.assign((poly.size() - 1) * s + 1, Int(0));
        for (std::size_t i = 0; i < poly.size(); ++i)
            out.coefficients[i * s] = std::move(poly[i]);
    }
    return out;
}

// Cached front end; only small indices are worth keeping (sweeps over large n
// construct throwaway polynomials and caching them would hoard memory).
inline std::shared_ptr<const CyclotomicPoly> cyclotomic_poly(unsigned n) {
    constexpr unsigned cache_limit = 1024;
    if (n > cache_limit)
        return std::make_shared<const CyclotomicPoly>(cyclotomic_poly_uncached(n));
    static std::map<unsigned, std::shared_ptr<const CyclotomicPoly>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const CyclotomicPoly>(cyclotomic_poly_uncached(n));
    cache.emplace(n, ptr);
    return ptr;
}

// f^{(k)}(z) = Σ_{j≥k} a_j · j·(j−1)⋯(j−k+1) · z^{j−k}, exact.
inline Int derivative_at(const CyclotomicPoly& f, unsigned k, const Int& z) {
    if (k > max_derivative_order().load())
        throw capacity_error("derivative_at: order " + std::to_string(k) +
                             " exceeds configured cap " +
                             std::to_string(max_derivative_order().load()));
    const auto& a = f.coefficients;
    if (k >= a.size()) return 0;
    // Horner in z on the derivative's coefficients, high to low.
    Int acc = 0;
    for (std::size_t j = a.size(); j-- > k;) {
        Int ff = 1;  // falling factorial j (j-1) ... (j-k+1)
        for (unsigned t = 0; t < k; ++t) ff *= Int(j - t);
        acc = acc * z + a[j] * ff;
    }
    return acc;
}

// Φ_n^{(k)}(z) / (φ(n)^k · Φ_n(z)): the normalized k-th derivative, with
// deg Φ_n = φ(n).  Undefined where Φ_n vanishes (z=1, n=1 and z=−1, n≤2).
inline Rat normalized_derivative(unsigned n, unsigned k, const Int& z) {
    if (n == 0) throw std::domain_error("normalized_derivative: n must be >= 1");
    if (k == 0) throw std::domain_error("normalized_derivative: k must be >= 1");
    const auto phi = cyclotomic_poly(n);
    const Int value = derivative_at(*phi, 0, z);
    if (value == 0)
        throw std::domain_error("normalized_derivative: Phi_n(z) = 0 at n=" +
                                std::to_string(n) + ", z=" + z.str());
    const Int dk = derivative_at(*phi, k, z);
    const Int deg = Int(phi->degree());
    return Rat(dk) / Rat(pow_int(deg, k) * value);
}

}  // namespace jtq
