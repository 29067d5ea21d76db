#pragma once

#include "jtq/numeric.hpp"

#include <vector>

namespace jtq {

// Dense truncated power series over Rat, coefficient of t^j at index j.
// All operations truncate to the order of the shorter/requested bound; used
// only for the low-order log-expansion of Euler factors, so dense O(M^2)
// multiplication is the right tool.
struct RatSeries {
    std::vector<Rat> c;  // c[j] multiplies t^j

    std::size_t order() const { return c.empty() ? 0 : c.size() - 1; }

    Rat at(std::size_t j) const { return j < c.size() ? c[j] : Rat(0); }

    static RatSeries one(std::size_t order) {
        RatSeries s;
        s.c.assign(order + 1, Rat(0));
        s.c[0] = 1;
        return s;
    }
};

inline RatSeries series_mul(const RatSeries& a, const RatSeries& b, std::size_t order) {
    RatSeries r;
    r.c.assign(order + 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size() && i <= order; ++i) {
        if (a.c[i] == 0) continue;
        const std::size_t jmax = std::min(b.c.size(), order - i + 1);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return r;
}

inline RatSeries series_pow(const RatSeries& a, unsigned e, std::size_t order) {
    RatSeries r = RatSeries::one(order);
    RatSeries base = a;
    while (e) {
        if (e & 1u) r = series_mul(r, base, order);
        e >>= 1;
        if (e) base = series_mul(base, base, order);
    }
    return r;
}

// 1/a for a with a(0) != 0, via the standard convolution recurrence.
inline RatSeries series_inverse(const RatSeries& a, std::size_t order) {
    if (a.c.empty() || a.c[0] == 0)
        throw std::domain_error("series_inverse: constant term is zero");
    RatSeries r;
    r.c.assign(order + 1, Rat(0));
    const Rat inv0 = Rat(1) / a.c[0];
    r.c[0] = inv0;
    for (std::size_t n = 1; n <= order; ++n) {
        Rat acc = 0;
        const std::size_t jmax = std::min(n, a.c.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j)
            if (a.c[j] != 0) acc += a.c[j] * r.c[n - j];
        r.c[n] = -inv0 * acc;
    }
    return r;
}

// log a for a with a(0) = 1:  n·l_n = n·a_n − Σ_{j=1}^{n−1} (n−j)·l_{n−j}·a_j.
inline RatSeries series_log(const RatSeries& a, std::size_t order) {
    if (a.c.empty() || a.c[0] != 1)
        throw std::domain_error("series_log: constant term must be 1");
    RatSeries l;
    l.c.assign(order + 1, Rat(0));
    for (std::size_t n = 1; n <= order; ++n) {
        Rat acc = Rat(n) * a.at(n);
        for (std::size_t j = 1; j < n; ++j) {
            if (a.at(j) == 0) continue;
            acc -= Rat(n - j) * l.c[n - j] * a.at(j);
        }
        l.c[n] = acc / Rat(n);
    }
    return l;
}

}  // namespace jtq
