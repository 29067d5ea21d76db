#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <sstream>

namespace jtq {

// Exact integer / rational arithmetic.  Everything number-theoretic in this
// library (totients, cyclotomic coefficients, Bernoulli numbers, ...) is exact;
// floating point only enters for the analytic constants and asymptotic checks.
using Int  = boost::multiprecision::cpp_int;
using Rat  = boost::multiprecision::cpp_rational;

// Fixed 150-decimal-digit binary float.  Compile-time precision keeps the type
// stateless (no global precision dial), so concurrent evaluation is safe. The
// working precision requested through PrecisionContext must stay comfortably
// below this so that tail bounds, not representation error, dominate.
inline constexpr unsigned real_digits = 150;
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<real_digits>>;

// Largest precision a caller may request; leaves ~40 guard digits in Real.
inline constexpr unsigned max_request_digits = 110;

// Thrown when a request exceeds a configured resource ceiling (sieve memory,
// derivative-order cap, ...).  CLI maps this to exit code 5.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a precision target is unachievable or a certified error bound
// cannot be met.  CLI maps this to exit code 3.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Real to_real(const Int& v) { return Real(v); }

inline Real to_real(const Rat& v) {
    return Real(boost::multiprecision::numerator(v)) /
           Real(boost::multiprecision::denominator(v));
}

// Decimal rendering with round-trip-safe digit count capped at what Real holds.
inline std::string real_to_string(const Real& v, unsigned digits = 50) {
    if (digits > real_digits) digits = real_digits;
    std::ostringstream os;
    os.precision(static_cast<int>(digits));
    os << v;
    return os.str();
}

inline std::string rat_to_string(const Rat& v) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(v);
    if (boost::multiprecision::denominator(v) != 1)
        os << "/" << boost::multiprecision::denominator(v);
    return os.str();
}

inline Int pow_int(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, long exp) {
    if (exp == 0) return Rat(1);
    Rat b = base;
    bool inv = exp < 0;
    unsigned long e = inv ? static_cast<unsigned long>(-exp)
                          : static_cast<unsigned long>(exp);
    Rat r = 1;
    while (e) {
        if (e & 1ul) r *= b;
        b *= b;
        e >>= 1;
    }
    if (inv) {
        if (r == 0) throw std::domain_error("pow_rat: zero base with negative exponent");
        r = Rat(1) / r;
    }
    return r;
}

// Factorials beyond what fits a machine word are routine here (partition
// weights, Taylor denominators), so return Int.
inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace jtq
