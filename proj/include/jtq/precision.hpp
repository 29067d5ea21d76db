#pragma once

#include "jtq/numeric.hpp"

#include <cstdint>

namespace jtq {

// Working-precision knobs for the analytic layer (ζ, P, Euler products).
// decimal_digits is the target accuracy; direct_prime_limit (P0) is the cutoff
// between directly multiplied Euler factors and the series-accelerated tail;
// tail_series_order (M) is the truncation order of that tail expansion.
// reported_error is an output slot: each operation writes the error bound it
// actually certifies (or estimates — see individual operations).
struct PrecisionContext {
    unsigned decimal_digits = 50;
    std::uint64_t direct_prime_limit = 100;
    unsigned tail_series_order = 60;
    double reported_error = 0.0;

    void validate() const {
        if (decimal_digits == 0)
            throw precision_error("PrecisionContext: decimal_digits must be >= 1");
        if (decimal_digits > max_request_digits)
            throw precision_error(
                "PrecisionContext: decimal_digits " + std::to_string(decimal_digits) +
                " exceeds supported maximum " + std::to_string(max_request_digits));
        if (direct_prime_limit < 2)
            throw precision_error("PrecisionContext: direct_prime_limit must be >= 2");
        if (tail_series_order < 2)
            throw precision_error("PrecisionContext: tail_series_order must be >= 2");
    }
};

}  // namespace jtq
