#pragma once

#include "jtq/numeric.hpp"

#include <cmath>
#include <vector>

namespace jtq {

struct FitResult {
    std::vector<double> coeffs;    // C_0..C_R if constant included, else C_1..C_R
    double rms = 0.0;              // RMS of the post-fit residual
    bool includes_constant = false;
    unsigned degree = 0;

    double evaluate(double x) const {
        const double L = std::log(x);
        double acc = 0, lp = includes_constant ? 1.0 : L;
        for (double c : coeffs) {
            acc += c * lp;
            lp *= L;
        }
        return acc;
    }
};

// Least-squares fit residual(x) ≈ Σ_r C_r (log x)^r, r from 0 or 1 up to R.
// Solved by normal equations in long double with partial pivoting — the
// systems here are tiny (R ≤ 6) and log-spaced grids keep them tame; a pivot
// collapse (duplicate points, degenerate grid) raises precision_error.
inline FitResult fit_log_powers(const std::vector<double>& residuals,
                                const std::vector<double>& x_grid,
                                unsigned R, bool include_constant) {
    if (residuals.size() != x_grid.size())
        throw std::invalid_argument("fit_log_powers: length mismatch");
    const unsigned lo = include_constant ? 0u : 1u;
    if (R < lo && !(include_constant && R == 0))
        throw std::invalid_argument("fit_log_powers: R must be >= 1 without constant");
    const unsigned terms = R - lo + 1;
    if (x_grid.size() < R + 2)
        throw std::domain_error("fit_log_powers: need at least R+2 points");
    double xmin = x_grid.front(), xmax = x_grid.front();
    for (double x : x_grid) {
        if (x < 1) throw std::domain_error("fit_log_powers: grid points must be >= 1");
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    if (std::log10(xmax) - std::log10(xmin) < 2.0 - 1e-9)
        throw std::domain_error("fit_log_powers: grid must span at least two decades");

    // normal equations A^T A c = A^T y over basis (log x)^r
    std::vector<long double> ata(terms * terms, 0.0L), aty(terms, 0.0L);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const long double L = std::log(static_cast<long double>(x_grid[i]));
        std::vector<long double> row(terms);
        long double lp = 1.0L;
        for (unsigned r = 0; r < lo; ++r) lp *= L;
        for (unsigned t = 0; t < terms; ++t) {
            row[t] = lp;
            lp *= L;
        }
        for (unsigned a = 0; a < terms; ++a) {
            aty[a] += row[a] * static_cast<long double>(residuals[i]);
            for (unsigned b = 0; b < terms; ++b) ata[a * terms + b] += row[a] * row[b];
        }
    }

    // Gaussian elimination with partial pivoting.
    std::vector<long double> m(ata);
    std::vector<long double> rhs(aty);
    long double scale = 0.0L;
    for (auto v : m) scale = std::max(scale, std::abs(v));
    if (scale == 0.0L) scale = 1.0L;
    std::vector<unsigned> perm(terms);
    for (unsigned i = 0; i < terms; ++i) perm[i] = i;
    for (unsigned col = 0; col < terms; ++col) {
        unsigned piv = col;
        for (unsigned r = col + 1; r < terms; ++r)
            if (std::abs(m[r * terms + col]) > std::abs(m[piv * terms + col])) piv = r;
        if (std::abs(m[piv * terms + col]) < 1e-16L * scale)
            throw precision_error("fit_log_powers: normal equations numerically singular");
        if (piv != col) {
            for (unsigned c = 0; c < terms; ++c)
                std::swap(m[piv * terms + c], m[col * terms + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (unsigned r = col + 1; r < terms; ++r) {
            const long double f = m[r * terms + col] / m[col * terms + col];
            if (f == 0.0L) continue;
            for (unsigned c = col; c < terms; ++c) m[r * terms + c] -= f * m[col * terms + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<long double> sol(terms);
    for (unsigned i = terms; i-- > 0;) {
        long double acc = rhs[i];
        for (unsigned c = i + 1; c < terms; ++c) acc -= m[i * terms + c] * sol[c];
        sol[i] = acc / m[i * terms + i];
    }

    FitResult fit;
    fit.includes_constant = include_constant;
    fit.degree = R;
    fit.coeffs.assign(sol.begin(), sol.end());
    long double ss = 0.0L;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const long double d = static_cast<long double>(residuals[i]) -
                              static_cast<long double>(fit.evaluate(x_grid[i]));
        ss += d * d;
    }
    fit.rms = static_cast<double>(std::sqrt(ss / double(x_grid.size())));
    return fit;
}

}  // namespace jtq
