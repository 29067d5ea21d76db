#pragma once

#include "jtq/constants.hpp"
#include "jtq/cyclotomic.hpp"
#include "jtq/lehmer.hpp"
#include "jtq/logfit.hpp"
#include "jtq/summatory.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace jtq {

enum class TheoremId { thm1, thm2, prop1, cor1, thm3, thm4, thm5 };

inline const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::thm1: return "thm1";
        case TheoremId::thm2: return "thm2";
        case TheoremId::prop1: return "prop1";
        case TheoremId::cor1: return "cor1";
        case TheoremId::thm3: return "thm3";
        case TheoremId::thm4: return "thm4";
        case TheoremId::thm5: return "thm5";
    }
    return "?";
}

inline TheoremId parse_theorem_id(const std::string& text, unsigned& k_out) {
    std::string base = text;
    const auto paren = text.find('(');
    if (paren != std::string::npos) {
        base = text.substr(0, paren);
        const auto close = text.find(')', paren);
        if (close == std::string::npos)
            throw std::invalid_argument("theorem id: missing ')' in '" + text + "'");
        k_out = static_cast<unsigned>(std::stoul(text.substr(paren + 1, close - paren - 1)));
    }
    if (base == "thm1") return TheoremId::thm1;
    if (base == "thm2") return TheoremId::thm2;
    if (base == "prop1") return TheoremId::prop1;
    if (base == "cor1") return TheoremId::cor1;
    if (base == "thm3") return TheoremId::thm3;
    if (base == "thm4") return TheoremId::thm4;
    if (base == "thm5") return TheoremId::thm5;
    throw std::invalid_argument("unknown theorem id '" + text + "'");
}

struct VerifyOptions {
    ExponentVector e{-2, 1};      // thm1/thm2/prop1
    unsigned k = 2;               // thm3/prop1/cor1
    double beta = 0.0;            // prop1 only
    std::uint64_t x_min = 1000;
    unsigned points_per_decade = 20;
    std::uint64_t seed = 12345;
    unsigned threads = 1;
    double subsample_fraction = 0.01;   // oracle spot-check density
    std::uint64_t subsample_cap = 2000; // largest n worth a polynomial oracle
    unsigned max_k = 6;                 // cap for thm3(k)
    // trend thresholds (documented defaults; the theorems leave their
    // O-constants unspecified, so these are engineering dials, not truths)
    double band_factor = 2.0;
    double fit_fraction = 0.10;
    double drift_factor = 10.0;
    double slope_tolerance = 0.01;
};

struct TrendVerdict {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct SummatoryReport {
    std::string theorem;
    std::vector<std::uint64_t> x_grid;
    std::vector<Real> sums;
    std::vector<Real> predicted_main;
    std::vector<double> raw_residuals;    // sums − main
    std::vector<double> fitted_values;    // canonical fit evaluated on the grid
    std::vector<double> residuals;        // sums − main − fitted
    std::vector<double> bound_ratios;     // |residuals| / theoretical bound
    std::vector<double> raw_bound_ratios; // |raw_residuals| / theoretical bound
    FitResult fit;                        // canonical: C_1..C_R (constant-only for prop1/cor1)
    FitResult fit_with_constant;          // C_0..C_R (Open Question: both reported)
    std::vector<TrendVerdict> verdicts;
    ConstantValue constant;               // the 𝔖 behind the main term
    std::string bound_expr;
    unsigned oracle_checked = 0;
    std::uint64_t seed = 0;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
};

namespace detail {

inline std::vector<std::uint64_t> geometric_grid(std::uint64_t x_min, std::uint64_t x_max,
                                                 unsigned ppd) {
    if (x_max < 400)
        throw std::invalid_argument(
            "verify: x_max must be >= 400 so the grid can span two decades");
    // the trend fits need two decades of leverage whatever the caller asked for
    x_min = std::min(x_min, x_max / 100);
    if (x_min < 2) x_min = 2;
    std::vector<std::uint64_t> grid;
    const double l0 = std::log10(double(x_min)), l1 = std::log10(double(x_max));
    const long steps = std::lround(std::ceil((l1 - l0) * ppd));
    for (long i = 0; i <= steps; ++i) {
        const double lx = l0 + (l1 - l0) * double(i) / double(steps);
        grid.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, lx))));
    }
    grid.push_back(x_max / 2);  // windowed-slope anchors
    grid.push_back(x_max);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    while (!grid.empty() && grid.front() < 2) grid.erase(grid.begin());
    return grid;
}

// Stream an exact per-n summand over [start_n, xmax], accumulating into Real
// with the fixed-block deterministic reduction, emitting at grid points.
inline std::vector<Real> accumulate_rational(
    std::uint64_t start_n, const std::vector<std::uint64_t>& grid,
    const std::function<Rat(std::uint64_t, const FactoredInteger&)>& summand) {
    const std::uint64_t xmax = grid.back();
    SpfTable spf(xmax);
    constexpr std::uint64_t block = 4096;
    std::vector<Real> out(grid.size());
    Real total = 0, block_acc = 0;
    std::uint64_t block_end = std::min(block, xmax);
    std::size_t gi = 0;
    FactoredInteger scratch;
    while (gi < grid.size() && grid[gi] < start_n) out[gi++] = 0;
    for (std::uint64_t n = 1; n <= xmax; ++n) {
        if (n >= start_n) {
            scratch.n = n;
            scratch.factors.clear();
            spf.for_each_prime_power(n, [&](std::uint32_t p, unsigned a) {
                scratch.factors.emplace_back(p, a);
            });
            block_acc += to_real(summand(n, scratch));
        }
        if (n == block_end) {
            total += block_acc;
            block_acc = 0;
            block_end = std::min(block_end + block, xmax);
        }
        while (gi < grid.size() && grid[gi] == n) out[gi++] = total + block_acc;
    }
    return out;
}

inline double loglog(double x) { return std::log(std::log(x)); }

}  // namespace detail

// Closed-form Lehmer ratio evaluator with all n-independent rational
// coefficients precomputed; built once per sweep, then ratio() costs a few
// dozen exact operations per n.
class LehmerEvaluator {
public:
    explicit LehmerEvaluator(unsigned k) : k_(k) {
        const auto B = bernoulli_numbers(k);
        coef_.assign(k + 1, {});
        for (unsigned i = 1; i <= k; ++i) {
            const auto c = stirling_first_signed(i);
            const Rat pref = Rat(1) / Rat(factorial(i - 1));
            coef_[i].assign(i + 1, Rat(0));
            for (unsigned h = 1; h <= i; ++h) {
                if (B[h] == 0 || c[h] == 0) continue;
                Rat t = B[h] / Rat(h) * Rat(c[h]) * pref;
                if (h % 2 == 0) t = -t;  // overall −(−1)^h
                coef_[i][h] = t;
            }
        }
        partitions_ = weighted_partitions(k);
        part_consts_.reserve(partitions_.size());
        for (const auto& lambda : partitions_) {
            Rat c = Rat(factorial(k));
            for (unsigned i = 1; i <= k; ++i)
                if (lambda[i - 1])
                    c /= Rat(factorial(lambda[i - 1]) * pow_int(Int(i), lambda[i - 1]));
            part_consts_.push_back(c);
        }
    }

    unsigned order() const { return k_; }

    // Φ_n^{(k)}(1)/Φ_n(1), n > 1.
    Rat ratio(const FactoredInteger& f) const {
        std::vector<Rat> J(k_ + 1);
        for (unsigned h = 1; h <= k_; ++h) J[h] = Rat(jordan_totient(h, f));
        std::vector<Rat> neg_s(k_ + 1);
        for (unsigned i = 1; i <= k_; ++i) {
            Rat s = 0;
            for (unsigned h = 1; h <= i; ++h)
                if (coef_[i][h] != 0) s += coef_[i][h] * J[h];
            neg_s[i] = -s;
        }
        Rat total = 0;
        for (std::size_t pi = 0; pi < partitions_.size(); ++pi) {
            Rat term = part_consts_[pi];
            for (unsigned i = 1; i <= k_; ++i) {
                const unsigned li = partitions_[pi][i - 1];
                if (li == 0) continue;
                term *= pow_rat(neg_s[i], li);
                if (term == 0) break;
            }
            total += term;
        }
        return total;
    }

private:
    unsigned k_;
    std::vector<std::vector<Rat>> coef_;  // coef_[i][h]: s_i = Σ_h coef·J_h
    std::vector<WeightedPartition> partitions_;
    std::vector<Rat> part_consts_;
};

inline SummatoryReport verify_theorem(TheoremId id, std::uint64_t x_max,
                                      PrecisionContext& ctx,
                                      VerifyOptions opts = {}) {
    ctx.validate();
    SummatoryReport rep;
    rep.seed = opts.seed;
    const auto grid = detail::geometric_grid(opts.x_min, x_max, opts.points_per_decade);
    rep.x_grid = grid;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    const long w = opts.e.weight();
    const long abs_e1 = std::labs(opts.e[0]);
    unsigned fit_degree = 1;
    bool fit_constant_only = false;
    std::function<double(double)> bound;
    Real main_coeff = 0;  // 𝔖-dependent coefficient of M_β(x)
    double beta_eff = 0.0;

    switch (id) {
        case TheoremId::thm1:
        case TheoremId::thm2: {
            if (!opts.e.balanced())
                throw std::domain_error("thm1/thm2 require a balanced exponent vector");
            rep.theorem = theorem_name(id);
            rep.constant = singular_series_accelerated(theta_from_exponents(opts.e), ctx);
            main_coeff = rep.constant.value;
            beta_eff = 0.0;
            fit_degree = static_cast<unsigned>(std::max<long>(abs_e1, 1));
            if (id == TheoremId::thm2) {
                rep.bound_expr = "(log x)^" + std::to_string(abs_e1);
                bound = [abs_e1](double x) { return std::pow(std::log(x), double(abs_e1)); };
            } else {
                rep.bound_expr = "(log x)^(2|e1|/3) (log log x)^(4|e1|/3)";
                bound = [abs_e1](double x) {
                    return std::pow(std::log(x), 2.0 * double(abs_e1) / 3.0) *
                           std::pow(detail::loglog(x), 4.0 * double(abs_e1) / 3.0);
                };
            }
            rep.sums = jordan_summatory(opts.e, 0.0, grid, opts.threads);
            break;
        }
        case TheoremId::prop1: {
            rep.theorem = theorem_name(id);
            rep.constant = singular_series_accelerated(theta_from_exponents(opts.e), ctx);
            main_coeff = rep.constant.value;
            beta_eff = opts.beta + double(w);
            fit_constant_only = true;
            fit_degree = 0;
            rep.bound_expr = "x^(beta+w) (log x)^|e1|";
            {
                const double bw = beta_eff;
                bound = [bw, abs_e1](double x) {
                    return std::pow(x, bw) * std::pow(std::log(x), double(abs_e1));
                };
            }
            rep.sums = jordan_summatory(opts.e, opts.beta, grid, opts.threads);
            break;
        }
        case TheoremId::cor1: {
            const unsigned k = opts.k;
            if (k < 1) throw std::domain_error("cor1 requires k >= 1");
            rep.theorem = "cor1(" + std::to_string(k) + ")";
            // Σ n^{k−1}/φ(n)^k: quotient J_1^{−k}, twisted by n^{k−1}
            opts.e = ExponentVector(std::vector<long>{-long(k)});
            rep.constant = singular_series_accelerated(theta_from_exponents(opts.e), ctx);
            main_coeff = rep.constant.value;
            beta_eff = -1.0;
            fit_constant_only = true;
            fit_degree = 0;
            rep.bound_expr = "(log x)^" + std::to_string(k) + " / x";
            bound = [k](double x) { return std::pow(std::log(x), double(k)) / x; };
            rep.sums = jordan_summatory(opts.e, double(k) - 1.0, grid, opts.threads);
            break;
        }
        case TheoremId::thm3: {
            const unsigned k = opts.k;
            if (k < 1) throw std::domain_error("thm3 requires k >= 1");
            if (k > opts.max_k)
                throw capacity_error("thm3: k exceeds configured cap " +
                                     std::to_string(opts.max_k));
            rep.theorem = "thm3(" + std::to_string(k) + ")";
            rep.constant = sigma_k_phi(k, ctx);
            main_coeff = rep.constant.value;
            beta_eff = 0.0;
            fit_degree = k;
            rep.bound_expr = "(log x)^(2k/3) (log log x)^(4k/3)";
            bound = [k](double x) {
                return std::pow(std::log(x), 2.0 * double(k) / 3.0) *
                       std::pow(detail::loglog(x), 4.0 * double(k) / 3.0);
            };
            LehmerEvaluator ev(k);
            rep.sums = detail::accumulate_rational(
                2, grid, [&ev, k](std::uint64_t, const FactoredInteger& f) {
                    const Rat phi_k = pow_rat(Rat(jordan_totient(1, f)), long(k));
                    return ev.ratio(f) / phi_k;
                });
            // oracle spot-check on a seeded subsample
            for (std::uint64_t n = 2; n <= std::min(x_max, opts.subsample_cap); ++n) {
                if (coin(rng) >= opts.subsample_fraction) continue;
                const FactoredInteger f = factorize(n);
                const Rat closed = ev.ratio(f) /
                                   pow_rat(Rat(jordan_totient(1, f)), long(k));
                const Rat oracle = normalized_derivative(static_cast<unsigned>(n), k, Int(1));
                if (closed != oracle)
                    throw std::logic_error("thm3 oracle mismatch at n=" + std::to_string(n));
                ++rep.oracle_checked;
            }
            break;
        }
        case TheoremId::thm4: {
            rep.theorem = theorem_name(id);
            rep.constant = singular_series_accelerated(
                theta_from_exponents(ExponentVector{-2, 1}), ctx);
            main_coeff = (Real(5) * rep.constant.value + 12) / 48;
            beta_eff = 0.0;
            fit_degree = 2;
            rep.bound_expr = "(log x)^(4/3) (log log x)^(8/3)";
            bound = [](double x) {
                return std::pow(std::log(x), 4.0 / 3.0) *
                       std::pow(detail::loglog(x), 8.0 / 3.0);
            };
            rep.sums = detail::accumulate_rational(
                3, grid, [](std::uint64_t, const FactoredInteger& f) {
                    const Rat r = second_derivative_ratio_minus1(f);
                    return r / Rat(pow_int(jordan_totient(1, f), 2));
                });
            for (std::uint64_t n = 3; n <= std::min(x_max, opts.subsample_cap); ++n) {
                if (coin(rng) >= opts.subsample_fraction) continue;
                const FactoredInteger f = factorize(n);
                const auto phi = cyclotomic_poly(static_cast<unsigned>(n));
                const Int at_m1 = derivative_at(*phi, 0, Int(-1));
                if (at_m1 == 0)
                    throw std::logic_error("thm4 oracle: Phi_n(-1)=0 for n>=3?");
                const Rat oracle = Rat(derivative_at(*phi, 2, Int(-1))) / Rat(at_m1);
                if (second_derivative_ratio_minus1(f) != oracle)
                    throw std::logic_error("thm4 oracle mismatch at n=" + std::to_string(n));
                ++rep.oracle_checked;
            }
            break;
        }
        case TheoremId::thm5: {
            rep.theorem = theorem_name(id);
            rep.constant = singular_series_accelerated(
                theta_from_exponents(ExponentVector{-4, 2}), ctx);
            main_coeff = -(rep.constant.value + 3) / 24;
            beta_eff = 0.0;
            fit_degree = 4;
            rep.bound_expr = "(log x)^(8/3) (log log x)^(16/3)";
            bound = [](double x) {
                return std::pow(std::log(x), 8.0 / 3.0) *
                       std::pow(detail::loglog(x), 16.0 / 3.0);
            };
            rep.sums = detail::accumulate_rational(
                2, grid, [](std::uint64_t, const FactoredInteger& f) {
                    const Rat s = schwarzian_at_1(f);
                    return s / Rat(pow_int(jordan_totient(1, f), 2));
                });
            for (std::uint64_t n = 2; n <= std::min(x_max, opts.subsample_cap); ++n) {
                if (coin(rng) >= opts.subsample_fraction) continue;
                const FactoredInteger f = factorize(n);
                const auto phi = cyclotomic_poly(static_cast<unsigned>(n));
                const Rat d1(derivative_at(*phi, 1, Int(1)));
                const Rat d2(derivative_at(*phi, 2, Int(1)));
                const Rat d3(derivative_at(*phi, 3, Int(1)));
                if (d1 == 0) throw std::logic_error("thm5 oracle: Phi_n'(1)=0?");
                const Rat oracle = d3 / d1 - Rat(3, 2) * (d2 / d1) * (d2 / d1);
                if (schwarzian_at_1(f) != oracle)
                    throw std::logic_error("thm5 oracle mismatch at n=" + std::to_string(n));
                ++rep.oracle_checked;
            }
            break;
        }
    }

    // main-term prediction and residuals
    const MainTerm M(beta_eff);
    rep.predicted_main.resize(grid.size());
    rep.raw_residuals.resize(grid.size());
    rep.raw_bound_ratios.resize(grid.size());
    std::vector<double> xs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rep.predicted_main[i] = main_coeff * M(Real(grid[i]));
        const Real diff = rep.sums[i] - rep.predicted_main[i];
        rep.raw_residuals[i] = static_cast<double>(diff);
        xs[i] = static_cast<double>(grid[i]);
        const double b = bound(xs[i]);
        rep.raw_bound_ratios[i] = b > 0 ? std::abs(rep.raw_residuals[i]) / b : 0.0;
    }

    // fits: canonical (per the theorem's secondary-sum shape) and the
    // include-constant variant
    if (fit_constant_only) {
        rep.fit = fit_log_powers(rep.raw_residuals, xs, 0, true);
        rep.fit_with_constant = rep.fit;
    } else {
        rep.fit = fit_log_powers(rep.raw_residuals, xs, fit_degree, false);
        rep.fit_with_constant = fit_log_powers(rep.raw_residuals, xs, fit_degree, true);
    }
    rep.fitted_values.resize(grid.size());
    rep.residuals.resize(grid.size());
    rep.bound_ratios.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rep.fitted_values[i] = rep.fit.evaluate(xs[i]);
        rep.residuals[i] = rep.raw_residuals[i] - rep.fitted_values[i];
        const double b = bound(xs[i]);
        rep.bound_ratios[i] = b > 0 ? std::abs(rep.residuals[i]) / b : 0.0;
    }

    // ---- trend verdicts ----
    const auto last_two_decades_begin = [&]() {
        std::size_t i0 = 0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (double(grid[i]) >= double(x_max) / 100.0) { i0 = i; break; }
        return i0;
    }();

    {
        // pre-fit vs post-fit RMS: the log-polynomial should absorb the
        // secondary terms
        double pre = 0;
        for (double r : rep.raw_residuals) pre += r * r;
        pre = std::sqrt(pre / double(grid.size()));
        TrendVerdict v;
        v.name = "fit_absorbs_secondary";
        v.value = pre > 0 ? rep.fit.rms / pre : 0.0;
        v.threshold = opts.fit_fraction;
        v.pass = v.value <= v.threshold;
        rep.verdicts.push_back(v);
    }

    if (id == TheoremId::thm2) {
        // thm2's O-term applies directly to sums − 𝔖x, so the raw ratio to
        // the bound should flatten into a band
        double lo = 0, hi = 0;
        bool first = true;
        for (std::size_t i = last_two_decades_begin; i < grid.size(); ++i) {
            const double r = rep.raw_bound_ratios[i];
            if (first) { lo = hi = r; first = false; }
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        TrendVerdict v;
        v.name = "bound_ratio_band";
        v.value = lo > 0 ? hi / lo : (hi == 0 ? 1.0 : std::numeric_limits<double>::infinity());
        v.threshold = opts.band_factor;
        v.pass = v.value <= v.threshold;
        rep.verdicts.push_back(v);
    }

    if (id == TheoremId::thm1 || id == TheoremId::thm3) {
        // these bounds apply only after the secondary log-polynomial is
        // removed; what is checkable is that the post-fit wiggle sits well
        // inside one unit of the theoretical envelope at the top of the range
        TrendVerdict v;
        v.name = "postfit_rms_within_bound";
        v.value = rep.fit.rms / bound(double(x_max));
        v.threshold = 1.0;
        v.pass = v.value <= v.threshold;
        rep.verdicts.push_back(v);
    }

    if (id == TheoremId::thm3) {
        // windowed slope (S(x) − S(x/2)) / (x/2) vs 𝔖_k(Φ)
        const auto it_half = std::find(grid.begin(), grid.end(), x_max / 2);
        const auto it_full = std::find(grid.begin(), grid.end(), x_max);
        if (it_half != grid.end() && it_full != grid.end()) {
            const Real s_half = rep.sums[it_half - grid.begin()];
            const Real s_full = rep.sums[it_full - grid.begin()];
            const Real slope = (s_full - s_half) / Real(x_max - x_max / 2);
            const double rel = std::abs(static_cast<double>(
                (slope - rep.constant.value) / rep.constant.value));
            TrendVerdict v;
            v.name = "windowed_slope_rel_err";
            v.value = rel;
            v.threshold = opts.slope_tolerance;
            v.pass = rel <= v.threshold;
            rep.verdicts.push_back(v);
        }
    }

    if (id == TheoremId::thm4 || id == TheoremId::thm5) {
        // the x-term should dominate everything else by the top of the range
        const double main_at_top = std::abs(static_cast<double>(rep.predicted_main.back()));
        TrendVerdict v;
        v.name = "main_term_dominates";
        v.value = main_at_top > 0 ? std::abs(rep.raw_residuals.back()) / main_at_top : 0.0;
        v.threshold = 0.05;
        v.pass = v.value <= v.threshold;
        rep.verdicts.push_back(v);
    }

    if (id == TheoremId::prop1 || id == TheoremId::cor1) {
        // stabilization: drift of (sums − main) across the last decade vs the
        // theorem's envelope at x_max
        double lo = 0, hi = 0;
        bool first = true;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (double(grid[i]) < double(x_max) / 10.0) continue;
            const double r = rep.raw_residuals[i];
            if (first) { lo = hi = r; first = false; }
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        TrendVerdict v;
        v.name = "last_decade_drift";
        v.value = hi - lo;
        v.threshold = opts.drift_factor * bound(double(x_max));
        v.pass = v.value <= v.threshold;
        rep.verdicts.push_back(v);
    }

    return rep;
}

}  // namespace jtq
