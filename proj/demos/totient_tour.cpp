// A quick tour: exact quotient values, a couple of closed-form derivative
// identities, and two Euler-product constants side by side.
#include <jtq/jtq.hpp>

#include <iostream>

int main() {
    using namespace jtq;

    const ExponentVector e{-2, 1};  // Ψ/φ
    std::cout << "J_e(n) for e=" << e.to_string() << " (Dedekind Ψ / Euler φ):\n";
    for (std::uint64_t n = 1; n <= 12; ++n)
        std::cout << "  n=" << n << "  " << rat_to_string(jordan_quotient(e, n)) << "\n";

    std::cout << "\nLehmer ratios Φ_n^{(k)}(1)/Φ_n(1):\n";
    for (unsigned k = 1; k <= 3; ++k)
        std::cout << "  n=105, k=" << k << "  " << rat_to_string(lehmer_ratio(105, k))
                  << "\n";

    std::cout << "\nSchwarzian S(Φ_n)(1) = -phi^2/8 - Psi^2/24 + 1/2:\n";
    for (std::uint64_t n : {2, 5, 12, 105})
        std::cout << "  n=" << n << "  " << rat_to_string(schwarzian_at_1(factorize(n)))
                  << "\n";

    PrecisionContext ctx;
    ctx.decimal_digits = 40;
    const auto theta = theta_from_exponents(e);
    const auto s = singular_series_accelerated(theta, ctx);
    std::cout << "\nS_e for e=" << e.to_string() << ":\n  "
              << real_to_string(s.value, 40) << "  (err <= " << s.error_bound << ")\n";
    const auto s2 = sigma_k_phi(2, ctx);
    std::cout << "S_2(Phi) = 1/4 + S_e/12:\n  " << real_to_string(s2.value, 40) << "\n";
    return 0;
}
