#include "manin/constant.hpp"

#include <cmath>
#include <stdexcept>

#include "manin/eta.hpp"

namespace manin {

double NumberFieldInvariants::rho() const {
    return std::pow(2.0, r1) * std::pow(2 * M_PI, r2) * R * static_cast<double>(h) /
           (mu_order * std::sqrt(std::abs(static_cast<double>(disc))));
}

double NumberFieldInvariants::field_factor() const {
    return std::pow(rho(), 5) / std::abs(static_cast<double>(disc));
}

namespace {

bool divides_2a(i64 p, i64 a) { return p == 2 || a % p == 0; }

// sum over primes p <= P with p not dividing 2a of log(omega_p (1 - chi(p)/p)); blocks are
// summed in parallel and combined in index order, so the result does not depend on threads
long double accelerated_log_sum(i64 a, const CharacterChi& chi, const std::vector<i64>& primes, i64 P) {
    std::size_t n = 0;
    while (n < primes.size() && primes[n] <= P) ++n;
    const std::size_t block = 4096;
    const std::size_t nb = (n + block - 1) / block;
    std::vector<long double> partial(nb, 0.0L);
#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < nb; ++b) {
        long double s = 0;
        for (std::size_t i = b * block; i < std::min(n, (b + 1) * block); ++i) {
            i64 p = primes[i];
            if (divides_2a(p, a)) continue;
            long double q = 1.0L / p, x = chi(p);
            s += 5 * std::log1p(-q) + std::log1p((5 + x) * q + q * q) + std::log1p(-x * q);
        }
        partial[b] = s;
    }
    long double total = 0;
    for (long double s : partial) total += s;
    return total;
}

long double log_omega(i64 p, i64 a, const CharacterChi& chi) {
    if (divides_2a(p, a)) return std::log(static_cast<long double>(omega_p(p, a).get_d()));
    long double q = 1.0L / p, x = chi(p);
    return 5 * std::log1p(-q) + std::log1p((5 + x) * q + q * q);
}

}  // namespace

EulerEstimate finite_product(i64 a, i64 prime_cut, double l1_tolerance) {
    require_nonsquare(a);
    if (prime_cut < 100) throw std::domain_error("finite_product: prime_cut must be at least 100");
    CharacterChi chi(a);
    EulerEstimate L = chi.L1(l1_tolerance);
    long double bad = 0;
    for (const auto& [p, e] : factorize(2 * a).factors) bad += std::log(static_cast<long double>(omega_p(p, a).get_d()));
    auto primes = primes_up_to(2 * prime_cut);
    long double base = bad + std::log(static_cast<long double>(L.value));
    double F1 = static_cast<double>(std::exp(base + accelerated_log_sum(a, chi, primes, prime_cut)));
    double F2 = static_cast<double>(std::exp(base + accelerated_log_sum(a, chi, primes, 2 * prime_cut)));
    EulerEstimate est;
    est.value = F1;
    est.cut = prime_cut;
    // the remainder after P decays like 1/(P log P), so the tail is about twice F(2P) - F(P)
    est.bound = 2 * std::abs(F2 - F1) + F1 * L.bound / L.value;
    return est;
}

double naive_partial_product(i64 a, i64 P) {
    require_nonsquare(a);
    CharacterChi chi(a);
    long double s = 0;
    for (i64 p : primes_up_to(P)) s += log_omega(p, a, chi);
    return static_cast<double>(std::exp(s));
}

double naive_product_cesaro(i64 a, i64 P) {
    require_nonsquare(a);
    CharacterChi chi(a);
    long double s = 0, mean = 0;
    i64 count = 0;
    for (i64 p : primes_up_to(P)) {
        s += log_omega(p, a, chi);
        if (2 * p > P) {
            mean += std::exp(s);
            ++count;
        }
    }
    return static_cast<double>(mean / count);
}

ConstantBreakdown predict_constant(i64 a, const ConstantOptions& opt) {
    require_nonsquare(a);
    ConstantBreakdown out;
    out.a = a;
    out.alpha = Rational(1, 1728);
    out.field = NumberFieldInvariants::rationals();
    out.field_factor = out.field.field_factor();
    out.omega_inf = omega_inf_region(a, opt.tolerance);
    out.omega_inf_chart = omega_inf_chart(a, opt.tolerance);
    out.omega_inf_mc = omega_inf_montecarlo(a, opt.mc_samples, opt.seed);
    for (const auto& [p, e] : factorize(2 * a).factors) out.bad_primes.push_back(omega_p_closed(p, a));
    out.L1_chi = CharacterChi(a).L1(opt.tolerance);
    out.finite_product = finite_product(a, opt.prime_cut, opt.tolerance);
    out.c = out.alpha.get_d() * out.field_factor * out.omega_inf.value * out.finite_product.value;
    out.c_bound = out.c * (out.omega_inf.error_estimate / out.omega_inf.value +
                           out.finite_product.bound / out.finite_product.value);
    return out;
}

std::vector<CompareRow> compare(i64 a, const std::vector<i64>& B_list, const ConstantBreakdown& c) {
    std::vector<CompareRow> rows;
    for (i64 B : B_list) {
        if (B < 2) throw std::domain_error("compare: B must be at least 2");
        CompareRow r;
        r.B = B;
        r.count_direct = direct_count(a, Rational(B)).count;
        r.count_torsor = torsor_count(a, Rational(B)).count;
        double L = std::log(static_cast<double>(B));
        r.prediction = c.c * static_cast<double>(B) * L * L * L * L;
        r.ratio = static_cast<double>(r.count_direct) / r.prediction;
        rows.push_back(r);
    }
    return rows;
}

std::vector<CompareRow> compare(i64 a, const std::vector<i64>& B_list, const ConstantOptions& opt) {
    return compare(a, B_list, predict_constant(a, opt));
}

}  // namespace manin
