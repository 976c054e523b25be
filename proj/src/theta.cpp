#include "manin/theta.hpp"

#include <cmath>
#include <set>

#include "manin/characters.hpp"
#include "manin/eta.hpp"
#include "manin/local_densities.hpp"

namespace manin {

unsigned ValuationPattern::supp() const {
    unsigned s = 0;
    for (int i = 0; i < 4; ++i)
        if (v[i] != 0) s |= 1u << i;
    return s;
}

namespace {

constexpr unsigned S1 = 1, S2 = 2, S3 = 4, S4 = 8;

Rational om(i64 p, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= Rational(p - 1, p);
    return r;
}

}  // namespace

Rational EulerProduct::normalized() const {
    Rational r = 1;
    for (const auto& [p, f] : exceptional) r *= f / generic(p);
    return r;
}

bool EulerProduct::is_zero() const {
    for (const auto& [p, f] : exceptional)
        if (f == 0) return true;
    return false;
}

double EulerProduct::evaluate(i64 prime_cut) const {
    double log_sum = 0;
    for (i64 p : primes_up_to(prime_cut)) {
        auto it = exceptional.find(p);
        double f = it != exceptional.end() ? it->second.get_d() : generic(p).get_d();
        if (f == 0) return 0;
        log_sum += std::log(f);
    }
    for (const auto& [p, f] : exceptional)
        if (p > prime_cut) log_sum += std::log(f.get_d());
    return std::exp(log_sum);
}

int theta0(i64 a1, i64 a2, i64 a3, i64 a4) {
    return gcd(a4, a1 * a3) == 1 && gcd(a3, a1) == 1 && gcd(a2, a1) == 1 ? 1 : 0;
}

Rational theta1_generic(i64 p, i64 a) {
    return Rational(p - 1, p) * (1 + Rational(1, p) - frac(eta_closed(p, 1, a), p * p));
}

Rational theta1_p(i64 p, i64 a, const ValuationPattern& vp) {
    unsigned s = vp.supp();
    if (s == 0 || s == S1) {
        int v1 = vp.v[0];
        if (v1 == 0) return theta1_generic(p, a);
        int gamma = valuation(p, a);
        Rational t = Rational(eta_closed(p, v1, a)) * rpow(p, std::min(v1, gamma) / 2) -
                     Rational(eta_closed(p, v1 + 1, a)) * rpow(p, std::min(v1 + 1, gamma) / 2 - 2);
        return Rational(p - 1, p) * t;
    }
    if (s == S3 || s == S4) return om(p, 2);
    if (s == S2 || s == (S2 | S3) || s == (S2 | S4)) return om(p, 3);
    return 0;
}

Rational theta2_generic(i64 p, i64 a) { return om(p, 2) * (1 + (2 + r_a(p, a)) / Rational(p)); }

Rational theta2_p(i64 p, i64 a, int v2, int v3, int v4) {
    unsigned s = (v2 ? S2 : 0) | (v3 ? S3 : 0) | (v4 ? S4 : 0);
    if (s == 0) return theta2_generic(p, a);
    if (s == S3 || s == S4) return om(p, 3);
    if (s == S2 || s == (S2 | S3) || s == (S2 | S4)) return om(p, 4);
    return 0;
}

namespace {

std::set<i64> prime_support(std::initializer_list<i64> values) {
    std::set<i64> ps;
    for (i64 v : values)
        for (auto [p, e] : factorize_cached(v).factors) ps.insert(p);
    return ps;
}

}  // namespace

EulerProduct theta1(i64 a, i64 a1, i64 a2, i64 a3, i64 a4) {
    EulerProduct e;
    e.generic = [a](i64 p) { return theta1_generic(p, a); };
    for (i64 p : prime_support({2 * a, a1, a2, a3, a4})) {
        ValuationPattern vp{{valuation(p, a1), valuation(p, a2), valuation(p, a3), valuation(p, a4)}};
        e.exceptional[p] = theta1_p(p, a, vp);
    }
    return e;
}

EulerProduct theta2(i64 a, i64 a2, i64 a3, i64 a4) {
    EulerProduct e;
    e.generic = [a](i64 p) { return theta2_generic(p, a); };
    for (i64 p : prime_support({2 * a, a2, a3, a4}))
        e.exceptional[p] = theta2_p(p, a, valuation(p, a2), valuation(p, a3), valuation(p, a4));
    return e;
}

FactorIdentity theta1_factor_identity(i64 p, i64 a, const ValuationPattern& vp) {
    FactorIdentity out;
    out.table = theta1_p(p, a, vp);
    const auto& v = vp.v;
    const int gamma = valuation(p, a);
    bool theta0_ok = !(v[3] > 0 && (v[0] > 0 || v[2] > 0)) && !(v[2] > 0 && v[0] > 0) && !(v[1] > 0 && v[0] > 0);
    Rational sum = 0;
    if (theta0_ok) {
        for (int e56 = 0; e56 <= 1; ++e56)
            for (int e58 = 0; e58 <= 1; ++e58)
                for (int e5 = 0; e5 <= 1; ++e5)
                    for (int e6 = 0; e6 <= 1; ++e6)
                        for (int e7 = 0; e7 <= 1; ++e7) {
                            if (e56 && (v[0] || v[1] || v[2] || v[3])) continue;
                            if (e58 && (v[1] || v[2] || v[3])) continue;
                            if (gamma % 2 == 1 && e58 + v[0] > gamma) continue;
                            if (e5 && !(v[1] || v[3])) continue;
                            if (e6 && !(v[0] || v[1] || v[2])) continue;
                            if (e7 && !(v[1] || v[2] || v[3])) continue;
                            int k = e58 + v[0];
                            int vg = std::min(k, gamma);
                            int vgp = (vg + 1) / 2;
                            int norm = e5 + e6 + e7 + e56 + e58 + std::max(e56, e58) - vg + vgp;
                            // rho mod p^(k - vg + vgp) with the gcd condition and rho^2 = a mod p^k
                            i64 rho_count = eta_count(ipow(p, k), a);
                            int sign = ((e56 + e58 + e5 + e6 + e7) % 2 == 0) ? 1 : -1;
                            sum += Rational(sign * rho_count) * rpow(p, -norm);
                        }
    }
    out.local_sum = sum;
    out.pass = out.table == out.local_sum;
    return out;
}

Theta1Average theta1_average(i64 a, i64 a2, i64 a3, i64 a4, i64 x, i64 prime_cut) {
    Theta1Average out;
    out.sum_normalized = 0;
    for (i64 a1 = 1; a1 <= x; ++a1) out.sum_normalized += theta1(a, a1, a2, a3, a4).normalized();
    out.prediction_normalized = theta2(a, a2, a3, a4).normalized() * Rational(x);

    // prod_p g1/g2 converges only conditionally; split off prod_{p not | 2a} (1 - chi(p)/p) = 1/L(1,chi).
    CharacterChi chi(a);
    double L = chi.L1(1e-12).value;
    double log_g1 = 0, log_g2_rest = 0;
    for (i64 p : primes_up_to(prime_cut)) {
        double g1 = theta1_generic(p, a).get_d();
        double g2 = theta2_generic(p, a).get_d();
        log_g1 += std::log(g1);
        double c = chi(p);
        log_g2_rest += std::log(g2) + std::log1p(-c / static_cast<double>(p));
    }
    double G1 = std::exp(log_g1);
    double G2 = L * std::exp(log_g2_rest);
    out.ratio_constant = G1 / G2;
    out.sum = G1 * out.sum_normalized.get_d();
    out.prediction = G2 * out.prediction_normalized.get_d();
    out.relative_error = out.prediction == 0 ? 0 : std::abs(out.sum - out.prediction) / out.prediction;
    return out;
}

}  // namespace manin
