#include "manin/local_densities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "manin/eta.hpp"

namespace manin {

namespace {

Rational qpow(const Rational& q, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
}

Rational one_minus_inv(i64 p) { return Rational(p - 1, p); }

}  // namespace

Rational s_a(i64 p, i64 a) {
    require_nonsquare(a);
    if (p != 2) throw std::domain_error("s_a: only defined at p = 2");
    int v = valuation(p, a);
    if (v % 2 != 0) throw std::domain_error("s_a: v_2(a) must be even");
    Rational s = one_minus_inv(2) * (Rational(eta_closed(2, v + 1, a)) + frac(eta_closed(2, v + 2, a), 2));
    s += frac(eta_closed(2, v + 3, a), 4);
    return s;
}

Rational r_a(i64 p, i64 a) {
    require_nonsquare(a);
    int v = valuation(p, a);
    if (p != 2 && v == 0) return Rational(kronecker(a, p));
    if (v % 2 == 1) return 1 - rpow(p, -(v / 2)) * (1 + Rational(1, p));
    if (p != 2) return 1 - rpow(p, -(v / 2)) * (1 - kronecker(a / ipow(p, v), p));
    return 1 - rpow(p, -(v / 2)) * (2 - s_a(p, a));
}

Rational omega_p(i64 p, i64 a) {
    Rational q(1, p);
    return qpow(one_minus_inv(p), 5) * (1 + (5 + r_a(p, a)) * q + q * q);
}

LocalDensity omega_p_closed(i64 p, i64 a) {
    LocalDensity d;
    d.p = p;
    d.value = omega_p(p, a);
    d.provenance = Provenance::closed_form;
    return d;
}

Rational omega_p_table(i64 p, i64 a) {
    if (a == 1 || moebius(a < 0 ? -a : a) == 0)
        throw std::domain_error("omega_p_table: a must be squarefree and != 1");
    Rational q(1, p);
    Rational f;
    if (a % p == 0)
        f = 1 + 5 * q;
    else if (p != 2)
        f = kronecker(a, p) == 1 ? 1 + 6 * q + q * q : 1 + 4 * q + q * q;
    else if (mod(a, 8) == 1)
        f = Rational(17, 4);
    else if (mod(a, 8) == 5)
        f = Rational(15, 4);
    else
        f = Rational(7, 2);
    return qpow(one_minus_inv(p), 5) * f;
}

namespace {

// R[k] = #{z unit mod p^k : z^2 = a0 mod p^k}, by lifting solutions level by level.
// Once p^k no longer fits the word size the count is continued constantly, which is
// Hensel's lemma for k >= 1 (p odd) or k >= 3 (p = 2).
std::vector<i64> unit_root_counts(i64 p, i64 a0, int kmax) {
    std::vector<i64> R(static_cast<std::size_t>(kmax) + 1, 0);
    R[0] = 1;
    std::vector<i64> level;
    for (i64 z = 1; z < p; ++z)
        if (mod(z * z - a0, p) == 0) level.push_back(z);
    if (kmax >= 1) R[1] = static_cast<i64>(level.size());
    i64 pk = p;
    int k = 1;
    while (k < kmax && pk <= (static_cast<i64>(1) << 61) / p) {
        i64 next_pk = pk * p;
        std::vector<i64> next;
        for (i64 z : level)
            for (i64 t = 0; t < p; ++t) {
                i64 y = z + t * pk;
                if (mod128(static_cast<i128>(y) * y - a0, next_pk) == 0) next.push_back(y);
            }
        level.swap(next);
        pk = next_pk;
        ++k;
        R[k] = static_cast<i64>(level.size());
    }
    if (k < kmax && p == 2 && k < 3) throw std::logic_error("unit_root_counts: depth too small");
    for (int j = k + 1; j <= kmax; ++j) R[j] = R[k];
    return R;
}

struct CellSummer {
    i64 p;
    int gamma;
    std::vector<i64> R;   // unit root counts of a0
    int pow_offset;
    std::vector<Rational> pw;  // pw[e + pow_offset] = p^e

    const Rational& P(int e) const { return pw[static_cast<std::size_t>(e + pow_offset)]; }

    // P(kappa >= k) for the tie cells.
    Rational tail_prob(int k) const {
        if (k <= 0) return 1;
        return Rational(R[k]) / (P(k) * one_minus_inv(p));
    }

    bool is_tie(int alpha, int beta) const { return gamma % 2 == 0 && 2 * alpha == 2 * beta + gamma; }

    // Exponent t with cell contribution (1-1/p)^2 p^t, for non-tie cells.
    int nontie_exponent(int alpha, int beta) const {
        int e = std::min(2 * alpha, 2 * beta + gamma);
        int mx = std::max({-e, -alpha, beta, -beta, 0});
        return -alpha - mx;
    }

    // Contribution of a tie cell, without the (1-1/p)^2 factor.
    Rational tie_value(int alpha, int beta) const {
        int c0 = std::max({-alpha, beta, -beta, 0});
        int kstar = std::max(0, -2 * alpha - c0);
        Rational e = 0;
        for (int k = 0; k < kstar; ++k) e += (tail_prob(k) - tail_prob(k + 1)) * P(2 * alpha + k);
        e += tail_prob(kstar) * P(-c0);
        return P(-alpha) * e;
    }
};

// Smallest dyadic r >= p^(-1/3), certified by r^3 p >= 1.
Rational envelope_ratio(i64 p) {
    const i64 den = static_cast<i64>(1) << 30;
    i64 num = static_cast<i64>(std::ceil(std::pow(static_cast<double>(p), -1.0 / 3.0) * static_cast<double>(den)));
    Rational r = frac(num, den);
    while (r * r * r * p < 1) {
        ++num;
        r = frac(num, den);
    }
    return r;
}

}  // namespace

BruteforceDetail omega_p_bruteforce_detail(i64 p, i64 a, int vmax) {
    require_nonsquare(a);
    if (!is_prime(static_cast<u64>(p))) throw std::domain_error("omega_p_bruteforce: p must be prime");
    const int gamma = valuation(p, a);
    const int vmin = valuation(p, 4 * a) + 4;
    if (vmax < vmin)
        throw std::domain_error("omega_p_bruteforce: vmax must be at least " + std::to_string(vmin));

    const Rational r = envelope_ratio(p);
    const double log_inv_r = -std::log(r.get_d());
    const int outer = vmax + static_cast<int>(std::ceil(27.7 / log_inv_r)) + 4;

    CellSummer cs;
    cs.p = p;
    cs.gamma = gamma;
    cs.R = unit_root_counts(p, a / ipow(p, gamma), 3 * outer + 8);
    cs.pow_offset = 4 * outer + 16;
    cs.pw.resize(static_cast<std::size_t>(2 * cs.pow_offset + 1));
    for (int e = -cs.pow_offset; e <= cs.pow_offset; ++e) cs.pw[e + cs.pow_offset] = rpow(p, e);

    const Rational w2 = one_minus_inv(p) * one_minus_inv(p);

    auto sum_region = [&](int lo_radius, int hi_radius) {
        // cells with lo_radius < max(|alpha|,|beta|) <= hi_radius
        std::map<int, i64> hist;
        Rational ties = 0;
        for (int alpha = -hi_radius; alpha <= hi_radius; ++alpha)
            for (int beta = -hi_radius; beta <= hi_radius; ++beta) {
                if (std::max(std::abs(alpha), std::abs(beta)) <= lo_radius) continue;
                if (cs.is_tie(alpha, beta))
                    ties += cs.tie_value(alpha, beta);
                else
                    ++hist[cs.nontie_exponent(alpha, beta)];
            }
        Rational s = ties;
        for (auto [t, n] : hist) s += Rational(n) * cs.P(t);
        return Rational(w2 * s);
    };

    BruteforceDetail d;
    d.vmax = vmax;
    d.outer = outer;
    d.box = sum_region(-1, vmax);
    d.annulus = sum_region(vmax, outer);

    // Outside radius `outer`, every cell except ties with beta < 0 contributes at most
    // (1-1/p)^2 p^gamma p^(-(|alpha|+|beta|)/3) <= (1-1/p)^2 p^gamma r^(|alpha|+|beta|),
    // using max >= max(|x1|, |x3|, |x3|^-1) and |a x3^2 - x1^2| = p^-min(2 alpha, 2 beta + gamma).
    Rational S_all = ((1 + r) / (1 - r)) * ((1 + r) / (1 - r));
    Rational r_out = 1;
    for (int i = 0; i <= outer; ++i) r_out *= r;
    Rational line = 1 + 2 * (r - r_out) / (1 - r);
    Rational envelope = w2 * rpow(p, gamma) * (S_all - line * line);

    // Tie cells with beta = -b < 0: P(kappa = k) <= c p^-k with c = (#unit roots)/(1-1/p),
    // which bounds the cell by (1-1/p)^2 c ((b - gamma + 1) p^(gamma/2 - b) + p^(gamma/2 - b - 1)).
    Rational ties = 0;
    if (gamma % 2 == 0) {
        Rational c = Rational(p == 2 ? 4 : 2) / one_minus_inv(p);
        Rational geo = rpow(p, -outer) / Rational(p - 1);
        ties = w2 * c * rpow(p, gamma / 2) *
               (sum_kpk(Rational(p), outer) + (Rational(1 - gamma) + Rational(1, p)) * geo);
    }
    d.beyond = envelope + ties;

    const Rational w5 = qpow(one_minus_inv(p), 5);
    d.box *= w5;
    d.annulus *= w5;
    d.beyond *= w5;
    return d;
}

LocalDensity omega_p_bruteforce(i64 p, i64 a, int vmax) {
    auto d = omega_p_bruteforce_detail(p, a, vmax);
    LocalDensity out;
    out.p = p;
    out.value = d.box;
    out.provenance = Provenance::bruteforce;
    out.vmax = vmax;
    out.tail_bound = d.annulus + d.beyond;
    return out;
}

Rational measure_squares_enumerated(i64 p, i64 a, int beta, int k) {
    int gamma = valuation(p, a);
    if (gamma % 2 != 0) throw std::domain_error("measure_squares: v_p(a) must be even");
    // Scaling x1 = p^beta y: the condition is y^2 = a mod p^(gamma+k) with y integral.
    int n = gamma + k;
    std::vector<i64> level{0};
    i64 pj = 1;
    for (int j = 1; j <= n; ++j) {
        i64 next_pj = pj * p;
        std::vector<i64> next;
        for (i64 y : level)
            for (i64 t = 0; t < p; ++t) {
                i64 z = y + t * pj;
                if (mod128(static_cast<i128>(z) * z - a, next_pj) == 0) next.push_back(z);
            }
        level.swap(next);
        pj = next_pj;
    }
    return rpow(p, -beta) * Rational(static_cast<i64>(level.size())) * rpow(p, -n);
}

Rational measure_squares(i64 p, i64 a, int beta, int k) {
    if (k < 0) throw std::domain_error("measure_squares: k must be nonnegative");
    Rational enumerated = measure_squares_enumerated(p, a, beta, k);
    int gamma = valuation(p, a);
    Rational closed = Rational(eta_count(ipow(p, gamma + k), a)) * rpow(p, -(beta + gamma / 2 + k));
    if (closed != enumerated)
        throw std::logic_error("measure_squares: enumeration " + enumerated.get_str() + " != closed form " +
                               closed.get_str());
    return closed;
}

Rational sum_kpk(const Rational& q, int n) {
    if (q <= 1) throw std::domain_error("sum_kpk: q must exceed 1");
    if (n < 0) throw std::domain_error("sum_kpk: n must be nonnegative");
    Rational u = 1 - 1 / q;
    return (Rational(n + 1) / qpow(q, n + 1) - Rational(n) / qpow(q, n + 2)) / (u * u);
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed_form";
        case Provenance::table: return "table";
        case Provenance::bruteforce: return "bruteforce";
    }
    return "?";
}

}  // namespace manin
