#include "manin/eta.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace manin {

void require_nonsquare(i64 a) {
    if (a == 0) throw std::domain_error("a must be nonzero");
    if (is_square(a)) throw std::domain_error("a = " + std::to_string(a) + " is a square");
}

SurfaceParam::SurfaceParam(i64 a_) : a(a_) {
    require_nonsquare(a);
    fa = factorize_cached(a);
    f2a = factorize_cached(2 * a);
}

namespace {

struct GPrime {
    i64 g;       // gcd(q, a)
    i64 gprime;  // prod p^ceil(v_p(g)/2)
};

GPrime g_and_gprime(i64 q, i64 a) {
    i64 g = gcd(q, a < 0 ? -a : a);
    i64 gp = 1;
    for (auto [p, e] : factorize_cached(g).factors) gp *= ipow(p, (e + 1) / 2);
    return {g, gp};
}

// rho mod p^e, built digit by digit; a prefix survives only if rho^2 = a mod p^level.
i64 count_prime_power(i64 p, int k, i64 a) {
    int vg = std::min(k, a == 0 ? k : valuation(p, a));
    int c = (vg + 1) / 2;
    int e = k - vg + c;
    i64 pk = ipow(p, k);
    std::vector<i64> level{0};
    i64 pj = 1;
    for (int j = 1; j <= e; ++j) {
        i64 next_pj = pj * p;
        std::vector<i64> next;
        for (i64 r : level) {
            for (i64 t = 0; t < p; ++t) {
                i64 rho = r + t * pj;
                i128 sq = static_cast<i128>(rho) * rho;
                if (mod128(sq - a, next_pj) == 0) next.push_back(rho);
            }
        }
        level.swap(next);
        pj = next_pj;
    }
    i64 count = 0;
    for (i64 rho : level) {
        int vr = rho == 0 ? e : std::min(e, valuation(p, rho));
        if (vr != c) continue;
        i128 sq = static_cast<i128>(rho) * rho;
        if (mod128(sq - a, pk) == 0) ++count;
    }
    return count;
}

}  // namespace

i64 eta_count(i64 q, i64 a) {
    if (q < 1) throw std::domain_error("eta: q must be positive");
    if (q == 1) return 1;
    auto f = factorize_cached(q);
    if (f.factors.size() == 1) {
        auto [p, k] = f.factors[0];
        return count_prime_power(p, k, a);
    }
    auto [g, gp] = g_and_gprime(q, a);
    i64 m = q / g * gp;
    i64 count = 0;
    for (i64 rho = 0; rho < m; ++rho) {
        if (gcd(rho, m) != gp) continue;
        i128 sq = static_cast<i128>(rho) * rho;
        if (mod128(sq - a, q) == 0) ++count;
    }
    return count;
}

i64 eta_bruteforce(i64 q, i64 a) {
    require_nonsquare(a);
    return eta_count(q, a);
}

i64 eta_closed(i64 p, int k, i64 a) {
    require_nonsquare(a);
    if (k < 1) throw std::domain_error("eta_closed: k must be positive");
    int v = valuation(p, a);
    if (p != 2 && v == 0) return 1 + kronecker(a, p);
    if (k <= v) return 1;
    if (v % 2 == 1) return 0;
    if (p != 2) return 1 + kronecker(a / ipow(p, v), p);
    // p = 2, v even: the table only bounds eta for v < k <= v + 3; beyond that it is constant.
    int kk = std::min(k, v + 3);
    return eta_count(ipow(2, kk), a);
}

i64 eta(i64 q, i64 a) {
    require_nonsquare(a);
    if (q < 1) throw std::domain_error("eta: q must be positive");
    i64 r = 1;
    for (auto [p, k] : factorize_cached(q).factors) {
        r *= eta_closed(p, k, a);
        if (r == 0) return 0;
    }
    return r;
}

i64 EtaContext::operator()(i64 p, int k) {
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find({p, k});
        if (it != memo_.end()) return it->second;
    }
    i64 v = k == 0 ? 1 : eta_closed(p, k, param_.a);
    std::lock_guard lock(mutex_);
    memo_.emplace(std::make_pair(p, k), v);
    return v;
}

}  // namespace manin
