#include "manin/counting.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <vector>

#include "manin/eta.hpp"
#include "manin/torsor.hpp"

namespace manin {

std::string to_string(CountMethod m) {
    switch (m) {
        case CountMethod::direct: return "direct";
        case CountMethod::torsor: return "torsor";
        case CountMethod::moebius_slice: return "moebius_slice";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

i64 floor_of(const Rational& B) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), B.get_num_mpz_t(), B.get_den_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("B too large");
    return q.get_si();
}

// B = P / Q with both parts in 64 bits.
std::pair<i64, i64> split(const Rational& B) {
    if (!B.get_num().fits_slong_p() || !B.get_den().fits_slong_p())
        throw std::overflow_error("B does not fit in 64 bits");
    return {B.get_num().get_si(), B.get_den().get_si()};
}

i128 abs128(i128 x) { return x < 0 ? -x : x; }

CountResult make_result(i64 a, const Rational& B, CountMethod m) {
    CountResult r;
    r.a = a;
    r.B = B;
    r.method = m;
    return r;
}

// Smallest prime factor table on [0, n].
std::vector<std::uint32_t> spf_table(i64 n) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
    for (i64 i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (i64 j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// Least L with n | L^2.
i64 square_root_divisor(const std::vector<std::uint32_t>& spf, i64 n) {
    i64 L = 1;
    while (n > 1) {
        i64 p = spf[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < (e + 1) / 2; ++i) L *= p;
    }
    return L;
}

struct DirectKernel {
    i64 a;
    i64 Bf;
    std::vector<std::uint32_t> spf;
    std::vector<std::pair<i64, i64>> sm;  // (s, m) work items

    DirectKernel(i64 a_, i64 Bf_) : a(a_), Bf(Bf_), spf(spf_table(Bf_)) {
        if (Bf > 100'000'000) throw std::overflow_error("direct_count: B too large");
        for (i64 s = 1; s <= Bf; ++s)
            for (i64 m = 1; s * m * m <= Bf; ++m) sm.emplace_back(s, m);
    }

    // Points with x4 > 0 and x2, x3 > 0 for one (s, m).
    std::pair<i64, CountStats> run(i64 s, i64 m) const {
        CountStats st;
        i64 cnt = 0;
        const i64 x3 = s * m * m;
        const i128 T = static_cast<i128>(a) * x3 * x3;
        const i64 L = square_root_divisor(spf, s * m);
        for (i64 n = 1; s * n * n <= Bf && s * m * n <= Bf; ++n) {
            if (gcd(m, n) != 1) continue;
            const i64 x4 = s * m * n, x2 = s * n * n;
            const i128 lo2 = T - static_cast<i128>(Bf) * x4;
            const i128 hi2 = T + static_cast<i128>(Bf) * x4;
            if (hi2 < 0) continue;
            i64 lo = lo2 <= 0 ? 0 : static_cast<i64>(isqrt_ceil(static_cast<u128>(lo2)));
            i64 hi = std::min<i64>(Bf, static_cast<i64>(isqrt(static_cast<u128>(hi2))));
            i64 start = (lo + L - 1) / L * L;
            const i64 g234 = gcd(gcd(x2, x3), x4);
            for (i64 x1 = start; x1 <= hi; x1 += L) {
                ++st.visited;
                const i128 r = T - static_cast<i128>(x1) * x1;
                if (r % x4 != 0) {
                    ++st.pruned;
                    continue;
                }
                const i64 x0 = static_cast<i64>(r / x4);
                if (gcd(gcd(g234, x1), x0) != 1) {
                    ++st.pruned;
                    continue;
                }
                cnt += x1 == 0 ? 1 : 2;
            }
        }
        return {cnt, st};
    }
};

CountResult direct_impl(i64 a, const Rational& B, bool parallel) {
    require_nonsquare(a);
    auto t0 = Clock::now();
    CountResult res = make_result(a, B, CountMethod::direct);
    i64 Bf = floor_of(B);
    if (Bf < 1) return res;
    DirectKernel k(a, Bf);
    i64 total = 0;
    std::uint64_t visited = 0, pruned = 0;
    const i64 n_items = static_cast<i64>(k.sm.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total, visited, pruned) if (parallel)
    for (i64 i = 0; i < n_items; ++i) {
        auto [c, st] = k.run(k.sm[i].first, k.sm[i].second);
        total += c;
        visited += st.visited;
        pruned += st.pruned;
    }
    res.count = 2 * total;  // the sign of (x2, x3)
    res.stats = {visited, pruned};
    res.elapsed = seconds_since(t0);
    return res;
}

}  // namespace

CountResult direct_count(i64 a, const Rational& B) { return direct_impl(a, B, true); }
CountResult direct_count_serial(i64 a, const Rational& B) { return direct_impl(a, B, false); }

CountResult direct_count_literal(i64 a, const Rational& B) {
    require_nonsquare(a);
    auto t0 = Clock::now();
    CountResult res = make_result(a, B, CountMethod::direct);
    i64 Bf = floor_of(B);
    if (Bf < 1) return res;
    std::set<ProjectivePoint> points;
    for (i64 x1 = -Bf; x1 <= Bf; ++x1)
        for (i64 x3 = -Bf; x3 <= Bf; ++x3) {
            if (x3 == 0) continue;
            for (i64 x4 = 1; x4 <= Bf; ++x4) {
                ++res.stats.visited;
                i128 X1 = x1, X3 = x3, X4 = x4;
                auto p = ProjectivePoint::normalize({(static_cast<i128>(a) * X3 * X3 - X1 * X1) * X3, X1 * X3 * X4,
                                                     X4 * X4 * X4, X3 * X3 * X4, X3 * X4 * X4});
                if (p.height() <= Bf)
                    points.insert(p);
                else
                    ++res.stats.pruned;
            }
        }
    res.count = static_cast<i64>(points.size());
    res.elapsed = seconds_since(t0);
    return res;
}

namespace {

struct TorsorTask {
    i64 a2, a3, a4, a1;
};

struct TorsorKernel {
    i64 a;
    i64 Bf;
    std::vector<TorsorTask> tasks;

    TorsorKernel(i64 a_, i64 Bf_) : a(a_), Bf(Bf_) {
        for (i64 a2 = 1; a2 * a2 * a2 <= Bf; ++a2)
            for (i64 a3 = 1; a2 * a2 * a2 * a3 * a3 <= Bf && a2 * a2 * a3 * a3 <= Bf; ++a3)
                for (i64 a4 = 1; static_cast<i128>(a2) * a2 * a2 * a3 * a3 * a4 * a4 * a4 * a4 <= Bf &&
                                 a2 * a2 * a3 * a3 * a4 * a4 <= Bf;
                     ++a4)
                    for (i64 a1 = 1; a1 * a1 * a2 * a3 * a3 <= Bf && a1 * a2 * a2 * a3 * a3 * a4 * a4 <= Bf; ++a1) {
                        if (gcd(a1, a2) != 1 || gcd(a1, a3) != 1 || gcd(a4, a1 * a3) != 1) continue;
                        tasks.push_back({a2, a3, a4, a1});
                    }
    }

    // Tuples with a1..a6 > 0 and a7 of either sign.
    std::pair<i64, CountStats> run(const TorsorTask& t) const {
        CountStats st;
        i64 cnt = 0;
        const i64 a1 = t.a1, a2 = t.a2, a3 = t.a3, a4 = t.a4;
        const i64 a234 = a2 * a3 * a4;
        std::vector<i64> roots;
        for (i64 a5 = 1;; ++a5) {
            const i128 m3 = static_cast<i128>(a1) * a1 * a2 * a3 * a3 * a5 * a5 * a5;
            const i128 m4base = static_cast<i128>(a2) * a2 * a2 * a3 * a3 * a4 * a4 * a4 * a4 * a5;
            const i128 m5base = static_cast<i128>(a1) * a2 * a2 * a3 * a3 * a4 * a4 * a5 * a5;
            if (m3 > Bf || m4base > Bf || m5base > Bf) break;
            if (gcd(a5, a2 * a4) != 1) continue;
            for (i64 a6 = 1; m4base * a6 * a6 <= Bf && m5base * a6 <= Bf; ++a6) {
                if (gcd(a6, a1 * a2 * a3 * a5) != 1) continue;
                const i64 K7 = Bf / (a234 * a5 * a6);
                const i128 R = static_cast<i128>(Bf) * a1 / a6;
                const i128 A = static_cast<i128>(a2) * a2 * a3 * a4 * a4 * a4 * a6;
                const i128 aA2 = static_cast<i128>(a) * A * A;
                const i128 hi2 = aA2 + R, lo2 = aA2 - R;
                if (hi2 < 0) continue;
                const i64 hi = std::min<i64>(K7, static_cast<i64>(isqrt(static_cast<u128>(hi2))));
                const i64 lo = lo2 <= 0 ? 0 : static_cast<i64>(isqrt_ceil(static_cast<u128>(lo2)));
                if (lo > hi) continue;
                auto visit = [&](i64 a7) {
                    ++st.visited;
                    const i128 num = aA2 - static_cast<i128>(a7) * a7;
                    if (num % a1 != 0 || (a234 > 1 && gcd(a7, a234) != 1)) {
                        ++st.pruned;
                        return;
                    }
                    const i64 a8 = static_cast<i64>(num / a1);
                    if (a5 > 1 && gcd(a8, a5) != 1) {
                        ++st.pruned;
                        return;
                    }
                    cnt += a7 == 0 ? 1 : 2;
                };
                if (a1 > 1 && hi - lo + 1 > 4 * a1) {
                    // a7 restricted to the square roots of a A^2 modulo a1
                    const i64 target = mod128(aA2, a1);
                    roots.clear();
                    for (i64 r = 0; r < a1; ++r)
                        if (mod128(static_cast<i128>(r) * r, a1) == target) roots.push_back(r);
                    for (i64 r : roots) {
                        i64 first = lo + mod(r - lo, a1);
                        for (i64 a7 = first; a7 <= hi; a7 += a1) visit(a7);
                    }
                } else {
                    for (i64 a7 = lo; a7 <= hi; ++a7) visit(a7);
                }
            }
        }
        return {cnt, st};
    }
};

CountResult torsor_impl(i64 a, const Rational& B, bool parallel) {
    require_nonsquare(a);
    auto t0 = Clock::now();
    CountResult res = make_result(a, B, CountMethod::torsor);
    i64 Bf = floor_of(B);
    if (Bf < 1) return res;
    if (Bf > 100'000'000) throw std::overflow_error("torsor_count: B too large");
    TorsorKernel k(a, Bf);
    i64 total = 0;
    std::uint64_t visited = 0, pruned = 0;
    const i64 n_tasks = static_cast<i64>(k.tasks.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total, visited, pruned) if (parallel)
    for (i64 i = 0; i < n_tasks; ++i) {
        auto [c, st] = k.run(k.tasks[i]);
        total += c;
        visited += st.visited;
        pruned += st.pruned;
    }
    // 64 sign patterns of a1..a6 per representative, 32 tuples per point
    res.count = 2 * total;
    res.stats = {visited, pruned};
    res.elapsed = seconds_since(t0);
    return res;
}

}  // namespace

CountResult torsor_count(i64 a, const Rational& B) { return torsor_impl(a, B, true); }
CountResult torsor_count_serial(i64 a, const Rational& B) { return torsor_impl(a, B, false); }

CountResult torsor_count_allsigns(i64 a, const Rational& B) {
    require_nonsquare(a);
    auto t0 = Clock::now();
    CountResult res = make_result(a, B, CountMethod::torsor);
    i64 Bf = floor_of(B);
    if (Bf < 1) return res;
    i64 raw = 0;
    auto range = [](i64 bound) {
        std::vector<i64> v;
        for (i64 x = -bound; x <= bound; ++x)
            if (x != 0) v.push_back(x);
        return v;
    };
    i64 b2 = 1, b3 = 1, b4 = 1, b1 = 1, b5 = 1, b6 = 1;
    while ((b2 + 1) * (b2 + 1) * (b2 + 1) <= Bf) ++b2;
    while ((b3 + 1) * (b3 + 1) <= Bf) ++b3;
    while ((b4 + 1) * (b4 + 1) * (b4 + 1) * (b4 + 1) <= Bf) ++b4;
    b1 = b3;
    b6 = b3;
    b5 = b2;
    for (i64 a1 : range(b1))
        for (i64 a2 : range(b2))
            for (i64 a3 : range(b3))
                for (i64 a4 : range(b4))
                    for (i64 a5 : range(b5))
                        for (i64 a6 : range(b6)) {
                            i128 m2base = abs128(static_cast<i128>(a2) * a3 * a4 * a5 * a6);
                            i128 m3 = abs128(static_cast<i128>(a1) * a1 * a2 * a3 * a3 * a5 * a5 * a5);
                            i128 m4 = abs128(static_cast<i128>(a2) * a2 * a2 * a3 * a3 * a4 * a4 * a4 * a4 * a5 * a6 * a6);
                            i128 m5 = abs128(static_cast<i128>(a1) * a2 * a2 * a3 * a3 * a4 * a4 * a5 * a5 * a6);
                            if (m3 > Bf || m4 > Bf || m5 > Bf) continue;
                            i64 K7 = static_cast<i64>(Bf / m2base);
                            for (i64 a7 = -K7; a7 <= K7; ++a7) {
                                ++res.stats.visited;
                                i128 A = static_cast<i128>(a2) * a2 * a3 * a4 * a4 * a4 * a6;
                                i128 num = static_cast<i128>(a) * A * A - static_cast<i128>(a7) * a7;
                                if (num % a1 != 0) continue;
                                if (abs128(num / a1 * a6) > Bf) continue;
                                TorsorTuple t{{a1, a2, a3, a4, a5, a6, a7, static_cast<i64>(num / a1)}};
                                if (validate(a, t).ok) ++raw;
                            }
                        }
    if (raw % 32 != 0)
        throw std::logic_error("torsor_count: raw total " + std::to_string(raw) + " is not divisible by 32");
    res.count = raw / 32;
    res.elapsed = seconds_since(t0);
    return res;
}

namespace {

// Exact monomial bounds for one slice a1..a4 and B = P/Q.
struct Slice {
    i64 a, a1, a2, a3, a4;
    i64 P, Q;

    bool le(i128 monomial) const { return static_cast<i128>(Q) * monomial <= P; }

    bool small_monomials(i64 a5, i64 a6) const {
        i128 b5 = a5 < 0 ? -a5 : a5, b6 = a6 < 0 ? -a6 : a6;
        return le(static_cast<i128>(a1) * a1 * a2 * a3 * a3 * b5 * b5 * b5) &&
               le(static_cast<i128>(a2) * a2 * a2 * a3 * a3 * a4 * a4 * a4 * a4 * b5 * b6 * b6) &&
               le(static_cast<i128>(a1) * a2 * a2 * a3 * a3 * a4 * a4 * b5 * b5 * b6);
    }

    i64 a5_bound() const {
        i64 x = 0;
        while (small_monomials(x + 1, 1)) ++x;
        return x;
    }
    i64 a6_bound() const {
        i64 y = 0;
        while (small_monomials(1, y + 1)) ++y;
        return y;
    }

    // |a7| <= hi and a7^2 in [aA^2 - R, aA^2 + R]; returns false if empty.
    bool a7_window(i64 a5, i64 a6, i64& lo, i64& hi, i128& aA2) const {
        i128 b5 = a5 < 0 ? -a5 : a5, b6 = a6 < 0 ? -a6 : a6;
        i64 K7 = static_cast<i64>(static_cast<i128>(P) / (static_cast<i128>(Q) * a2 * a3 * a4 * b5 * b6));
        i128 R = static_cast<i128>(P) * a1 / (static_cast<i128>(Q) * b6);
        i128 A = static_cast<i128>(a2) * a2 * a3 * a4 * a4 * a4 * a6;
        aA2 = static_cast<i128>(a) * A * A;
        if (aA2 + R < 0) return false;
        hi = std::min<i64>(K7, static_cast<i64>(isqrt(static_cast<u128>(aA2 + R))));
        lo = aA2 - R <= 0 ? 0 : static_cast<i64>(isqrt_ceil(static_cast<u128>(aA2 - R)));
        return lo <= hi;
    }
};

// #{x in [lo, hi] : x = c mod m}
i64 count_progression(i64 c, i64 m, i64 lo, i64 hi) {
    if (lo > hi) return 0;
    return floor_div(hi - c, m) - floor_div(lo - 1 - c, m);
}

std::vector<i64> squarefree_divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto [p, e] : factorize_cached(n).factors) {
        std::size_t k = ds.size();
        for (std::size_t i = 0; i < k; ++i) ds.push_back(ds[i] * p);
    }
    return ds;
}

Slice make_slice(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B) {
    require_nonsquare(a);
    if (a1 < 1 || a2 < 1 || a3 < 1 || a4 < 1) throw std::domain_error("moebius slice: a1..a4 must be positive");
    auto [P, Q] = split(B);
    return {a, a1, a2, a3, a4, P, Q};
}

}  // namespace

i64 moebius_slice_lhs(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B) {
    Slice s = make_slice(a, a1, a2, a3, a4, B);
    if (B <= 0) return 0;
    const i64 a5m = s.a5_bound(), a6m = s.a6_bound();
    i64 cnt = 0;
    for (i64 a5 = -a5m; a5 <= a5m; ++a5) {
        if (a5 == 0 || gcd(a5, a2 * a4) != 1) continue;
        for (i64 a6 = -a6m; a6 <= a6m; ++a6) {
            if (a6 == 0 || gcd(a6, a1 * a2 * a3 * a5) != 1 || !s.small_monomials(a5, a6)) continue;
            i64 lo, hi;
            i128 aA2;
            if (!s.a7_window(a5, a6, lo, hi, aA2)) continue;
            for (i64 a7 = -hi; a7 <= hi; ++a7) {
                if (a7 > -lo && a7 < lo) continue;
                i128 num = aA2 - static_cast<i128>(a7) * a7;
                if (num % a1 != 0) continue;
                TorsorTuple t{{a1, a2, a3, a4, a5, a6, a7, static_cast<i64>(num / a1)}};
                if (!validate(a, t).ok) continue;
                if (height_tilde(a, t) > B) throw std::logic_error("moebius_slice_lhs: window admits a tuple above B");
                ++cnt;
            }
        }
    }
    return cnt;
}

i64 moebius_slice_rhs(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B) {
    Slice s = make_slice(a, a1, a2, a3, a4, B);
    if (B <= 0) return 0;
    const i64 a5m = s.a5_bound(), a6m = s.a6_bound();
    if (a5m == 0 || a6m == 0) return 0;
    const Factorization fa = factorize_cached(a);
    const i64 a234 = a2 * a3 * a4;
    const i64 A0 = a2 * a2 * a3 * a4 * a4 * a4;  // A = A0 a6

    auto d58_admissible = [&](i64 d58) {
        if (moebius(d58) == 0 || gcd(d58, a234) != 1) return false;
        for (auto [p, e] : fa.factors)
            if (e % 2 == 1 && valuation(p, d58 * a1) > e) return false;
        return true;
    };

    i64 total = 0;
    for (i64 d58 = 1; d58 <= a5m; ++d58) {
        if (!d58_admissible(d58)) continue;
        const i64 n58 = d58 * a1;
        const i64 g = gcd(n58, a);
        i64 gp = 1;
        for (auto [p, e] : factorize_cached(g).factors) gp *= ipow(p, (e + 1) / 2);
        const i64 q = n58 / g;
        const i64 qg = q * gp;
        std::vector<i64> rhos;
        for (i64 t = 0; t < q; ++t) {
            if (gcd(t, q) != 1) continue;
            i64 rho = gp * t;
            if (mod128(static_cast<i128>(rho) * rho - a, n58) == 0) rhos.push_back(rho);
        }
        if (rhos.empty()) continue;
        for (i64 d56 = 1; d56 <= a6m; ++d56) {
            if (moebius(d56) == 0 || gcd(d56, a1 * a234) != 1) continue;
            const i64 l5 = lcm(d56, d58);
            for (i64 d5 : squarefree_divisors(a2 * a4)) {
                const i64 b5 = d5 * l5;
                if (b5 > a5m) continue;
                for (i64 d6 : squarefree_divisors(a1 * a2 * a3)) {
                    const i64 b6 = d6 * d56;
                    if (b6 > a6m) continue;
                    for (i64 d7 : squarefree_divisors(a234)) {
                        const int mu = moebius(d56) * moebius(d58) * moebius(d5) * moebius(d6) * moebius(d7);
                        const i64 b7 = d7 * qg;
                        i64 inner = 0;
                        for (i64 rho : rhos) {
                            auto gamma = crt({{0, gp * d7}, {mod128(static_cast<i128>(rho) * A0, qg), qg}});
                            if (!gamma) throw std::logic_error("moebius_slice_rhs: incompatible congruences for gamma7");
                            if (gamma->m != b7) throw std::logic_error("moebius_slice_rhs: unexpected modulus for gamma7");
                            for (i64 a5 = -(a5m / b5) * b5; a5 <= a5m; a5 += b5) {
                                if (a5 == 0) continue;
                                for (i64 a6 = -(a6m / b6) * b6; a6 <= a6m; a6 += b6) {
                                    if (a6 == 0 || !s.small_monomials(a5, a6)) continue;
                                    i64 lo, hi;
                                    i128 aA2;
                                    if (!s.a7_window(a5, a6, lo, hi, aA2)) continue;
                                    const i64 c = mod128(static_cast<i128>(gamma->r) * a6, b7);
                                    if (lo == 0)
                                        inner += count_progression(c, b7, -hi, hi);
                                    else
                                        inner += count_progression(c, b7, lo, hi) + count_progression(c, b7, -hi, -lo);
                                }
                            }
                        }
                        total += mu * inner;
                    }
                }
            }
        }
    }
    return total;
}

SliceCheck moebius_slice_check(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B) {
    return {moebius_slice_lhs(a, a1, a2, a3, a4, B), moebius_slice_rhs(a, a1, a2, a3, a4, B)};
}

i64 moebius_slice_total(i64 a, const Rational& B) {
    require_nonsquare(a);
    i64 Bf = floor_of(B);
    i64 total = 0;
    for (i64 a2 = 1; a2 * a2 * a2 <= Bf; ++a2)
        for (i64 a3 = 1; a2 * a3 * a3 <= Bf; ++a3)
            for (i64 a4 = 1; a2 * a2 * a2 * a3 * a3 * a4 * a4 * a4 * a4 <= Bf; ++a4)
                for (i64 a1 = 1; a1 * a1 * a2 * a3 * a3 <= Bf; ++a1) {
                    if (gcd(a4, a1 * a3) != 1 || gcd(a3, a1) != 1 || gcd(a2, a1) != 1) continue;
                    total += moebius_slice_lhs(a, a1, a2, a3, a4, B);
                }
    return total;
}

}  // namespace manin
