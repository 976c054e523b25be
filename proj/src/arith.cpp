#include "manin/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace manin {

i64 Factorization::value() const {
    i64 v = 1;
    for (auto [p, e] : factors) v *= ipow(p, e);
    return v;
}

int Factorization::exponent_of(i64 p) const {
    for (auto [q, e] : factors)
        if (q == p) return e;
    return 0;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(a) * b) % m);
}

i64 powmod(i64 b, i64 e, i64 m) {
    i64 r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mod128(i128 a, i64 m) {
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) { return std::lcm(a, b); }

u64 isqrt(u128 n) {
    if (n == 0) return 0;
    u64 x = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<u128>(x) * x > n) --x;
    while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

u64 isqrt_ceil(u128 n) {
    u64 x = isqrt(n);
    return static_cast<u128>(x) * x == n ? x : x + 1;
}

bool is_square(i64 n) {
    if (n < 0) return false;
    u64 r = isqrt(static_cast<u128>(n));
    return static_cast<i64>(r * r) == n;
}

// Deterministic Miller-Rabin; these bases are a certificate below 2^64.
bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mm = [n](u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) % n); };
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = 1, b = a, e = d;
        while (e) {
            if (e & 1) x = mm(x, b);
            b = mm(b, b);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mm(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    auto mm = [n](u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) % n); };
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mm(v, v) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void split(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

Factorization factorize(i64 n) {
    if (n == 0) throw std::domain_error("factorize: n must be nonzero");
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    std::vector<u64> primes;
    for (u64 p = 2; p < 1000000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) split(m, primes);
    std::sort(primes.begin(), primes.end());
    Factorization f;
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == static_cast<i64>(p))
            ++f.factors.back().second;
        else
            f.factors.emplace_back(static_cast<i64>(p), 1);
    }
    return f;
}

namespace {
std::shared_mutex cache_mutex;
std::unordered_map<i64, Factorization> cache;
}  // namespace

Factorization factorize_cached(i64 n) {
    {
        std::shared_lock lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Factorization f = factorize(n);
    std::unique_lock lock(cache_mutex);
    return cache.emplace(n, std::move(f)).first->second;
}

std::size_t factorization_cache_size() {
    std::shared_lock lock(cache_mutex);
    return cache.size();
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (i64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

int moebius(i64 n) {
    if (n < 1) throw std::domain_error("moebius: n must be positive");
    int s = 1;
    for (auto [p, e] : factorize_cached(n).factors) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        if ((v & 1) && (mod(a, 8) == 3 || mod(a, 8) == 5)) result = -result;
    }
    // Jacobi symbol (a/n) for odd n > 0.
    i64 x = mod(a, n);
    i64 m = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            if (m % 8 == 3 || m % 8 == 5) result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

int valuation(i64 p, i64 n) {
    if (n == 0) throw std::domain_error("valuation: n must be nonzero");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

int valuation(i64 p, i128 n) {
    if (n == 0) throw std::domain_error("valuation: n must be nonzero");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

namespace {

// Extended gcd on i128 to keep intermediate products safe.
i128 ext_gcd(i128 a, i128 b, i128& x, i128& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i128 x1, y1;
    i128 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

std::optional<Congruence> crt(const std::vector<Congruence>& residues) {
    i128 r = 0, m = 1;
    for (const auto& c : residues) {
        if (c.m < 1) throw std::domain_error("crt: moduli must be positive");
        i128 r2 = mod(c.r, c.m), m2 = c.m;
        i128 x, y;
        i128 g = ext_gcd(m, m2, x, y);
        if ((r2 - r) % g != 0) return std::nullopt;
        i128 l = m / g * m2;
        // r + m * t with t = ((r2 - r)/g) * x mod (m2/g)
        i128 mg = m2 / g;
        i128 t = ((r2 - r) / g) % mg * (x % mg) % mg;
        r = (r + m * t) % l;
        if (r < 0) r += l;
        m = l;
    }
    return Congruence{static_cast<i64>(r), static_cast<i64>(m)};
}

Rational frac(i64 num, i64 den) {
    if (den == 0) throw std::domain_error("frac: zero denominator");
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

Rational rpow(i64 p, int e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(z);
    return Rational(mpz_class(1), z);
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace manin
