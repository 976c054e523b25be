#pragma once

// Exact integer and rational foundations.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace manin {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Exact rationals, always kept in canonical form by GMP.
using Rational = mpq_class;

struct Factorization {
    std::vector<std::pair<i64, int>> factors;  // primes strictly increasing

    i64 value() const;
    int omega() const { return static_cast<int>(factors.size()); }
    int exponent_of(i64 p) const;
    bool operator==(const Factorization&) const = default;
};

/// Factorization of |n|. Throws std::domain_error for n = 0.
Factorization factorize(i64 n);

/// Same as factorize, served from a process-wide thread-safe cache.
Factorization factorize_cached(i64 n);
std::size_t factorization_cache_size();

bool is_prime(u64 n);
std::vector<i64> primes_up_to(i64 n);

int moebius(i64 n);

/// Kronecker symbol (a/n) for arbitrary integers, not both zero.
int kronecker(i64 a, i64 n);

/// Largest e with p^e | n. Requires n != 0.
int valuation(i64 p, i64 n);
int valuation(i64 p, i128 n);

i64 gcd(i64 a, i64 b);
i128 gcd128(i128 a, i128 b);
i64 lcm(i64 a, i64 b);

/// floor(sqrt(n)) for n >= 0.
u64 isqrt(u128 n);
/// ceil(sqrt(n)) for n >= 0.
u64 isqrt_ceil(u128 n);
bool is_square(i64 n);

i64 ipow(i64 b, int e);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 b, i64 e, i64 m);
/// Non-negative residue of a mod m.
i64 mod(i64 a, i64 m);
i64 mod128(i128 a, i64 m);
/// floor(a / b) for b > 0.
i64 floor_div(i64 a, i64 b);

struct Congruence {
    i64 r;
    i64 m;
};

/// Combined class mod lcm of the moduli, or nullopt if incompatible.
/// Moduli need not be coprime.
std::optional<Congruence> crt(const std::vector<Congruence>& residues);

/// num/den in lowest terms. Unlike the two-argument Rational constructor this canonicalizes.
Rational frac(i64 num, i64 den);

/// p^e as an exact rational; e may be negative.
Rational rpow(i64 p, int e);

std::string to_string(i128 v);

}  // namespace manin
