#pragma once

// eta(q; a): square roots of a modulo q, normalised by the common part of q and a.

#include <map>
#include <mutex>
#include <utility>

#include "manin/arith.hpp"

namespace manin {

/// The surface parameter a: nonzero, not a square. Caches factorizations of a and 2a.
struct SurfaceParam {
    i64 a;
    Factorization fa;
    Factorization f2a;

    explicit SurfaceParam(i64 a);
    int v(i64 p) const { return fa.exponent_of(p); }
};

/// Throws std::domain_error if a is zero or a perfect square.
void require_nonsquare(i64 a);

/// Counts rho mod q g'/g with gcd(rho, q g'/g) = g' and rho^2 = a mod q, by enumeration.
i64 eta_bruteforce(i64 q, i64 a);

/// Same enumeration without the nonsquare check (used for local measures).
i64 eta_count(i64 q, i64 a);

/// eta(p^k; a) from the case table, with enumeration only where the table is a bound.
i64 eta_closed(i64 p, int k, i64 a);

/// Multiplicative extension of eta_closed.
i64 eta(i64 q, i64 a);

/// Memoised eta(p^k; a) for a fixed a; safe for concurrent use.
class EtaContext {
public:
    explicit EtaContext(i64 a) : param_(a) {}
    i64 operator()(i64 p, int k);
    const SurfaceParam& param() const { return param_; }

private:
    SurfaceParam param_;
    std::mutex mutex_;
    std::map<std::pair<i64, int>, i64> memo_;
};

}  // namespace manin
