#pragma once

// The weights theta0, theta1, theta2 as Euler products over primes.

#include <array>
#include <functional>
#include <map>

#include "manin/arith.hpp"

namespace manin {

struct ValuationPattern {
    std::array<int, 4> v{0, 0, 0, 0};
    /// Bitmask with bit i set iff v[i] != 0 (bit 0 is index 1).
    unsigned supp() const;
};

/// prod_p f(p): finitely many exceptional factors, the generic rule everywhere else.
struct EulerProduct {
    std::map<i64, Rational> exceptional;
    std::function<Rational(i64)> generic;

    /// prod over exceptional p of f(p)/generic(p); zero iff some factor vanishes.
    Rational normalized() const;
    /// The full product truncated at primes <= prime_cut.
    double evaluate(i64 prime_cut) const;
    bool is_zero() const;
};

int theta0(i64 a1, i64 a2, i64 a3, i64 a4);

/// theta_{1,p}(v) from the case table.
Rational theta1_p(i64 p, i64 a, const ValuationPattern& v);
Rational theta1_generic(i64 p, i64 a);
EulerProduct theta1(i64 a, i64 a1, i64 a2, i64 a3, i64 a4);

Rational theta2_p(i64 p, i64 a, int v2, int v3, int v4);
Rational theta2_generic(i64 p, i64 a);
EulerProduct theta2(i64 a, i64 a2, i64 a3, i64 a4);

struct FactorIdentity {
    bool pass;
    Rational table;     // theta_{1,p}(v)
    Rational local_sum; // the localised Moebius / rho sum
};

/// Compares theta_{1,p}(v) with the sum over p-parts of (d56, d58, d5, d6, d7).
FactorIdentity theta1_factor_identity(i64 p, i64 a, const ValuationPattern& v);

struct Theta1Average {
    Rational sum_normalized;         // sum_{a1 <= x} theta1(a1, .).normalized()
    Rational prediction_normalized;  // theta2(.).normalized() * x
    double ratio_constant;           // prod_p theta1_generic / theta2_generic
    double sum;                      // ratio_constant * sum_normalized, times prod_p theta2_generic
    double prediction;
    double relative_error;
};

/// Sum of theta1 over a1 <= x against the prediction theta2 * x.
/// Both sides share the convergent factor prod_p theta2_generic(p), which cancels in the
/// relative error; the remaining constant is evaluated to prime_cut.
Theta1Average theta1_average(i64 a, i64 a2, i64 a3, i64 a4, i64 x, i64 prime_cut = 2'000'000);

}  // namespace manin
