#pragma once

// Finite local densities omega_p and an independent p-adic integration oracle.

#include <string>

#include "manin/arith.hpp"

namespace manin {

enum class Provenance { closed_form, table, bruteforce };

struct LocalDensity {
    i64 p = 0;
    Rational value;
    Provenance provenance = Provenance::closed_form;
    int vmax = 0;           // bruteforce only
    Rational tail_bound;    // bruteforce only: |exact - value| <= tail_bound
};

Rational r_a(i64 p, i64 a);
/// Requires p = 2 and v_2(a) even.
Rational s_a(i64 p, i64 a);
/// (1-1/p)^5 (1 + (5 + r_a(p))/p + 1/p^2).
Rational omega_p(i64 p, i64 a);
LocalDensity omega_p_closed(i64 p, i64 a);

/// The density table for squarefree a != 1 (throws otherwise).
Rational omega_p_table(i64 p, i64 a);

/// Sum of the density integrand over valuation cells (alpha, beta) in [-vmax, vmax]^2,
/// times (1-1/p)^5, with a rigorous bound on the omitted cells.
/// Requires vmax >= v_p(4a) + 4.
LocalDensity omega_p_bruteforce(i64 p, i64 a, int vmax);

/// Finer split of the same oracle: cells up to an outer radius are summed exactly,
/// leaving only an envelope bound.
struct BruteforceDetail {
    Rational box;        // cells with max(|alpha|,|beta|) <= vmax
    Rational annulus;    // cells with vmax < max(|alpha|,|beta|) <= outer
    Rational beyond;     // bound for everything outside radius outer
    int vmax = 0;
    int outer = 0;
};
BruteforceDetail omega_p_bruteforce_detail(i64 p, i64 a, int vmax);

/// Measure of {x1 : v(a x3^2 - x1^2) >= v(a x3^2) + k} with v(x3) = beta, by residue
/// enumeration; checked against eta(p^{v(a)+k}; a) / p^{v(a x3^2)/2 + k}.
/// Requires v_p(a) even. Throws std::logic_error on mismatch.
Rational measure_squares(i64 p, i64 a, int beta, int k);
Rational measure_squares_enumerated(i64 p, i64 a, int beta, int k);

/// sum_{k > n} k / q^k = (1-1/q)^-2 ((n+1)/q^(n+1) - n/q^(n+2)).
Rational sum_kpk(const Rational& q, int n);

std::string to_string(Provenance p);

}  // namespace manin
