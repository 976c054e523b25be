#pragma once

// N_{U,H}(B) by two independent counters, and the Moebius slice identity.

#include <cstdint>
#include <string>

#include "manin/arith.hpp"

namespace manin {

enum class CountMethod { direct, torsor, moebius_slice };
std::string to_string(CountMethod m);

struct CountStats {
    std::uint64_t visited = 0;  // candidate tuples examined
    std::uint64_t pruned = 0;   // rejected by a congruence or gcd test
};

struct CountResult {
    i64 a = 0;
    Rational B;
    CountMethod method = CountMethod::direct;
    i64 count = 0;
    double elapsed = 0;  // seconds
    CountStats stats;
};

/// Points of height <= B on U. Points are taken with x4 > 0 and parametrised by
/// |x3| = s m^2, |x2| = s n^2, x4 = s m n; x1 runs over multiples of the least L with s m | L^2.
CountResult direct_count(i64 a, const Rational& B);
CountResult direct_count_serial(i64 a, const Rational& B);
/// Literal enumeration of (x1, x3, x4) in [-B,B] x [-B,B]\0 x [1,B] with set deduplication.
CountResult direct_count_literal(i64 a, const Rational& B);

/// Integral torsor points of height <= B, divided by the 32 elements of each orbit.
/// The fast kernels count a1..a6 > 0 and use that the valid set is stable under all sign
/// changes of a1..a7, which give 64 tuples per such representative.
CountResult torsor_count(i64 a, const Rational& B);
CountResult torsor_count_serial(i64 a, const Rational& B);
/// All sign combinations enumerated; throws std::logic_error unless 32 | raw total.
CountResult torsor_count_allsigns(i64 a, const Rational& B);

struct SliceCheck {
    i64 lhs = 0;
    i64 rhs = 0;
    bool pass() const { return lhs == rhs; }
};

/// For fixed a1..a4 > 0 with theta0 = 1: lhs counts (a5, a6, a7) with a5 a6 != 0 completing a valid
/// tuple of height <= B; rhs is the Moebius sum over (d56, d58, d5, d6, d7) and rho of lattice counts.
SliceCheck moebius_slice_check(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B);
i64 moebius_slice_lhs(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B);
i64 moebius_slice_rhs(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, const Rational& B);

/// Sum of moebius_slice_lhs over every admissible (a1..a4); equals 2 N_{U,H}(B).
i64 moebius_slice_total(i64 a, const Rational& B);

}  // namespace manin
