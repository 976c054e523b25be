#include "doctest.h"
#include "manin/counting.hpp"
#include "manin/theta.hpp"

using namespace manin;

TEST_CASE("direct_count regression values") {
    CHECK(direct_count(-1, Rational(10)).count == 42);
    CHECK(direct_count(-1, Rational(50)).count == 378);
    const std::pair<i64, i64> b50[] = {{2, 540}, {3, 446}, {5, 380}, {-2, 312}, {6, 462}, {12, 304}};
    for (auto [a, n] : b50) CHECK(direct_count(a, Rational(50)).count == n);
    for (i64 a : {-1, 2, 5}) CHECK(direct_count(a, Rational(1, 2)).count == 0);
    CHECK_THROWS(direct_count(4, Rational(10)));
}

TEST_CASE("direct_count against the literal triple enumeration") {
    for (i64 a : {-1, 2, 3, -5, 12})
        for (i64 B : {1, 7, 25}) {
            Rational b(B);
            CHECK(direct_count(a, b).count == direct_count_literal(a, b).count);
        }
    CHECK(direct_count(-1, Rational(31, 2)).count == direct_count_literal(-1, Rational(15)).count);
}

TEST_CASE("torsor_count") {
    for (i64 a : {-1, 2, 3, 5, -2, 6, 12}) {
        CHECK(torsor_count(a, Rational(50)).count == direct_count(a, Rational(50)).count);
        CHECK(torsor_count(a, Rational(200)).count == direct_count(a, Rational(200)).count);
    }
    CHECK(torsor_count(-1, Rational(1, 2)).count == 0);
    CHECK(torsor_count_allsigns(-1, Rational(20)).count == torsor_count(-1, Rational(20)).count);
    CHECK(torsor_count_allsigns(6, Rational(15)).count == direct_count(6, Rational(15)).count);
    i64 prev = 0;
    for (i64 B = 1; B <= 120; B += 7) {
        i64 n = torsor_count(5, Rational(B)).count;
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("serial and parallel kernels agree") {
    for (i64 a : {-1, 17}) {
        Rational B(3000);
        CHECK(direct_count(a, B).count == direct_count_serial(a, B).count);
        CHECK(torsor_count(a, B).count == torsor_count_serial(a, B).count);
    }
}

TEST_CASE("Moebius slices") {
    auto seed = moebius_slice_check(-1, 1, 1, 1, 1, Rational(100));
    CHECK(seed.pass());
    CHECK(seed.lhs > 0);
    auto tiny = moebius_slice_check(-1, 1, 1, 1, 1, Rational(1, 2));
    CHECK(tiny.lhs == 0);
    CHECK(tiny.rhs == 0);
    for (i64 a : {-5, 8, 18})
        for (i64 a1 = 1; a1 <= 3; ++a1)
            for (i64 a2 = 1; a2 <= 3; ++a2)
                for (i64 a3 = 1; a3 <= 2; ++a3)
                    for (i64 a4 = 1; a4 <= 2; ++a4)
                        if (theta0(a1, a2, a3, a4) == 1) CHECK(moebius_slice_check(a, a1, a2, a3, a4, Rational(150)).pass());
    CHECK(moebius_slice_total(-1, Rational(100)) == 2 * direct_count(-1, Rational(100)).count);
    CHECK(moebius_slice_total(3, Rational(60)) == 2 * direct_count(3, Rational(60)).count);
}
