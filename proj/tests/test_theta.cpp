#include "doctest.h"
#include "manin/local_densities.hpp"
#include "manin/theta.hpp"

using namespace manin;

namespace {
ValuationPattern pat(int v1, int v2, int v3, int v4) { return ValuationPattern{{v1, v2, v3, v4}}; }
}  // namespace

TEST_CASE("theta0") {
    CHECK(theta0(1, 1, 1, 1) == 1);
    CHECK(theta0(2, 1, 1, 2) == 0);
    CHECK(theta0(3, 5, 7, 11) == 1);
}

TEST_CASE("theta1_p table") {
    CHECK(theta1_p(3, -1, pat(0, 0, 0, 0)) == Rational(8, 9));
    for (i64 p : {2, 3, 7})
        for (i64 a : {-1, 12}) {
            Rational q = 1 - Rational(1, p);
            CHECK(theta1_p(p, a, pat(0, 1, 0, 0)) == q * q * q);
            CHECK(theta1_p(p, a, pat(0, 2, 1, 0)) == q * q * q);
            CHECK(theta1_p(p, a, pat(0, 0, 1, 0)) == q * q);
            CHECK(theta1_p(p, a, pat(0, 0, 0, 3)) == q * q);
            CHECK(theta1_p(p, a, pat(1, 1, 0, 0)) == 0);
        }
    CHECK(pat(1, 0, 2, 0).supp() == 0b101u);
}

TEST_CASE("theta1 factor identity") {
    // p not dividing 2a, v = 0: both sides equal (1-1/p)(1+1/p-(1+chi(p))/p^2)
    for (i64 p : {3, 7, 11}) {
        auto f = theta1_factor_identity(p, 5, pat(0, 0, 0, 0));
        Rational q(1, p);
        CHECK(f.pass);
        CHECK(f.table == (1 - q) * (1 + q - (1 + kronecker(5, p)) * q * q));
    }
    CHECK(theta1_factor_identity(2, 12, pat(2, 0, 0, 0)).pass);
    for (i64 a : {-4, 8, 18, 45})
        for (i64 p : {2, 3, 5})
            for (int m = 0; m < 81; ++m) CHECK(theta1_factor_identity(p, a, pat(m % 3, m / 3 % 3, m / 9 % 3, m / 27)).pass);
}

TEST_CASE("theta2_p table") {
    for (i64 p : {2, 3, 5})
        for (i64 a : {-1, 3, 12}) {
            Rational q(1, p);
            CHECK(theta2_p(p, a, 0, 0, 0) == (1 - q) * (1 - q) * (1 + (2 + r_a(p, a)) * q));
            CHECK(theta2_p(p, a, 1, 0, 0) == (1 - q) * (1 - q) * (1 - q) * (1 - q));
        }
    CHECK(theta2(-1, 1, 2, 2).is_zero());
    CHECK_FALSE(theta2(-1, 1, 2, 3).is_zero());
}

TEST_CASE("Euler products") {
    auto t = theta1(-1, 1, 1, 1, 1);
    CHECK(t.normalized() == 1);
    CHECK(t.evaluate(1000) > 0);
    CHECK(theta1(-1, 2, 2, 1, 1).is_zero());
}

TEST_CASE("theta1 average") {
    auto z = theta1_average(-1, 1, 1, 1, 0, 1000);
    CHECK(z.sum == 0);
    CHECK(z.prediction == 0);
    auto one = theta1_average(-1, 1, 1, 1, 1, 1000);
    CHECK(one.sum_normalized == theta1(-1, 1, 1, 1, 1).normalized());
    auto r = theta1_average(-1, 1, 1, 1, 10000);
    CHECK(r.relative_error < 0.05);
}
