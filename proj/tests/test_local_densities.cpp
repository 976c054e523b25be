#include "doctest.h"
#include "manin/eta.hpp"
#include "manin/local_densities.hpp"

using namespace manin;

TEST_CASE("r_a and s_a") {
    CHECK(r_a(7, 2) == kronecker(2, 7));
    CHECK(r_a(3, 3) == Rational(-1, 3));
    CHECK(s_a(2, 17) == 2);
    CHECK(r_a(2, 17) == 1 - (2 - s_a(2, 17)));
    // eta(2), eta(4), eta(8) = 1, 2, 0 for a = 5 mod 8
    CHECK(s_a(2, 5) == 1);
    CHECK(s_a(2, 3) == Rational(1, 2) * (eta_count(2, 3) + Rational(eta_count(4, 3), 2)) + Rational(eta_count(8, 3), 4));
    CHECK_THROWS(s_a(3, 17));
    CHECK_THROWS(s_a(2, 2));
}

TEST_CASE("omega_p against the table") {
    CHECK(omega_p(2, 17) == Rational(17, 128));
    CHECK(omega_p(3, 6) == rpow(3, -5) * 32 * (1 + Rational(5, 3)));
    CHECK(omega_p(5, 2) == rpow(5, -5) * 1024 * (1 + Rational(4, 5) + Rational(1, 25)));
    for (i64 a : {-5, -2, -1, 2, 3, 5, 6, 17})
        for (i64 p : primes_up_to(100)) CHECK(omega_p(p, a) == omega_p_table(p, a));
    CHECK_THROWS(omega_p_table(3, 12));
}

TEST_CASE("omega_p tends to 1") {
    for (i64 a : {-1, 12, 45})
        for (i64 p : primes_up_to(2000)) {
            if (2 * a % p == 0) continue;
            Rational w = omega_p(p, a);
            CHECK(w > 0);
            CHECK(abs(w - 1) <= Rational(7, p));
        }
}

TEST_CASE("p-adic oracle") {
    for (i64 a : {-4, 3, 8, 12, 18})
        for (i64 p : {2, 3, 5}) {
            auto bf = omega_p_bruteforce(p, a, valuation(p, 4 * a) + 8);
            CHECK(abs(omega_p(p, a) - bf.value) <= bf.tail_bound);
            CHECK(bf.provenance == Provenance::bruteforce);
        }
    auto d = omega_p_bruteforce_detail(3, 7, 6);
    CHECK(d.box + d.annulus <= omega_p(3, 7) + d.beyond);
    CHECK_THROWS(omega_p_bruteforce(2, 12, 3));
}

TEST_CASE("measure_squares") {
    CHECK(measure_squares(5, 4, 0, 1) == Rational(2, 5));
    CHECK(measure_squares(2, 17, 0, 3) == Rational(1, 2));
    for (int beta = -2; beta <= 2; ++beta)
        for (int k = 0; k <= 4; ++k) CHECK(measure_squares(3, 18, beta, k) == measure_squares_enumerated(3, 18, beta, k));
}

TEST_CASE("sum_kpk") {
    CHECK(sum_kpk(2, 0) == 2);
    double s = 0, q = 1;
    for (int k = 1; k <= 60; ++k) {
        q /= 3;
        if (k >= 2) s += k * q;
    }
    CHECK(std::abs(sum_kpk(3, 1).get_d() - s) < 1e-12);
    CHECK(sum_kpk(3, 5) < sum_kpk(3, 4));
}
