#include "doctest.h"
#include "manin/arith.hpp"

using namespace manin;

TEST_CASE("factorize") {
    CHECK(factorize(12).factors == std::vector<std::pair<i64, int>>{{2, 2}, {3, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(2147483647).factors == std::vector<std::pair<i64, int>>{{2147483647, 1}});
    CHECK(factorize(-360).value() == 360);
    CHECK(factorize(999999000001LL * 3).factors.size() == 2);
    CHECK_THROWS_AS(factorize(0), std::domain_error);
    CHECK(factorize_cached(720720) == factorize(720720));
}

TEST_CASE("factorize agrees with trial division") {
    for (i64 n = 2; n < 3000; ++n) {
        i64 m = n, prod = 1;
        for (auto [p, e] : factorize(n).factors) {
            CHECK(is_prime(static_cast<u64>(p)));
            prod *= ipow(p, e);
        }
        CHECK(prod == m);
    }
}

TEST_CASE("primes and moebius") {
    auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    CHECK(ps.back() == 97);
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(30) == -1);
    CHECK(is_prime(1000000007ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("kronecker") {
    CHECK(kronecker(5, 11) == 1);
    CHECK(kronecker(-1, 3) == -1);
    CHECK(kronecker(21, 7) == 0);
    CHECK(kronecker(17, 2) == 1);
    CHECK(kronecker(5, 2) == -1);
    // Euler's criterion on odd primes
    for (i64 p : primes_up_to(200)) {
        if (p == 2) continue;
        for (i64 a = -30; a <= 30; ++a) {
            i64 e = powmod(mod(a, p), (p - 1) / 2, p);
            int expect = e == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, p) == expect);
        }
    }
}

TEST_CASE("valuation, gcd, roots") {
    CHECK(valuation(2, i64{12}) == 2);
    CHECK(valuation(3, i64{10}) == 0);
    CHECK(valuation(2, i64{1024 * 7}) == 10);
    CHECK(gcd(-12, 18) == 6);
    CHECK(lcm(4, 6) == 12);
    CHECK(isqrt(static_cast<u128>(99)) == 9);
    CHECK(isqrt_ceil(static_cast<u128>(99)) == 10);
    CHECK(isqrt(static_cast<u128>(1) << 100) == (1ULL << 50));
    CHECK(is_square(49));
    CHECK_FALSE(is_square(-4));
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod(-7, 5) == 3);
    CHECK(to_string(static_cast<i128>(-1234567890123456789LL) * 1000) == "-1234567890123456789000");
}

TEST_CASE("crt") {
    auto c = crt({{0, 4}, {2, 6}});
    REQUIRE(c);
    CHECK(c->r == 8);
    CHECK(c->m == 12);
    CHECK_FALSE(crt({{1, 2}, {0, 2}}));
    auto s = crt({{3, 5}});
    REQUIRE(s);
    CHECK(s->r == 3);
    CHECK(s->m == 5);
}

TEST_CASE("rpow") {
    CHECK(rpow(2, -3) == Rational(1, 8));
    CHECK(rpow(3, 2) == 9);
}
