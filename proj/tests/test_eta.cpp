#include "doctest.h"
#include "manin/eta.hpp"

using namespace manin;

TEST_CASE("eta_bruteforce") {
    CHECK(eta_bruteforce(8, 17) == 4);
    CHECK(eta_bruteforce(3, 5) == 0);
    for (i64 a : {3, 15, 21}) CHECK(eta_bruteforce(3, a) == 1);
    CHECK(eta_bruteforce(24, 17) == 0);
    CHECK(eta_bruteforce(24, 17) == eta_bruteforce(8, 17) * eta_bruteforce(3, 17));
    CHECK_THROWS_AS(eta_bruteforce(5, 4), std::domain_error);
}

TEST_CASE("eta_closed") {
    CHECK(eta_closed(7, 3, 2) == 2);
    CHECK(eta_closed(3, 5, 18) == 0);
    CHECK(eta_closed(5, 1, 10) == 1);
    CHECK_THROWS_AS(eta_closed(3, 1, 9), std::domain_error);
}

TEST_CASE("eta is multiplicative") {
    CHECK(eta(1, -1) == 1);
    CHECK(eta(24, 17) == 0);
    // 5 * 13 * 17: -1 is a square modulo each, so 2^3 roots
    CHECK(eta(5 * 13 * 17, -1) == 8);
    for (i64 a : {-5, 3, 12, 18})
        for (i64 q = 1; q <= 300; ++q) CHECK(eta(q, a) == eta_bruteforce(q, a));
}

TEST_CASE("EtaContext memoises") {
    EtaContext ctx(12);
    CHECK(ctx(2, 5) == eta_closed(2, 5, 12));
    CHECK(ctx(2, 5) == eta_closed(2, 5, 12));
    CHECK(ctx(3, 0) == 1);
}

namespace {

// every residue modulo q g'/g, no pruning
i64 plain_count(i64 q, i64 a) {
    i64 g = gcd(q, a < 0 ? -a : a), gp = 1;
    for (auto [p, e] : factorize(g).factors) gp *= ipow(p, (e + 1) / 2);
    i64 m = q / g * gp, n = 0;
    for (i64 rho = 0; rho < m; ++rho)
        if (gcd(rho, m) == gp && ((rho * rho - a) % q + q) % q == 0) ++n;
    return n;
}

}  // namespace

TEST_CASE("pruned prime power enumeration matches plain enumeration") {
    for (i64 a : {-5, -4, -2, -1, 2, 3, 5, 6, 8, 12, 17, 18, 45})
        for (i64 p : {2, 3, 5, 7, 11})
            for (i64 q = p; q <= 20000; q *= p) {
                CAPTURE(a);
                CAPTURE(q);
                CHECK(eta_bruteforce(q, a) == plain_count(q, a));
            }
}
