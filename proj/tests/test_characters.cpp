#include <cmath>

#include "doctest.h"
#include "manin/characters.hpp"

using namespace manin;

TEST_CASE("chi values") {
    CharacterChi chi(-1);
    CHECK(chi.modulus() == 8);
    CHECK(chi(1) == 1);
    CHECK(chi(3) == -1);
    CHECK(chi(5) == 1);
    CHECK(chi(4) == 0);
    for (i64 a : {-5, 2, 6, 17, 45}) {
        CharacterChi c(a);
        for (i64 p : primes_up_to(300))
            if (2 * a % p != 0) CHECK(c(p) == kronecker(a, p));
    }
}

TEST_CASE("partial sums") {
    CharacterChi chi(-1);
    CHECK(chi.partial_sum(0) == 0);
    CHECK(chi.partial_sum(3) == 0);
    for (i64 a : {-5, 3, 12}) {
        CharacterChi c(a);
        CHECK(c.partial_sum(c.modulus()) == 0);
        CHECK(c.max_abs_partial_sum() <= 8 * std::abs(a));
    }
}

TEST_CASE("L1") {
    auto l = CharacterChi(-1).L1(1e-10);
    CHECK(std::abs(l.value - M_PI / 4) < 1e-8);
    CHECK(l.bound <= 1e-10);
    for (i64 a : {-5, -2, 2, 3, 5, 6, 12, 17, 45}) {
        CharacterChi c(a);
        auto e = c.L1(1e-10);
        CHECK(e.value > 0);
        CHECK(std::abs(e.value - L1_digamma(c)) < 1e-8);
    }
    // sqrt(2) log(1 + sqrt(2)) / 2 for the character of Q(sqrt 2)
    CHECK(std::abs(CharacterChi(2).L1(1e-11).value - std::sqrt(2.0) * std::log(1 + std::sqrt(2.0)) / 2) < 1e-9);
    CHECK_THROWS_AS(CharacterChi(-1).L1(1e-300, 1000), ToleranceError);
}

TEST_CASE("head_sum kernels agree") {
    CharacterChi c(-5);
    CHECK(c.head_sum(1'000'000) == c.head_sum_serial(1'000'000));
}
