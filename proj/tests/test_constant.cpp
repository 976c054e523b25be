#include <cmath>

#include "doctest.h"
#include "manin/constant.hpp"

using namespace manin;

TEST_CASE("field invariants of Q") {
    auto q = NumberFieldInvariants::rationals();
    CHECK(q.r1 == 1);
    CHECK(q.r2 == 0);
    CHECK(q.mu_order == 2);
    CHECK(q.rho() == 1);
    CHECK(q.field_factor() == 1);
}

TEST_CASE("finite product") {
    for (i64 a : {-1, 2, 12, -5}) {
        auto f1 = finite_product(a, 100'000);
        auto f2 = finite_product(a, 200'000);
        CHECK(f1.value > 0);
        CHECK(std::abs(f1.value - f2.value) <= f1.bound);
    }
    CHECK_THROWS(finite_product(-1, 50));
}

TEST_CASE("naive product converges to the same value") {
    for (i64 a : {-1, 5}) {
        double accel = finite_product(a, 1'000'000).value;
        CHECK(std::abs(naive_product_cesaro(a, 10'000'000) / accel - 1) < 1e-3);
        CHECK(std::abs(naive_partial_product(a, 10'000'000) / accel - 1) < 1e-2);
    }
}

TEST_CASE("predict_constant") {
    ConstantOptions opt;
    opt.prime_cut = 200'000;
    opt.mc_samples = 200'000;
    auto b = predict_constant(-1, opt);
    CHECK(b.alpha == Rational(1, 1728));
    CHECK(b.field_factor == 1);
    CHECK(b.c == doctest::Approx(b.omega_inf.value * b.finite_product.value / 1728).epsilon(1e-12));
    REQUIRE(b.bad_primes.size() == 1);
    CHECK(b.bad_primes[0].p == 2);
    CHECK(b.bad_primes[0].value == omega_p_table(2, -1));
    CHECK(std::abs(b.omega_inf.value - b.omega_inf_chart.value) < 1e-6);
    CHECK(b.L1_chi.value == doctest::Approx(M_PI / 4).epsilon(1e-10));

    ConstantOptions twice = opt;
    twice.prime_cut *= 2;
    twice.mc_samples *= 2;
    auto d = predict_constant(-1, twice);
    CHECK(std::abs(d.c / b.c - 1) < 0.01);
    CHECK(std::abs(d.omega_inf_mc.value / b.omega_inf_mc.value - 1) < 0.01);
    auto e = predict_constant(-1, opt);
    CHECK(e.omega_inf_mc.value == b.omega_inf_mc.value);
}

TEST_CASE("compare") {
    ConstantOptions opt;
    opt.prime_cut = 100'000;
    opt.mc_samples = 10'000;
    auto rows = compare(3, {100, 200, 400, 800, 1600}, opt);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].agree());
        CHECK(rows[i].ratio > 0);
        CHECK(std::isfinite(rows[i].ratio));
        if (i > 0) CHECK(std::abs(rows[i].ratio / rows[i - 1].ratio - 1) < 0.5);
    }
}
