#include <cmath>

#include "doctest.h"
#include "manin/archimedean.hpp"

using namespace manin;

TEST_CASE("N_inf") {
    for (i64 a : {-5, 2, 12}) {
        CHECK(N_inf(a, 1, 1, 0) == doctest::Approx(std::max<double>(std::abs(a), 1)));
        CHECK(N_inf(a, 0, 0, 0) == 0);
        CHECK(N_inf(a, 0.3, -1.2, 0.7) == N_inf(a, 0.3, -1.2, -0.7));
    }
}

TEST_CASE("region and chart agree") {
    for (i64 a : {-2, -1, 2, 3, 5, 12}) {
        auto r = omega_inf_region(a);
        auto c = omega_inf_chart(a);
        CHECK(r.error_estimate > 0);
        CHECK(c.error_estimate > 0);
        CHECK(std::abs(r.value - c.value) <= 1e-3 * r.value);
        CHECK(std::abs(r.value - c.value) <= r.error_estimate + c.error_estimate);
    }
    CHECK(std::abs(omega_inf_region(-1).value - omega_inf_region(-4).value) > 1e-3);
    CHECK_THROWS(omega_inf_region(4));
    CHECK_THROWS(omega_inf_chart(-1, 0));
}

TEST_CASE("Monte Carlo omega_inf") {
    for (i64 a : {-1, 2, 5}) {
        auto m = omega_inf_montecarlo(a, 1'000'000, 100 + a);
        double exact = omega_inf_region(a).value;
        CHECK(m.samples == 1'000'000);
        CHECK(std::abs(m.value - exact) <= 3 * m.error_estimate);
        auto again = omega_inf_montecarlo(a, 1'000'000, 100 + a);
        CHECK(again.value == m.value);
    }
}

TEST_CASE("vol_SF") {
    double w = omega_inf_region(-1).value;
    auto v = vol_SF(-1, 1, 1, 1, 1, 1e4, 2'000'000, 7);
    CHECK(std::abs(v.value / vol_SF_formula(w, 1, 1, 1, 1e4) - 1) < 0.02);
    auto v2 = vol_SF(-1, 1, 1, 1, 1, 2e4, 2'000'000, 8);
    CHECK(std::abs(v2.value - 2 * v.value) <= 4 * std::hypot(v2.error_estimate, 2 * v.error_estimate));
    auto v3 = vol_SF(-1, 3, 1, 1, 1, 1e4, 2'000'000, 9);
    CHECK(std::abs(v3.value - v.value) <= 4 * std::hypot(v3.error_estimate, v.error_estimate));
    double w2 = omega_inf_region(2).value;
    auto u = vol_SF(2, 1, 2, 1, 1, 1e5, 2'000'000, 10);
    CHECK(std::abs(u.value / vol_SF_formula(w2, 2, 1, 1, 1e5) - 1) < 0.02);
}
