#include <random>

#include "doctest.h"
#include "manin/torsor.hpp"

using namespace manin;

namespace {
TorsorTuple tup(i64 a1, i64 a2, i64 a3, i64 a4, i64 a5, i64 a6, i64 a7, i64 a8) { return {{a1, a2, a3, a4, a5, a6, a7, a8}}; }

// valid tuples with small entries
std::vector<TorsorTuple> sample(i64 a, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> d(-4, 4), d7(-40, 40);
    std::vector<TorsorTuple> out;
    while (static_cast<int>(out.size()) < n) {
        i64 x[7];
        for (int i = 0; i < 6; ++i) x[i] = d(rng);
        x[6] = d7(rng);
        if (x[0] == 0) continue;
        try {
            auto t = TorsorTuple::complete(a, x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
            if (validate(a, t).ok) out.push_back(t);
        } catch (const std::domain_error&) {
        }
    }
    return out;
}
}  // namespace

TEST_CASE("psi") {
    CHECK(psi(2, tup(1, 1, 1, 1, 1, 1, 0, 2)).x == std::array<i64, 5>{2, 0, 1, 1, 1});
    CHECK(psi(-1, tup(1, 1, 1, 1, 1, 1, 0, -1)) == ProjectivePoint::normalize({-1, 0, 1, 1, 1}));
    for (i64 a : {-1, 2, 12}) {
        auto x = psi(a, tup(1, 1, 1, 1, 1, 1, 1, a - 1));
        CHECK(x.on_surface(a));
        CHECK(x.in_U());
    }
    CHECK_THROWS_AS(psi(2, tup(1, 1, 1, 1, 1, 1, 0, 3)), std::invalid_argument);
}

TEST_CASE("height") {
    for (i64 a : {-5, -1, 3}) CHECK(height_tilde(a, 1, 1, 1, 1, 1, 1, 0) == std::max<i64>(std::abs(a), 1));
    CHECK_THROWS(height_tilde(2, 0, 1, 1, 1, 1, 1, 0));
    for (i64 a : {-2, 5}) {
        for (const auto& t : sample(a, 200, 11)) {
            auto x = psi(a, t);
            CHECK(x.on_surface(a));
            CHECK(Rational(x.height()) == height_tilde(a, t));
            for (unsigned m = 0; m < 32; ++m) {
                auto u = act(sign_vector(m), t);
                CHECK(validate(a, u).ok);
                CHECK(psi(a, u) == x);
                CHECK(height_tilde(a, u) == height_tilde(a, t));
            }
        }
    }
}

TEST_CASE("validate") {
    CHECK(validate(3, tup(1, 1, 1, 1, 1, 1, 0, 3)).ok);
    auto bad = validate(3, tup(2, 2, 1, 1, 1, 1, 0, 24));
    CHECK_FALSE(bad.ok);
    CHECK(bad.reason.rfind("gcd", 0) == 0);
    CHECK_FALSE(validate(3, tup(1, 1, 1, 1, 1, 1, 0, 4)).ok);
    CHECK_FALSE(validate(3, tup(1, 1, 1, 1, 0, 1, 0, 3)).ok);
}

TEST_CASE("sign action") {
    CHECK(weight_rank_mod2() == 5);
    auto t = tup(1, 1, 1, 1, 1, 1, 0, 3);
    CHECK(act(sign_vector(0), t) == t);
    for (i64 a : {-1, 6})
        for (const auto& s : sample(a, 50, 3)) {
            CHECK(orbit(s).size() == 32);
            for (unsigned m = 0; m < 32; ++m) CHECK(act(sign_vector(m), act(sign_vector(m), s)) == s);
        }
    CHECK_THROWS(TorsorTuple::complete(2, 3, 1, 1, 1, 1, 1, 1));
}
