// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "manin/alpha_polytope.hpp"
#include "manin/archimedean.hpp"
#include "manin/characters.hpp"
#include "manin/constant.hpp"
#include "manin/counting.hpp"
#include "manin/eta.hpp"
#include "manin/local_densities.hpp"
#include "manin/theta.hpp"
#include "manin/verify.hpp"

using namespace manin;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int n, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (t > limit_s) {
        o.pass = false;
        o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s budget)";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  [%.2f s] %s\n", n, o.pass ? "PASS" : "FAIL", t, o.detail.c_str());
    std::fflush(stdout);
}

template <class... T>
std::string str(const T&... x) {
    std::ostringstream os;
    os.precision(10);
    (os << ... << x);
    return os.str();
}

bool squarefree(i64 a) { return moebius(a < 0 ? -a : a) != 0; }

}  // namespace

int main() {
    criterion(1, 60, [] {
        int checks = 0;
        for (i64 a : testbed())
            for (i64 p : primes_up_to(53))
                for (int k = 1; k <= 10; ++k) {
                    ++checks;
                    i64 c = eta_closed(p, k, a), b = eta_bruteforce(ipow(p, k), a);
                    if (c != b) return Outcome{false, str("eta(", p, "^", k, "; ", a, "): closed ", c, " bruteforce ", b)};
                }
        return Outcome{true, str(checks, " values of eta equal")};
    });

    criterion(2, 10, [] {
        int checks = 0;
        for (i64 a : testbed()) {
            if (!squarefree(a)) continue;
            for (i64 p : primes_up_to(100)) {
                ++checks;
                if (omega_p(p, a) != omega_p_table(p, a)) return Outcome{false, str("omega_", p, "(", a, ") differs from the table")};
            }
        }
        return Outcome{true, str(checks, " densities equal the table")};
    });

    criterion(3, 120, [] {
        double worst = 0;
        for (i64 a : {-4, 3, 8, 12, 18})
            for (i64 p : {2, 3, 5}) {
                int vmax = valuation(p, 4 * a) + 8;
                auto bf = omega_p_bruteforce(p, a, vmax);
                Rational diff = abs(omega_p(p, a) - bf.value);
                if (diff > bf.tail_bound)
                    return Outcome{false, str("p=", p, " a=", a, ": |diff| ", diff.get_d(), " > bound ", bf.tail_bound.get_d())};
                // the annulus part of the bound is an exact sum; what is left must fit the envelope
                auto d = omega_p_bruteforce_detail(p, a, vmax);
                Rational rest = abs(omega_p(p, a) - d.box - d.annulus);
                if (rest > d.beyond) return Outcome{false, str("p=", p, " a=", a, ": residual above the envelope")};
                worst = std::max(worst, Rational(rest / d.beyond).get_d());
            }
        return Outcome{true, str("15 cases within the tail bound; residual beyond the exact annulus is at most ", worst,
                                 " of the envelope")};
    });

    criterion(4, 600, [] {
        std::vector<std::pair<i64, i64>> grid;
        for (i64 a : {-1, 2, 3, 5, -2, 6, 12})
            for (i64 B : {50, 200, 500}) grid.push_back({a, B});
        grid.push_back({-1, 1000});
        grid.push_back({5, 1000});
        for (auto [a, B] : grid) {
            i64 d = direct_count(a, Rational(B)).count, t = torsor_count(a, Rational(B)).count;
            if (d != t) return Outcome{false, str("a=", a, " B=", B, ": direct ", d, " torsor ", t)};
        }
        return Outcome{true, str(grid.size(), " (a, B) pairs, direct = torsor; N(-1, 1000) = ",
                                 direct_count(-1, Rational(1000)).count)};
    });

    criterion(5, 300, [] {
        auto seed = moebius_slice_check(-1, 1, 1, 1, 1, Rational(100));
        if (!seed.pass()) return Outcome{false, str("seed slice: lhs ", seed.lhs, " rhs ", seed.rhs)};
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> pa(0, testbed().size() - 1);
        std::uniform_int_distribution<i64> pi(1, 6), pB(1, 200);
        int done = 0;
        while (done < 100) {
            i64 a = testbed()[pa(rng)], a1 = pi(rng), a2 = pi(rng), a3 = pi(rng), a4 = pi(rng), B = pB(rng);
            if (theta0(a1, a2, a3, a4) != 1) continue;
            auto c = moebius_slice_check(a, a1, a2, a3, a4, Rational(B));
            if (!c.pass())
                return Outcome{false, str("a=", a, " slice ", a1, ",", a2, ",", a3, ",", a4, " B=", B, ": ", c.lhs, " vs ", c.rhs)};
            ++done;
        }
        return Outcome{true, str("seed slice ", seed.lhs, " = ", seed.rhs, "; 100 random slices equal")};
    });

    criterion(6, 120, [] {
        int checks = 0;
        for (i64 a : testbed())
            for (i64 p : primes_up_to(50))
                for (int m = 0; m < 256; ++m) {
                    ValuationPattern v{{m & 3, (m >> 2) & 3, (m >> 4) & 3, (m >> 6) & 3}};
                    ++checks;
                    if (!theta1_factor_identity(p, a, v).pass) return Outcome{false, str("p=", p, " a=", a, " pattern ", m)};
                }
        return Outcome{true, str(checks, " local factors equal")};
    });

    criterion(7, 30, [] {
        // The polytope {u >= 0, 2u1+u2+2u3 <= 1, -u1+4u2+2u3+6u4 <= 1} has volume 1/576 = 3 alpha;
        // the value 1/192 = 9 alpha asked for here is not attainable (see README, acceptance status).
        Rational vol = exact_volume(v0_polytope());
        auto hit = volume_montecarlo(v0_polytope(), 1'000'000, 7);
        double z1 = (hit.value - vol.get_d()) / hit.stderr_;
        double B = 1e6, L = std::log(B);
        auto v0 = v0_montecarlo(B, 1'000'000, 11);
        double z2 = (v0.value - vol.get_d() / 3 * B * L * L * L * L) / v0.stderr_;
        bool mc_ok = std::abs(z1) <= 3 && std::abs(z2) <= 3;
        bool ok = vol == Rational(1, 192) && mc_ok;
        return Outcome{ok, str("exact volume ", vol.get_str(), " (expected 1/192); vol = 3 alpha: ",
                               vol == 3 * Rational(1, 1728) ? "yes" : "no", "; Monte Carlo ", mc_ok ? "agrees" : "disagrees",
                               " with the exact volume: hit rate z = ", z1, ", V0(1e6) z = ", z2)};
    });

    criterion(8, 300, [] {
        double worst = 0;
        for (i64 a : {-2, -1, 2, 3, 5, 12}) {
            double r = omega_inf_region(a).value, c = omega_inf_chart(a).value;
            worst = std::max(worst, std::abs(r - c) / r);
        }
        double w1 = omega_inf_region(-1).value, w2 = omega_inf_region(2).value;
        auto s1 = vol_SF(-1, 1, 1, 1, 1, 1e4, 10'000'000, 81);
        auto s2 = vol_SF(2, 1, 2, 1, 1, 1e5, 10'000'000, 82);
        double d1 = s1.value / vol_SF_formula(w1, 1, 1, 1, 1e4) - 1;
        double d2 = s2.value / vol_SF_formula(w2, 2, 1, 1, 1e5) - 1;
        bool ok = worst <= 1e-3 && std::abs(d1) <= 0.02 && std::abs(d2) <= 0.02;
        return Outcome{ok, str("max region/chart rel diff ", worst, "; vol_SF rel dev ", d1, ", ", d2)};
    });

    criterion(9, 60, [] {
        double l = CharacterChi(-1).L1(1e-10).value;
        if (std::abs(l - M_PI / 4) > 1e-8) return Outcome{false, str("L1(-1) = ", l)};
        for (i64 a : testbed()) {
            CharacterChi chi(a);
            i64 A = 0, worst = 0;
            for (i64 x = 1; x <= 1'000'000; ++x) {
                A += chi(x);
                worst = std::max(worst, A < 0 ? -A : A);
            }
            if (worst > 8 * std::abs(a)) return Outcome{false, str("a=", a, ": max |A(x)| = ", worst)};
        }
        return Outcome{true, str("|L1(-1) - pi/4| = ", std::abs(l - M_PI / 4), "; partial sums bounded")};
    });

    criterion(10, 600, [] {
        std::string detail;
        bool ok = true;
        for (i64 a : {-1, 2}) {
            ConstantOptions opt;
            ConstantOptions twice = opt;
            twice.prime_cut *= 2;
            twice.mc_samples *= 2;
            auto b1 = predict_constant(a, opt), b2 = predict_constant(a, twice);
            double dc = std::abs(b2.c / b1.c - 1), dfp = std::abs(b2.finite_product.value / b1.finite_product.value - 1),
                   dmc = std::abs(b2.omega_inf_mc.value / b1.omega_inf_mc.value - 1);
            ok = ok && dc < 0.01 && dfp < 0.01 && dmc < 0.01;
            detail += str("a=", a, ": c=", b1.c, " drift ", dc, ", mc drift ", dmc, "; ratios");
            for (const auto& r : compare(a, {100, 1000, 10000}, b1)) {
                ok = ok && r.agree() && std::isfinite(r.ratio) && r.ratio > 0;
                detail += str(" ", r.B, ":", r.count_direct, "/", r.prediction, "=", r.ratio);
                if (!r.agree()) detail += str(" (torsor ", r.count_torsor, ")");
            }
            detail += "; ";
        }
        return Outcome{ok, detail};
    });

    std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
    return failures == 0 ? 0 : 1;
}
