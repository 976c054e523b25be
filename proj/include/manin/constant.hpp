#pragma once

// The predicted leading constant c_{S_a,H} over Q, and the comparison with point counts.

#include <cstdint>
#include <vector>

#include "manin/archimedean.hpp"
#include "manin/arith.hpp"
#include "manin/characters.hpp"
#include "manin/counting.hpp"
#include "manin/local_densities.hpp"

namespace manin {

/// The invariants entering the field factor rho_K^5 / |disc_K|. Only Q can be built.
struct NumberFieldInvariants {
    int r1 = 1;
    int r2 = 0;
    i64 h = 1;
    double R = 1;
    int mu_order = 2;
    i64 disc = 1;

    static NumberFieldInvariants rationals() { return {}; }
    /// 2^r1 (2 pi)^r2 R h / (|mu| sqrt|disc|).
    double rho() const;
    /// rho^5 / |disc|.
    double field_factor() const;
};

/// prod_p omega_p, accelerated by L(1, chi): the product over p | 2a is exact, the
/// remaining factors omega_p (1 - chi(p)/p) are 1 + O(1/p^2). The bound is
/// 2 |F(2P) - F(P)| plus the propagated L(1, chi) bound.
EulerEstimate finite_product(i64 a, i64 prime_cut, double l1_tolerance = 1e-10);

/// The plain partial product prod_{p <= P} omega_p, which converges only conditionally.
double naive_partial_product(i64 a, i64 P);
/// Mean of the plain partial products over the primes in (P/2, P].
double naive_product_cesaro(i64 a, i64 P);

struct ConstantOptions {
    i64 prime_cut = 1'000'000;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
};

struct ConstantBreakdown {
    i64 a = 0;
    Rational alpha;
    NumberFieldInvariants field;
    double field_factor = 1;
    RegionIntegral omega_inf;        // region method, used in c
    RegionIntegral omega_inf_chart;  // independent check
    RegionIntegral omega_inf_mc;
    std::vector<LocalDensity> bad_primes;  // p | 2a
    EulerEstimate L1_chi;
    EulerEstimate finite_product;
    double c = 0;
    double c_bound = 0;  // from the quadrature and truncation bounds
};

ConstantBreakdown predict_constant(i64 a, const ConstantOptions& opt = {});

struct CompareRow {
    i64 B = 0;
    i64 count_direct = 0;
    i64 count_torsor = 0;
    double prediction = 0;  // c B (log B)^4
    double ratio = 0;       // count / prediction
    bool agree() const { return count_direct == count_torsor; }
};

std::vector<CompareRow> compare(i64 a, const std::vector<i64>& B_list, const ConstantBreakdown& c);
std::vector<CompareRow> compare(i64 a, const std::vector<i64>& B_list, const ConstantOptions& opt = {});

}  // namespace manin
