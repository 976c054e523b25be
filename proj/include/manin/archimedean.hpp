#pragma once

// The real density omega_inf by two deterministic integrals and a Monte Carlo estimate,
// and the volume of S_F(a; B).

#include <cstdint>
#include <string>

#include "manin/arith.hpp"

namespace manin {

enum class IntegralMethod { region3d, chart2d, montecarlo };
std::string to_string(IntegralMethod m);

struct RegionIntegral {
    double value = 0;
    IntegralMethod method = IntegralMethod::region3d;
    double error_estimate = 0;
    double tolerance = 0;        // quadrature
    std::uint64_t samples = 0;   // Monte Carlo
};

/// max{|y6 (a y6^2 - y7^2)|, |y5 y6 y7|, |y5|^3, |y5 y6^2|, |y5^2 y6|}.
double N_inf(i64 a, double y5, double y6, double y7);

/// (3/2) vol{N <= 1}. The y7 and y5 integrals are done in closed form, leaving a 1-D
/// integral in y6 that is split at its kinks and integrated by adaptive Gauss-Kronrod.
RegionIntegral omega_inf_region(i64 a, double tolerance = 1e-10);

/// int dx1 dx3 / (|x3| max{|a x3^2 - x1^2|, |x1|, |x3|^-1, |x3|, 1}); the x1 integral is
/// piecewise elementary, the x3 integral is numerical.
RegionIntegral omega_inf_chart(i64 a, double tolerance = 1e-10);

/// Importance-sampled estimate of (3/2) vol{N <= 1}.
RegionIntegral omega_inf_montecarlo(i64 a, std::uint64_t samples, std::uint64_t seed);

/// Monte Carlo volume of {(x5, x6, x7) : N~(a1..a4, x5, x6, x7) <= B}.
RegionIntegral vol_SF(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, double B, std::uint64_t samples, std::uint64_t seed);

/// (2/3) omega_inf B / (a2 a3 a4), the closed formula for vol_SF over Q.
double vol_SF_formula(double omega_inf, i64 a2, i64 a3, i64 a4, double B);

}  // namespace manin
