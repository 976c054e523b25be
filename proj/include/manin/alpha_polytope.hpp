#pragma once

// Exact volume of the polytope behind V0(B) = (vol / 3) B (log B)^4; vol = 3 alpha.

#include <array>
#include <cstdint>
#include <vector>

#include "manin/arith.hpp"

namespace manin {

using Vec4 = std::array<Rational, 4>;

struct Halfspace {
    Vec4 coeffs;  // coeffs . u <= rhs
    Rational rhs;
};

/// {u in R^4 : u >= 0, coeffs_i . u <= rhs_i}.
struct HPolytope {
    std::vector<Halfspace> inequalities;

    /// All constraints including the four nonnegativity ones.
    std::vector<Halfspace> all_constraints() const;
    bool contains(const Vec4& u) const;
};

HPolytope v0_polytope();
HPolytope unit_cube();
HPolytope standard_simplex();

/// Vertices from every 4-subset of facets, solved exactly. Throws if unbounded.
std::vector<Vec4> vertices(const HPolytope& P);
bool is_bounded(const HPolytope& P);

enum class PivotOrder { first, last };

/// Exact volume by recursive pulling triangulation with rational determinants.
Rational exact_volume(const HPolytope& P, PivotOrder order = PivotOrder::first);

struct MonteCarloEstimate {
    double value;
    double stderr_;
    std::uint64_t samples;
};

/// (1/3) int_{t >= 1, constraints} B / (t1 t2 t3 t4) dt, sampling t_i = B^{u_i}
/// (density proportional to 1/t_i on [1, B]).
MonteCarloEstimate v0_montecarlo(double B, std::uint64_t samples, std::uint64_t seed);

/// Hit-rate estimate of vol(P) within [0,1]^4.
MonteCarloEstimate volume_montecarlo(const HPolytope& P, std::uint64_t samples, std::uint64_t seed);

}  // namespace manin
