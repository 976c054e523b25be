#pragma once

// Torsor coordinates (a1, ..., a8), the anticanonical map psi, the height and the sign action.

#include <array>
#include <string>
#include <vector>

#include "manin/arith.hpp"

namespace manin {

struct TorsorTuple {
    std::array<i64, 8> v{};

    /// 1-based access: t(1) is a1.
    i64& operator()(int j) { return v[static_cast<std::size_t>(j - 1)]; }
    i64 operator()(int j) const { return v[static_cast<std::size_t>(j - 1)]; }
    bool operator==(const TorsorTuple&) const = default;
    bool operator<(const TorsorTuple& o) const { return v < o.v; }

    /// Completes (a1..a7) with a8 = (a A^2 - a7^2)/a1, A = a2^2 a3 a4^3 a6. Throws if not integral.
    static TorsorTuple complete(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, i64 a5, i64 a6, i64 a7);
};

struct ProjectivePoint {
    std::array<i64, 5> x{};

    /// Divides by the gcd and makes the first nonzero coordinate positive.
    static ProjectivePoint normalize(std::array<i128, 5> y);
    i64 height() const;
    bool on_surface(i64 a) const;
    bool in_U() const { return x[4] != 0; }
    bool operator==(const ProjectivePoint&) const = default;
    bool operator<(const ProjectivePoint& o) const { return x < o.x; }
};

struct Validation {
    bool ok;
    std::string reason;
};

Validation validate(i64 a, const TorsorTuple& t);

/// Throws std::invalid_argument on an invalid tuple.
ProjectivePoint psi(i64 a, const TorsorTuple& t);

/// The five-monomial max; the first monomial is |a6 (a A^2 - a7^2) / a1|.
Rational height_tilde(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, i64 a5, i64 a6, i64 a7);
Rational height_tilde(i64 a, const TorsorTuple& t);

using SignVector = std::array<int, 5>;

SignVector sign_vector(unsigned mask);
/// Degree vectors m^(1), ..., m^(8) in Pic = Z^5.
const std::array<std::array<int, 5>, 8>& action_weights();
TorsorTuple act(const SignVector& u, const TorsorTuple& t);
std::vector<TorsorTuple> orbit(const TorsorTuple& t);

/// Rank over F_2 of m^(1), ..., m^(6); 5 means the action on a1..a6 != 0 is free.
int weight_rank_mod2();

}  // namespace manin
