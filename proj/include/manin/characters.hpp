#pragma once

// The quadratic character n -> (a/n) on integers coprime to 2a, and L(1, chi).

#include <stdexcept>
#include <string>
#include <vector>

#include "manin/arith.hpp"

namespace manin {

/// Value, truncation bound and cut parameter of a truncated series or product.
struct EulerEstimate {
    double value = 0;
    double bound = 0;
    i64 cut = 0;
};

/// Raised when a requested tolerance cannot be met; carries the best estimate.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, EulerEstimate best)
        : std::runtime_error(what), best_(best) {}
    const EulerEstimate& best() const { return best_; }

private:
    EulerEstimate best_;
};

class CharacterChi {
public:
    explicit CharacterChi(i64 a);

    i64 a() const { return a_; }
    i64 modulus() const { return modulus_; }
    int operator()(i64 n) const { return table_[static_cast<std::size_t>(mod(n, modulus_))]; }
    const std::vector<int>& period() const { return table_; }

    /// A(x) = sum_{1 <= n <= x} chi(n).
    i64 partial_sum(i64 x) const;
    i64 max_abs_partial_sum() const;

    /// L(1, chi) by period-blocked summation plus an Abel tail correction.
    EulerEstimate L1(double tolerance, i64 max_terms = 4'000'000'000LL) const;

    /// sum_{n <= N} chi(n)/n; the parallel and serial kernels agree bitwise.
    double head_sum(i64 N) const;
    double head_sum_serial(i64 N) const;

private:
    i64 a_;
    i64 modulus_;
    std::vector<int> table_;
    std::vector<i64> prefix_;  // prefix_[r] = A(r) for 0 <= r <= modulus
};

/// Independent value of L(1, chi) from -(1/m) sum_r chi(r) digamma(r/m).
double L1_digamma(const CharacterChi& chi);

}  // namespace manin
