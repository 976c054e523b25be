#include "manin/characters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <boost/math/special_functions/digamma.hpp>

#include "manin/eta.hpp"

namespace manin {

CharacterChi::CharacterChi(i64 a) : a_(a) {
    require_nonsquare(a);
    modulus_ = 8 * (a < 0 ? -a : a);
    table_.resize(static_cast<std::size_t>(modulus_));
    prefix_.assign(static_cast<std::size_t>(modulus_) + 1, 0);
    for (i64 r = 0; r < modulus_; ++r) {
        // r = 0 stands for n = modulus, which shares the factor 2 with 2a.
        table_[r] = gcd(r, 2 * a) == 1 ? kronecker(a, r) : 0;
    }
    for (i64 r = 1; r <= modulus_; ++r) prefix_[r] = prefix_[r - 1] + (*this)(r);
}

i64 CharacterChi::partial_sum(i64 x) const {
    if (x <= 0) return 0;
    return prefix_[static_cast<std::size_t>(x % modulus_)] + (x / modulus_) * prefix_.back();
}

i64 CharacterChi::max_abs_partial_sum() const {
    i64 m = 0;
    for (i64 v : prefix_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

constexpr i64 kChunk = 1 << 20;

double chunk_sum(const CharacterChi& chi, i64 lo, i64 hi) {
    // Kahan summation of chi(n)/n over lo <= n < hi.
    double s = 0, c = 0;
    for (i64 n = lo; n < hi; ++n) {
        int x = chi(n);
        if (x == 0) continue;
        double y = x / static_cast<double>(n) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double pairwise(std::vector<double> v) {
    if (v.empty()) return 0;
    while (v.size() > 1) {
        std::vector<double> w((v.size() + 1) / 2);
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : 0.0);
        v.swap(w);
    }
    return v[0];
}

}  // namespace

double CharacterChi::head_sum(i64 N) const {
    i64 chunks = (N + kChunk - 1) / kChunk;
    std::vector<double> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
    for (i64 c = 0; c < chunks; ++c) {
        i64 lo = 1 + c * kChunk;
        parts[c] = chunk_sum(*this, lo, std::min(lo + kChunk, N + 1));
    }
    return pairwise(std::move(parts));
}

double CharacterChi::head_sum_serial(i64 N) const {
    i64 chunks = (N + kChunk - 1) / kChunk;
    std::vector<double> parts(static_cast<std::size_t>(chunks));
    for (i64 c = 0; c < chunks; ++c) {
        i64 lo = 1 + c * kChunk;
        parts[c] = chunk_sum(*this, lo, std::min(lo + kChunk, N + 1));
    }
    return pairwise(std::move(parts));
}

EulerEstimate CharacterChi::L1(double tolerance, i64 max_terms) const {
    if (!(tolerance > 0)) throw std::domain_error("L1: tolerance must be positive");
    // With N a multiple of the period, A(N) = 0 and partial summation gives
    //   sum_{n>N} chi(n)/n = sum_{n>N} A(n)/(n(n+1)).
    // Split A = mean + D; the mean part sums to mean/(N+1) exactly, and since D has
    // zero mean over each period, |1/(x(x+1))'| <= 2/x^3 bounds the rest by
    //   max|D| * m * (m/N + 1/2) / N^2   (<= m/N).
    const double m = static_cast<double>(modulus_);
    double mean = 0;
    for (i64 r = 1; r <= modulus_; ++r) mean += static_cast<double>(prefix_[r]);
    mean /= m;
    double maxd = 0;
    for (i64 r = 1; r <= modulus_; ++r) maxd = std::max(maxd, std::abs(prefix_[r] - mean));

    auto bound_at = [&](i64 N) {
        double n = static_cast<double>(N);
        double rounding = 1e-15 * (std::log(n) + 4);
        return maxd * m * (m / n + 0.5) / (n * n) + rounding;
    };
    i64 N = modulus_;
    while (bound_at(N) > tolerance && 2 * N <= max_terms) N *= 2;
    EulerEstimate est;
    est.cut = N;
    est.value = head_sum(N) + mean / static_cast<double>(N + 1);
    est.bound = bound_at(N);
    if (est.bound > tolerance)
        throw ToleranceError("L1: tolerance unreachable within the term cap", est);
    return est;
}

double L1_digamma(const CharacterChi& chi) {
    const i64 m = chi.modulus();
    double s = 0;
    for (i64 r = 1; r <= m; ++r) {
        int x = chi(r);
        if (x != 0) s += x * boost::math::digamma(static_cast<double>(r) / static_cast<double>(m));
    }
    return -s / static_cast<double>(m);
}

}  // namespace manin
