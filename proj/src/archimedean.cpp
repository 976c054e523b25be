#include "manin/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "manin/eta.hpp"

namespace manin {

std::string to_string(IntegralMethod m) {
    switch (m) {
        case IntegralMethod::region3d: return "region3d";
        case IntegralMethod::chart2d: return "chart2d";
        case IntegralMethod::montecarlo: return "montecarlo";
    }
    return "?";
}

double N_inf(i64 a, double y5, double y6, double y7) {
    double ad = static_cast<double>(a);
    return std::max({std::abs(y6 * (ad * y6 * y6 - y7 * y7)), std::abs(y5 * y6 * y7), std::abs(y5 * y5 * y5),
                     std::abs(y5 * y6 * y6), std::abs(y5 * y5 * y6)});
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_0^{min(1, y^-2)} dy5 of the y7-length of {N <= 1} at (y5, y6 = y), y5, y6 > 0.
double region_inner(double a, double y) {
    const double hi2 = a * y * y + 1 / y;
    if (hi2 <= 0) return 0;
    const double lo2 = std::max(0.0, a * y * y - 1 / y);
    const double sh = std::sqrt(hi2), sl = std::sqrt(lo2);
    const double Y = std::min(1.0, 1 / (y * y));
    const double t1 = 1 / (y * sh);        // y5 where |y5 y6 y7| <= 1 starts to cut at y7 = sh
    const double width = (hi2 - lo2) / (sh + sl);
    if (Y <= t1) return 2 * width * Y;
    if (sl > 0 && 1 / (y * sl) <= Y) return std::log1p((hi2 - lo2) / lo2) / y;
    return 2 * (width * t1 + std::log(Y * sh * y) / y - sl * (Y - t1));
}

// Sign changes of f on a logarithmic grid, refined by bisection.
template <class F>
void add_roots(F f, double lo, double hi, std::vector<double>& out) {
    const int n = 4000;
    double prev_x = lo, prev = f(lo);
    for (int i = 1; i <= n; ++i) {
        double x = lo * std::pow(hi / lo, static_cast<double>(i) / n);
        double v = f(x);
        if ((prev < 0) != (v < 0)) {
            double l = prev_x, r = x;
            for (int it = 0; it < 200 && r - l > 1e-15 * r; ++it) {
                double m = 0.5 * (l + r);
                if ((f(m) < 0) == (prev < 0))
                    l = m;
                else
                    r = m;
            }
            out.push_back(0.5 * (l + r));
        }
        prev_x = x;
        prev = v;
    }
}

double antideriv_inv_x2_minus_k(double k, double x) {
    if (k > 0) {
        double s = std::sqrt(k);
        if (std::isinf(x)) return 0;
        // log|x - s| - log(x + s), written to stay accurate when s is tiny
        double r = x > s ? std::log1p(-2 * s / (x + s)) : std::log1p(-2 * x / (x + s));
        return r / (2 * s);
    }
    double s = std::sqrt(-k);
    if (std::isinf(x)) return M_PI / (2 * s);
    return std::atan(x / s) / s;
}

// int_0^inf dx / max(|k - x^2|, x, c0) with c0 >= 1.
double chart_inner(double k, double c0) {
    std::vector<double> b{c0};
    auto push_pos = [&](double x) {
        if (x > 0 && std::isfinite(x)) b.push_back(x);
    };
    if (1 + 4 * k >= 0) {
        push_pos((1 + std::sqrt(1 + 4 * k)) / 2);
        push_pos((-1 + std::sqrt(1 + 4 * k)) / 2);
    }
    if (k + c0 > 0) push_pos(std::sqrt(k + c0));
    if (k - c0 > 0) push_pos(std::sqrt(k - c0));
    if (k > 0) push_pos(std::sqrt(k));
    b.push_back(0);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    b.push_back(kInf);
    double total = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        double l = b[i], r = b[i + 1];
        double mid = std::isinf(r) ? 2 * l + 1 : 0.5 * (l + r);
        double f1 = std::abs(k - mid * mid), f2 = mid;
        if (f1 >= f2 && f1 >= c0) {
            double sgn = mid * mid > k ? 1 : -1;
            if (k < 0) {
                // atan(r/s) - atan(l/s) in one step, since both are close to pi/2 when s is tiny
                double s = std::sqrt(-k);
                total += (std::isinf(r) ? std::atan2(s, l) : std::atan2(s * (r - l), s * s + l * r)) / s;
            } else {
                total += sgn * (antideriv_inv_x2_minus_k(k, r) - antideriv_inv_x2_minus_k(k, l));
            }
        } else if (f2 >= c0) {
            if (std::isinf(r)) throw std::logic_error("chart_inner: 1/x tail");
            total += std::log(r / l);
        } else {
            if (std::isinf(r)) throw std::logic_error("chart_inner: constant tail");
            total += (r - l) / c0;
        }
    }
    return total;
}

void require_tolerance(double tolerance) {
    if (!(tolerance > 0)) throw std::domain_error("tolerance must be positive");
}

// Piecewise adaptive Gauss-Kronrod with two rule orders; the error estimate is the larger
// of the reported error and the difference between the orders.
template <class F>
std::pair<double, double> integrate_pieces(F g, const std::vector<double>& cuts, double tolerance) {
    using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;
    using GK61 = boost::math::quadrature::gauss_kronrod<double, 61>;
    double v31 = 0, v61 = 0, err = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-14) continue;
        double e = 0;
        v31 += GK31::integrate(g, cuts[i], cuts[i + 1], 15, tolerance, &e);
        v61 += GK61::integrate(g, cuts[i], cuts[i + 1], 15, tolerance, &e);
        err += e;
    }
    return {v61, std::max(err, std::abs(v61 - v31))};
}

}  // namespace

RegionIntegral omega_inf_region(i64 a, double tolerance) {
    require_nonsquare(a);
    require_tolerance(tolerance);
    const double ad = static_cast<double>(a);
    auto f = [ad](double y) { return region_inner(ad, y); };

    std::vector<double> br{1.0};
    br.push_back(std::cbrt(1 / std::abs(ad)));
    auto sh = [ad](double y) { return std::sqrt(std::max(0.0, ad * y * y + 1 / y)); };
    auto sl = [ad](double y) { return std::sqrt(std::max(0.0, ad * y * y - 1 / y)); };
    add_roots([&](double y) { return y * sh(y) * std::min(1.0, 1 / (y * y)) - 1; }, 1e-8, 1e8, br);
    if (a > 0) add_roots([&](double y) { return y * sl(y) * std::min(1.0, 1 / (y * y)) - 1; }, 1e-8, 1e8, br);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    // for a < 0 the integrand vanishes beyond |a|^(-1/3)
    double end = a < 0 ? std::cbrt(1 / std::abs(ad)) : kInf;

    // integrate in t = log y between consecutive kinks; f(e^t) e^t decays like e^(t/2) and e^(-3t)
    auto g = [&](double t) {
        double y = std::exp(t);
        return f(y) * y;
    };
    std::vector<double> pts{-80.0};
    for (double x : br)
        if (x < end) pts.push_back(std::log(x));
    pts.push_back(std::isinf(end) ? 25.0 : std::log(end));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto [value, err] = integrate_pieces(g, pts, tolerance);
    if (!std::isfinite(value)) throw std::runtime_error("omega_inf_region: quadrature did not converge");
    RegionIntegral r;
    r.method = IntegralMethod::region3d;
    r.value = 6 * value;
    r.error_estimate = 6 * err + 1e-15 * r.value;
    r.tolerance = tolerance;
    return r;
}

RegionIntegral omega_inf_chart(i64 a, double tolerance) {
    require_nonsquare(a);
    require_tolerance(tolerance);
    const double ad = static_cast<double>(a);
    auto J = [ad](double x3) { return chart_inner(ad * x3 * x3, std::max(x3, 1 / x3)); };
    // x3 = e^t: J(e^t) decays like e^(t/2) as t -> -inf and like t e^(-t) as t -> inf
    auto g = [&](double t) { return J(std::exp(t)); };
    // J has kinks where the piece structure of the x1 integral changes
    std::vector<double> kinks;
    for (double s : {-1.0, 0.0, 1.0}) {
        add_roots([&](double x) { double c = std::max(x, 1 / x); return ad * x * x - c * c - s * c; }, 1e-26, 1e11, kinks);
        add_roots([&](double x) { double c = std::max(x, 1 / x); return ad * x * x - s * c; }, 1e-26, 1e11, kinks);
    }
    add_roots([&](double x) { return 4 * ad * x * x + 1; }, 1e-26, 1e11, kinks);
    std::vector<double> cuts{-60.0, 0.0, 25.0};
    for (double x : kinks)
        if (std::log(x) > -60 && std::log(x) < 25) cuts.push_back(std::log(x));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto [value, e2] = integrate_pieces(g, cuts, tolerance);
    if (!std::isfinite(value)) throw std::runtime_error("omega_inf_chart: quadrature did not converge");
    RegionIntegral res;
    res.method = IntegralMethod::chart2d;
    res.value = 4 * value;
    res.error_estimate = 4 * e2 + 1e-15 * res.value;
    res.tolerance = tolerance;
    return res;
}

namespace {

struct Moments {
    double sum = 0, sumsq = 0;
};

// Independent batches with seeds (seed, batch); sums combined pairwise in batch order.
template <class Sample>
Moments run_batches(std::uint64_t samples, std::uint64_t seed, Sample sample) {
    const std::uint64_t batch = 1 << 16;
    const std::int64_t nb = static_cast<std::int64_t>((samples + batch - 1) / batch);
    std::vector<Moments> parts(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(b)};
        std::mt19937_64 rng(ss);
        std::uint64_t n = std::min<std::uint64_t>(batch, samples - static_cast<std::uint64_t>(b) * batch);
        Moments m;
        for (std::uint64_t i = 0; i < n; ++i) {
            double w = sample(rng);
            m.sum += w;
            m.sumsq += w * w;
        }
        parts[static_cast<std::size_t>(b)] = m;
    }
    for (std::size_t width = 1; width < parts.size(); width *= 2)
        for (std::size_t i = 0; i + width < parts.size(); i += 2 * width) {
            parts[i].sum += parts[i + width].sum;
            parts[i].sumsq += parts[i + width].sumsq;
        }
    return parts.empty() ? Moments{} : parts[0];
}

RegionIntegral finish(const Moments& m, std::uint64_t samples, IntegralMethod method) {
    double n = static_cast<double>(samples);
    double mean = m.sum / n;
    double var = std::max(0.0, m.sumsq / n - mean * mean);
    RegionIntegral r;
    r.method = method;
    r.value = mean;
    r.error_estimate = std::sqrt(var / n);
    r.samples = samples;
    return r;
}

}  // namespace

RegionIntegral omega_inf_montecarlo(i64 a, std::uint64_t samples, std::uint64_t seed) {
    require_nonsquare(a);
    if (samples == 0) throw std::domain_error("omega_inf_montecarlo: no samples");
    const double ad = static_cast<double>(a);
    auto sample = [a, ad](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double y5 = 1 - U(rng);  // (0, 1]
        double u = U(rng);
        double r = u / (1 - u);
        double y6 = r * r;
        if (y6 <= 0) return 0.0;
        double jac6 = 2 * r / ((1 - u) * (1 - u));  // dy6/du
        double hi2 = ad * y6 * y6 + 1 / y6;
        if (hi2 <= 0) return 0.0;
        double sh = std::sqrt(hi2);
        double y7 = sh * (2 * U(rng) - 1);
        if (N_inf(a, y5, y6, y7) > 1) return 0.0;
        // (3/2) * 4 sign classes of (y5, y6) * 2 sh * jac6
        return 6.0 * 2 * sh * jac6;
    };
    return finish(run_batches(samples, seed, sample), samples, IntegralMethod::montecarlo);
}

RegionIntegral vol_SF(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, double B, std::uint64_t samples, std::uint64_t seed) {
    require_nonsquare(a);
    if (!(B > 0)) throw std::domain_error("vol_SF: B must be positive");
    if (a1 < 1 || a2 < 1 || a3 < 1 || a4 < 1) throw std::domain_error("vol_SF: a1..a4 must be positive");
    if (samples == 0) throw std::domain_error("vol_SF: no samples");
    const double d1 = static_cast<double>(a1), d2 = static_cast<double>(a2), d3 = static_cast<double>(a3),
                 d4 = static_cast<double>(a4);
    const double c = static_cast<double>(a) * std::pow(d2, 4) * d3 * d3 * std::pow(d4, 6);
    const double X5 = std::cbrt(B / (d1 * d1 * d2 * d3 * d3));
    if (!(X5 > 0) || !std::isfinite(X5)) throw std::domain_error("vol_SF: degenerate sampling box");
    auto height = [=](double x5, double x6, double x7) {
        return std::max({std::abs(x6 * (c * x6 * x6 - x7 * x7)) / d1, std::abs(d2 * d3 * d4 * x5 * x6 * x7),
                         d1 * d1 * d2 * d3 * d3 * std::abs(x5 * x5 * x5),
                         d2 * d2 * d2 * d3 * d3 * std::pow(d4, 4) * std::abs(x5) * x6 * x6,
                         d1 * d2 * d2 * d3 * d3 * d4 * d4 * x5 * x5 * std::abs(x6)});
    };
    auto sample = [=](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> U(0.0, 1.0);
        // |x5| = X5 w^2 with density 1/(4 X5 w) per sign
        double w = 1 - U(rng);
        double x5 = X5 * w * w * (U(rng) < 0.5 ? -1 : 1);
        double ax5 = std::abs(x5);
        double X6 = std::min(std::sqrt(B / (d2 * d2 * d2 * d3 * d3 * std::pow(d4, 4) * ax5)),
                             B / (d1 * d2 * d2 * d3 * d3 * d4 * d4 * ax5 * ax5));
        double x6 = X6 * (2 * U(rng) - 1);
        if (x6 == 0) return 0.0;
        double ax6 = std::abs(x6);
        double hi2 = c * x6 * x6 + B * d1 / ax6;
        if (hi2 <= 0) return 0.0;
        double lo2 = std::max(0.0, c * x6 * x6 - B * d1 / ax6);
        double sh = std::sqrt(hi2), sl = std::sqrt(lo2);
        double x7 = (sl + (sh - sl) * U(rng)) * (U(rng) < 0.5 ? -1 : 1);
        if (height(x5, x6, x7) > B) return 0.0;
        return 4 * X5 * w * 2 * X6 * 2 * (sh - sl);
    };
    return finish(run_batches(samples, seed, sample), samples, IntegralMethod::montecarlo);
}

double vol_SF_formula(double omega_inf, i64 a2, i64 a3, i64 a4, double B) {
    return 2.0 / 3.0 * omega_inf * B / static_cast<double>(a2 * a3 * a4);
}

}  // namespace manin
