#include "manin/torsor.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace manin {

namespace {

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i64 narrow(i128 x) {
    if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min())
        throw std::overflow_error("value exceeds 64 bits");
    return static_cast<i64>(x);
}

i128 cap_A(i64 a2, i64 a3, i64 a4, i64 a6) {
    return static_cast<i128>(a2) * a2 * a3 * a4 * a4 * a4 * a6;
}

}  // namespace

TorsorTuple TorsorTuple::complete(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, i64 a5, i64 a6, i64 a7) {
    if (a1 == 0) throw std::domain_error("complete: a1 = 0");
    i128 A = cap_A(a2, a3, a4, a6);
    i128 num = static_cast<i128>(a) * A * A - static_cast<i128>(a7) * a7;
    if (num % a1 != 0) throw std::domain_error("complete: a1 does not divide a A^2 - a7^2");
    return {{a1, a2, a3, a4, a5, a6, a7, narrow(num / a1)}};
}

ProjectivePoint ProjectivePoint::normalize(std::array<i128, 5> y) {
    i128 g = 0;
    for (i128 c : y) g = gcd128(g, c);
    if (g == 0) throw std::domain_error("normalize: zero vector");
    for (i128& c : y) c /= g;
    for (i128 c : y) {
        if (c == 0) continue;
        if (c < 0)
            for (i128& d : y) d = -d;
        break;
    }
    ProjectivePoint p;
    for (int i = 0; i < 5; ++i) p.x[i] = narrow(y[i]);
    return p;
}

i64 ProjectivePoint::height() const {
    i64 h = 0;
    for (i64 c : x) h = std::max(h, c < 0 ? -c : c);
    return h;
}

bool ProjectivePoint::on_surface(i64 a) const {
    i128 q1 = static_cast<i128>(x[0]) * x[4] + static_cast<i128>(x[1]) * x[1] - static_cast<i128>(a) * x[3] * x[3];
    i128 q2 = static_cast<i128>(x[2]) * x[3] - static_cast<i128>(x[4]) * x[4];
    return q1 == 0 && q2 == 0;
}

Validation validate(i64 a, const TorsorTuple& t) {
    for (int j = 1; j <= 6; ++j)
        if (t(j) == 0) return {false, "a" + std::to_string(j) + " = 0"};
    i128 A = cap_A(t(2), t(3), t(4), t(6));
    i128 eq = static_cast<i128>(t(1)) * t(8) + static_cast<i128>(t(7)) * t(7) - static_cast<i128>(a) * A * A;
    if (eq != 0) return {false, "torsor equation fails"};
    struct Cond {
        int j;
        std::vector<int> others;
    };
    static const Cond conds[] = {{8, {5}}, {7, {2, 3, 4}}, {6, {1, 2, 3, 5}}, {5, {2, 4}},
                                 {4, {1, 3}}, {3, {1}},      {2, {1}}};
    for (const auto& c : conds) {
        i128 prod = 1;
        for (int k : c.others) prod *= t(k);
        if (gcd128(t(c.j), prod) != 1) {
            std::string names;
            for (int k : c.others) names += "a" + std::to_string(k);
            return {false, "gcd(a" + std::to_string(c.j) + ", " + names + ") != 1"};
        }
    }
    return {true, ""};
}

ProjectivePoint psi(i64 a, const TorsorTuple& t) {
    auto val = validate(a, t);
    if (!val.ok) throw std::invalid_argument("psi: invalid tuple: " + val.reason);
    i128 a1 = t(1), a2 = t(2), a3 = t(3), a4 = t(4), a5 = t(5), a6 = t(6), a7 = t(7), a8 = t(8);
    return ProjectivePoint::normalize({
        a6 * a8,
        a2 * a3 * a4 * a5 * a6 * a7,
        a1 * a1 * a2 * a3 * a3 * a5 * a5 * a5,
        a2 * a2 * a2 * a3 * a3 * a4 * a4 * a4 * a4 * a5 * a6 * a6,
        a1 * a2 * a2 * a3 * a3 * a4 * a4 * a5 * a5 * a6,
    });
}

Rational height_tilde(i64 a, i64 a1, i64 a2, i64 a3, i64 a4, i64 a5, i64 a6, i64 a7) {
    if (a1 == 0) throw std::domain_error("height_tilde: a1 = 0");
    i128 A = cap_A(a2, a3, a4, a6);
    i128 num = abs128(static_cast<i128>(a6) * (static_cast<i128>(a) * A * A - static_cast<i128>(a7) * a7));
    i128 b1 = a1, b2 = a2, b3 = a3, b4 = a4, b5 = a5, b6 = a6, b7 = a7;
    i128 m[4] = {
        abs128(b2 * b3 * b4 * b5 * b6 * b7),
        abs128(b1 * b1 * b2 * b3 * b3 * b5 * b5 * b5),
        abs128(b2 * b2 * b2 * b3 * b3 * b4 * b4 * b4 * b4 * b5 * b6 * b6),
        abs128(b1 * b2 * b2 * b3 * b3 * b4 * b4 * b5 * b5 * b6),
    };
    auto to_q = [](i128 v) {
        mpz_class z;
        z = to_string(v);
        return Rational(z);
    };
    Rational h = to_q(num) / to_q(abs128(b1));
    for (i128 v : m) {
        Rational q = to_q(v);
        if (q > h) h = q;
    }
    return h;
}

Rational height_tilde(i64 a, const TorsorTuple& t) {
    return height_tilde(a, t(1), t(2), t(3), t(4), t(5), t(6), t(7));
}

SignVector sign_vector(unsigned mask) {
    SignVector u;
    for (int i = 0; i < 5; ++i) u[i] = (mask >> i) & 1u ? -1 : 1;
    return u;
}

const std::array<std::array<int, 5>, 8>& action_weights() {
    static const std::array<std::array<int, 5>, 8> m = {{
        {0, 0, 0, 0, 1},
        {0, 0, 1, -1, 0},
        {0, 1, -1, 0, 0},
        {0, 0, 0, 1, 0},
        {1, -1, 0, 0, -1},
        {1, -1, -1, -1, 0},
        {1, 0, 0, 0, 0},
        {2, 0, 0, 0, -1},
    }};
    return m;
}

TorsorTuple act(const SignVector& u, const TorsorTuple& t) {
    TorsorTuple out = t;
    const auto& m = action_weights();
    for (int j = 0; j < 8; ++j) {
        int s = 1;
        for (int i = 0; i < 5; ++i)
            if (u[i] == -1 && (m[j][i] & 1)) s = -s;
        out.v[j] *= s;
    }
    return out;
}

std::vector<TorsorTuple> orbit(const TorsorTuple& t) {
    std::vector<TorsorTuple> out;
    for (unsigned mask = 0; mask < 32; ++mask) out.push_back(act(sign_vector(mask), t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int weight_rank_mod2() {
    std::vector<unsigned> rows;
    for (int j = 0; j < 6; ++j) {
        unsigned r = 0;
        for (int i = 0; i < 5; ++i)
            if (action_weights()[j][i] & 1) r |= 1u << i;
        rows.push_back(r);
    }
    int rank = 0;
    for (int bit = 0; bit < 5; ++bit) {
        auto it = std::find_if(rows.begin() + rank, rows.end(), [bit](unsigned r) { return (r >> bit) & 1u; });
        if (it == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, it);
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (static_cast<int>(k) != rank && ((rows[k] >> bit) & 1u)) rows[k] ^= rows[rank];
        ++rank;
    }
    return rank;
}

}  // namespace manin
