#include "manin/alpha_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace manin {

namespace {

Halfspace hs(std::array<i64, 4> c, i64 rhs) {
    return {{Rational(c[0]), Rational(c[1]), Rational(c[2]), Rational(c[3])}, Rational(rhs)};
}

Rational dot(const Vec4& a, const Vec4& b) {
    Rational s = 0;
    for (int i = 0; i < 4; ++i) s += a[i] * b[i];
    return s;
}

// Rank of a list of row vectors of length n.
int rank_of(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    std::size_t n = rows[0].size();
    int rank = 0;
    for (std::size_t col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

Rational det(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return d;
}

// Solves the 4x4 system rows . u = rhs; nullopt if singular.
std::optional<Vec4> solve4(const std::array<const Halfspace*, 4>& rows) {
    std::vector<std::vector<Rational>> m(4, std::vector<Rational>(5));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m[i][j] = rows[i]->coeffs[j];
        m[i][4] = rows[i]->rhs;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        while (piv < 4 && m[piv][col] == 0) ++piv;
        if (piv == 4) return std::nullopt;
        std::swap(m[piv], m[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    Vec4 u;
    for (int i = 0; i < 4; ++i) u[i] = m[i][4] / m[i][i];
    return u;
}

int affine_rank(const std::vector<Vec4>& pts, const std::vector<int>& idx) {
    if (idx.size() <= 1) return 0;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        std::vector<Rational> r(4);
        for (int j = 0; j < 4; ++j) r[j] = pts[idx[i]][j] - pts[idx[0]][j];
        rows.push_back(std::move(r));
    }
    return rank_of(std::move(rows));
}

struct Triangulator {
    const std::vector<Vec4>& verts;
    const std::vector<std::uint32_t>& tight;  // tight-constraint mask per vertex
    std::size_t ncons;
    PivotOrder order;
    std::vector<std::vector<int>> simplices;

    void pull(const std::vector<int>& face, int dim, std::uint32_t mask, std::vector<int> prefix) {
        if (dim == 0) {
            prefix.push_back(face[0]);
            simplices.push_back(std::move(prefix));
            return;
        }
        int pivot = order == PivotOrder::first ? face.front() : face.back();
        std::vector<std::vector<int>> seen;
        for (std::size_t j = 0; j < ncons; ++j) {
            if (mask & (1u << j)) continue;
            std::vector<int> sub;
            for (int v : face)
                if (tight[v] & (1u << j)) sub.push_back(v);
            if (sub.empty() || std::find(sub.begin(), sub.end(), pivot) != sub.end()) continue;
            if (affine_rank(verts, sub) != dim - 1) continue;
            if (std::find(seen.begin(), seen.end(), sub) != seen.end()) continue;
            seen.push_back(sub);
            auto next = prefix;
            next.push_back(pivot);
            pull(sub, dim - 1, mask | (1u << j), std::move(next));
        }
    }
};

}  // namespace

std::vector<Halfspace> HPolytope::all_constraints() const {
    std::vector<Halfspace> c;
    for (int i = 0; i < 4; ++i) {
        std::array<i64, 4> e{0, 0, 0, 0};
        e[i] = -1;
        c.push_back(hs(e, 0));
    }
    c.insert(c.end(), inequalities.begin(), inequalities.end());
    return c;
}

bool HPolytope::contains(const Vec4& u) const {
    for (const auto& h : all_constraints())
        if (dot(h.coeffs, u) > h.rhs) return false;
    return true;
}

HPolytope v0_polytope() { return {{hs({2, 1, 2, 0}, 1), hs({-1, 4, 2, 6}, 1)}}; }

HPolytope unit_cube() {
    return {{hs({1, 0, 0, 0}, 1), hs({0, 1, 0, 0}, 1), hs({0, 0, 1, 0}, 1), hs({0, 0, 0, 1}, 1)}};
}

HPolytope standard_simplex() { return {{hs({1, 1, 1, 1}, 1)}}; }

bool is_bounded(const HPolytope& P) {
    // The recession cone {d >= 0, A d <= 0} is pointed; it is nonzero iff one of its
    // candidate extreme rays (three independent tight rows) is feasible.
    auto cons = P.all_constraints();
    std::size_t m = cons.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                const Vec4* rows[3] = {&cons[i].coeffs, &cons[j].coeffs, &cons[k].coeffs};
                Vec4 d;
                for (int c = 0; c < 4; ++c) {
                    std::vector<std::vector<Rational>> minor(3, std::vector<Rational>(3));
                    for (int r = 0; r < 3; ++r) {
                        int cc = 0;
                        for (int s = 0; s < 4; ++s)
                            if (s != c) minor[r][cc++] = (*rows[r])[s];
                    }
                    d[c] = (c % 2 == 0 ? 1 : -1) * det(minor);
                }
                if (std::all_of(d.begin(), d.end(), [](const Rational& x) { return x == 0; })) continue;
                for (int sgn : {1, -1}) {
                    bool ok = true;
                    for (const auto& h : cons) {
                        if (sgn * dot(h.coeffs, d) > 0) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) return false;
                }
            }
    return true;
}

std::vector<Vec4> vertices(const HPolytope& P) {
    if (!is_bounded(P)) throw std::domain_error("polytope is unbounded");
    auto cons = P.all_constraints();
    std::size_t m = cons.size();
    std::vector<Vec4> out;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c)
                for (std::size_t d = c + 1; d < m; ++d) {
                    auto u = solve4({&cons[a], &cons[b], &cons[c], &cons[d]});
                    if (!u || !P.contains(*u)) continue;
                    if (std::find(out.begin(), out.end(), *u) == out.end()) out.push_back(*u);
                }
    std::sort(out.begin(), out.end());
    return out;
}

Rational exact_volume(const HPolytope& P, PivotOrder order) {
    auto verts = vertices(P);
    auto cons = P.all_constraints();
    if (cons.size() > 32) throw std::domain_error("exact_volume: too many constraints");
    std::vector<int> all(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) all[i] = static_cast<int>(i);
    if (affine_rank(verts, all) < 4) return 0;
    std::vector<std::uint32_t> tight(verts.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < cons.size(); ++j)
            if (dot(cons[j].coeffs, verts[i]) == cons[j].rhs) tight[i] |= 1u << j;
    Triangulator t{verts, tight, cons.size(), order, {}};
    t.pull(all, 4, 0, {});
    Rational vol = 0;
    for (const auto& s : t.simplices) {
        std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m[r][c] = verts[s[r + 1]][c] - verts[s[0]][c];
        Rational d = det(std::move(m));
        vol += d < 0 ? Rational(-d) : d;
    }
    return vol / 24;
}

MonteCarloEstimate v0_montecarlo(double B, std::uint64_t samples, std::uint64_t seed) {
    if (B <= 1) return {0, 0, samples};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double L = std::log(B);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double t[4];
        for (double& x : t) x = std::exp(L * unif(rng));
        if (t[0] * t[0] * t[1] * t[2] * t[2] <= B &&
            std::pow(t[1], 4) * t[2] * t[2] * std::pow(t[3], 6) <= B * t[0])
            ++hits;
    }
    // weight of each hit: (B/(3 prod t)) / prod (1/(t L)) = B L^4 / 3
    double w = B * std::pow(L, 4) / 3.0;
    double ph = static_cast<double>(hits) / static_cast<double>(samples);
    return {w * ph, w * std::sqrt(ph * (1 - ph) / static_cast<double>(samples)), samples};
}

MonteCarloEstimate volume_montecarlo(const HPolytope& P, std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto cons = P.all_constraints();
    std::vector<std::array<double, 5>> rows;
    for (const auto& h : cons)
        rows.push_back({h.coeffs[0].get_d(), h.coeffs[1].get_d(), h.coeffs[2].get_d(), h.coeffs[3].get_d(),
                        h.rhs.get_d()});
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double u[4] = {unif(rng), unif(rng), unif(rng), unif(rng)};
        bool in = true;
        for (const auto& r : rows)
            if (r[0] * u[0] + r[1] * u[1] + r[2] * u[2] + r[3] * u[3] > r[4]) {
                in = false;
                break;
            }
        hits += in;
    }
    double ph = static_cast<double>(hits) / static_cast<double>(samples);
    return {ph, std::sqrt(ph * (1 - ph) / static_cast<double>(samples)), samples};
}

}  // namespace manin
